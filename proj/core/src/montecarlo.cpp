#include "lpvident/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "lpvident/detail/rng.hpp"
#include "lpvident/errors.hpp"
#include "lpvident/estimator.hpp"
#include "lpvident/filter2d.hpp"
#include "lpvident/io.hpp"

namespace lpvident {

namespace {

constexpr std::uint64_t kStreamInput = 1;
constexpr std::uint64_t kStreamScheduling = 2;
constexpr std::uint64_t kStreamNoise = 3;
constexpr std::uint64_t kPurposeEstimation = 10;
constexpr std::uint64_t kPurposeValidation = 11;

constexpr int kHistogramBins = 40;
constexpr double kHistogramWidth = 2.5;

double sinc_normalized_at(double x) {
  if (x == 0.0) return 1.0;
  const double t = std::numbers::pi * x;
  return std::sin(t) / t;
}

double sinc_unnormalized_at(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

struct RunOutcome {
  RunRecord base;
  RunRecord filt;
  bool has_coeffs = false;
  Eigen::MatrixXd coeff_filtered;
  Eigen::MatrixXd coeff_baseline;
};

Eigen::MatrixXd coefficient_grid_values(const TrainedModel& model,
                                        const Eigen::VectorXd& grid) {
  Eigen::MatrixXd values(grid.size(), 4);
  Eigen::RowVectorXd pbar(1);
  for (Eigen::Index g = 0; g < grid.size(); ++g) {
    pbar(0) = grid(g);
    const IoCoefficients io = io_coefficients(model, pbar);
    values(g, 0) = io.a(0);
    values(g, 1) = io.a(1);
    values(g, 2) = io.b(0);
    values(g, 3) = io.b(1);
  }
  return values;
}

MethodSummary summarize(const std::vector<double>& values) {
  MethodSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot open " + p.string() + " for writing");
  return f;
}

void finish(std::ofstream& f, const std::filesystem::path& p) {
  f.flush();
  if (!f) throw IoError("write failed for " + p.string());
}

}  // namespace

double AstromLpvSystem::a11(double p) const {
  const double arg = std::numbers::pi * std::numbers::pi * p;
  const double s =
      sinc_normalized ? sinc_normalized_at(arg) : sinc_unnormalized_at(arg);
  return 0.35 * s + 1.4;
}

double AstromLpvSystem::a21(double p) const { return 5.0 * p * p - 0.8; }

double AstromLpvSystem::b1(double p) const {
  if (p > 0.125) return 1.5;
  if (p < -0.125) return 0.5;
  return 1.0 + 4.0 * p;
}

double AstromLpvSystem::b2(double p) const {
  if (p > 0.125) return 0.0;
  if (p < -0.125) return 1.0;
  return 0.5 - 4.0 * p;
}

GeneratedData generate(const AstromLpvSystem& sys, Eigen::Index n,
                       double snr_db, std::uint64_t seed) {
  if (n < 1) throw TooShort("need at least 1 sample, got " + std::to_string(n));
  if (std::isnan(snr_db) || snr_db == -std::numeric_limits<double>::infinity()) {
    throw NonFinite("snr_db must be a real number or +infinity");
  }

  detail::Rng input_rng(detail::derive_seed(seed, 0, kStreamInput));
  detail::Rng sched_rng(detail::derive_seed(seed, 0, kStreamScheduling));
  detail::Rng noise_rng(detail::derive_seed(seed, 0, kStreamNoise));

  Eigen::VectorXd u(n);
  Eigen::MatrixXd p(n, 1);
  for (Eigen::Index k = 0; k < n; ++k) u(k) = input_rng.binary_sign();
  for (Eigen::Index k = 0; k < n; ++k) {
    p(k, 0) = sched_rng.uniform(AstromLpvSystem::p_min, AstromLpvSystem::p_max);
  }

  Eigen::VectorXd y_clean(n);
  double x1 = 0.0;
  double x2 = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    y_clean(k) = x1;
    const double pk = p(k, 0);
    const double next1 = sys.a11(pk) * x1 + x2 + sys.b1(pk) * u(k);
    const double next2 = sys.a21(pk) * x1 + sys.b2(pk) * u(k);
    x1 = next1;
    x2 = next2;
  }

  GeneratedData out;
  out.y_clean = y_clean;
  out.data.u = std::move(u);
  out.data.p = std::move(p);
  out.data.ts = 1.0;

  if (std::isinf(snr_db)) {
    out.noise_variance = 0.0;
    out.data.y = y_clean;
    return out;
  }

  const double var_clean =
      (y_clean.array() - y_clean.mean()).square().sum() /
      static_cast<double>(n);
  if (var_clean == 0.0) {
    throw ZeroVariance("clean output is constant, cannot calibrate noise");
  }
  out.noise_variance = var_clean / std::pow(10.0, snr_db / 10.0);
  const double scale = std::sqrt(out.noise_variance);
  Eigen::VectorXd y = y_clean;
  for (Eigen::Index k = 0; k < n; ++k) y(k) += scale * noise_rng.normal();
  out.data.y = std::move(y);
  return out;
}

std::string method_name(Method m) {
  return m == Method::baseline ? "baseline" : "filtered";
}

BenchmarkReport run_monte_carlo(const MonteCarloConfig& cfg) {
  if (cfg.runs < 1) {
    throw TooShort("runs must be >= 1, got " + std::to_string(cfg.runs));
  }
  if (cfg.n_samples < 10) {
    throw TooShort("N must be >= 10, got " + std::to_string(cfg.n_samples));
  }
  validate_hyper(cfg.hyper);
  if (std::isnan(cfg.snr_db) ||
      cfg.snr_db == -std::numeric_limits<double>::infinity()) {
    throw NonFinite("snr_db must be a real number or +infinity");
  }
  if (cfg.validation_samples < 0) {
    throw TooShort("validation_N must be >= 0");
  }
  const Eigen::Index val_n =
      cfg.validation_samples == 0 ? cfg.n_samples : cfg.validation_samples;
  if (val_n < 2) throw TooShort("validation_N must be >= 2");

  MonteCarloConfig resolved = cfg;
  resolved.validation_samples = val_n;
  if (resolved.omegas.empty()) {
    resolved.omegas = CuriositySet::defaults(1.0).omegas();
  }
  const CuriositySet curiosities(resolved.omegas, resolved.mu);
  const AstromLpvSystem sys{resolved.sinc_normalized};
  const int n_x = resolved.hyper.n_x;

  auto do_run = [&](int r) {
    RunOutcome out;
    out.base.run = r;
    out.base.method = Method::baseline;
    out.filt.run = r;
    out.filt.method = Method::filtered;

    const GeneratedData est = generate(
        sys, resolved.n_samples, resolved.snr_db,
        detail::derive_seed(resolved.seed, static_cast<std::uint64_t>(r),
                            kPurposeEstimation));
    const GeneratedData val = generate(
        sys, val_n, std::numeric_limits<double>::infinity(),
        detail::derive_seed(resolved.seed, static_cast<std::uint64_t>(r),
                            kPurposeValidation));

    bool base_ok = false;
    bool filt_ok = false;
    TrainedModel* base_model = nullptr;
    TrainedModel* filt_model = nullptr;
    std::optional<TrainedModel> base_store;
    std::optional<TrainedModel> filt_store;

    try {
      base_store = fit(est.data, resolved.hyper, AlphaPolynomial::origin(n_x));
      const Eigen::VectorXd y_sim =
          simulate(*base_store, val.data.u, val.data.p);
      out.base.bfr = bfr(val.y_clean, y_sim);
      base_ok = true;
      base_model = &*base_store;
    } catch (const Error&) {
      out.base.bfr = 0.0;
      out.base.failed = true;
    }

    try {
      const TuningResult tuned = tune(est.data, resolved.hyper, curiosities);
      out.filt.omega_star = tuned.omega_star;
      const AlphaPolynomial alpha =
          butterworth_alpha(tuned.omega_star, est.data.ts, n_x);
      filt_store = fit(est.data, resolved.hyper, alpha);
      const Eigen::VectorXd y_sim =
          simulate(*filt_store, val.data.u, val.data.p);
      out.filt.bfr = bfr(val.y_clean, y_sim);
      filt_ok = true;
      filt_model = &*filt_store;
    } catch (const Error&) {
      out.filt.bfr = 0.0;
      out.filt.failed = true;
    }

    if (r == 0 && n_x == 2 && base_ok && filt_ok) {
      Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(
          kCoefficientGridSize, AstromLpvSystem::p_min, AstromLpvSystem::p_max);
      out.coeff_baseline = coefficient_grid_values(*base_model, grid);
      out.coeff_filtered = coefficient_grid_values(*filt_model, grid);
      out.has_coeffs = true;
    }
    return out;
  };

  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(cfg.runs));
  {
    unsigned workers = std::thread::hardware_concurrency();
    workers = std::clamp(workers, 1u, 4u);
    workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.runs));

    std::mutex next_mutex;
    int next = 0;
    std::exception_ptr failure;
    auto drain = [&] {
      for (;;) {
        int r;
        {
          std::lock_guard<std::mutex> lock(next_mutex);
          if (failure || next >= cfg.runs) return;
          r = next++;
        }
        try {
          outcomes[static_cast<std::size_t>(r)] = do_run(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(next_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  BenchmarkReport report;
  report.config = resolved;
  report.records.reserve(static_cast<std::size_t>(cfg.runs) * 2);
  std::vector<double> base_bfrs;
  std::vector<double> filt_bfrs;
  for (const RunOutcome& out : outcomes) {
    report.records.push_back(out.base);
    report.records.push_back(out.filt);
    base_bfrs.push_back(out.base.bfr);
    filt_bfrs.push_back(out.filt.bfr);
  }
  report.baseline = summarize(base_bfrs);
  report.filtered = summarize(filt_bfrs);

  report.histogram.resize(kHistogramBins);
  for (int b = 0; b < kHistogramBins; ++b) {
    report.histogram[static_cast<std::size_t>(b)].lo = b * kHistogramWidth;
    report.histogram[static_cast<std::size_t>(b)].hi = (b + 1) * kHistogramWidth;
  }
  auto bin_of = [](double v) {
    const int b = static_cast<int>(v / kHistogramWidth);
    return std::clamp(b, 0, kHistogramBins - 1);
  };
  for (const RunRecord& rec : report.records) {
    HistogramBin& bin = report.histogram[static_cast<std::size_t>(bin_of(rec.bfr))];
    if (rec.method == Method::baseline) {
      ++bin.count_baseline;
    } else {
      ++bin.count_filtered;
    }
  }

  CoefficientTable& table = report.coefficients;
  table.grid = Eigen::VectorXd::LinSpaced(
      kCoefficientGridSize, AstromLpvSystem::p_min, AstromLpvSystem::p_max);
  table.truth.resize(table.grid.size(), 4);
  for (Eigen::Index g = 0; g < table.grid.size(); ++g) {
    const double pg = table.grid(g);
    table.truth(g, 0) = sys.a11(pg);
    table.truth(g, 1) = sys.a21(pg);
    table.truth(g, 2) = sys.b1(pg);
    table.truth(g, 3) = sys.b2(pg);
  }
  table.source_run = 0;
  if (outcomes[0].has_coeffs) {
    table.filtered = outcomes[0].coeff_filtered;
    table.baseline = outcomes[0].coeff_baseline;
  } else {
    table.filtered = Eigen::MatrixXd::Zero(table.grid.size(), 4);
    table.baseline = Eigen::MatrixXd::Zero(table.grid.size(), 4);
  }
  return report;
}

void emit_report(const BenchmarkReport& report,
                 const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create " + dir.string() + ": " + ec.message());
  }

  {
    const auto path = dir / "summary.csv";
    std::ofstream f = open_out(path);
    f << "method,mean_bfr,stddev_bfr\n";
    if (!report.records.empty()) {
      f << "baseline," << format_double(report.baseline.mean) << ','
        << format_double(report.baseline.stddev) << '\n';
      f << "filtered," << format_double(report.filtered.mean) << ','
        << format_double(report.filtered.stddev) << '\n';
    }
    finish(f, path);
  }

  {
    const auto path = dir / "runs.csv";
    std::ofstream f = open_out(path);
    f << "run,method,bfr,omega_star,failed\n";
    for (const RunRecord& rec : report.records) {
      f << rec.run << ',' << method_name(rec.method) << ','
        << format_double(rec.bfr) << ',';
      if (rec.omega_star) f << format_double(*rec.omega_star);
      f << ',' << (rec.failed ? 1 : 0) << '\n';
    }
    finish(f, path);
  }

  {
    const auto path = dir / "hist.csv";
    std::ofstream f = open_out(path);
    f << "lo,hi,baseline,filtered\n";
    for (const HistogramBin& bin : report.histogram) {
      f << format_double(bin.lo) << ',' << format_double(bin.hi) << ','
        << bin.count_baseline << ',' << bin.count_filtered << '\n';
    }
    finish(f, path);
  }

  {
    const auto path = dir / "coeffs.csv";
    std::ofstream f = open_out(path);
    f << "p";
    for (const char* name : kCoefficientNames) {
      f << ',' << name << "_true," << name << "_filtered," << name
        << "_baseline";
    }
    f << '\n';
    const CoefficientTable& t = report.coefficients;
    for (Eigen::Index g = 0; g < t.grid.size(); ++g) {
      f << format_double(t.grid(g));
      for (int c = 0; c < 4; ++c) {
        f << ',' << format_double(t.truth(g, c)) << ','
          << format_double(t.filtered(g, c)) << ','
          << format_double(t.baseline(g, c));
      }
      f << '\n';
    }
    finish(f, path);
  }

  {
    const auto path = dir / "meta.json";
    std::ofstream f = open_out(path);
    nlohmann::ordered_json j;
    nlohmann::ordered_json config;
    config["runs"] = report.config.runs;
    config["N"] = report.config.n_samples;
    if (std::isinf(report.config.snr_db)) {
      config["snr_db"] = "inf";
    } else {
      config["snr_db"] = report.config.snr_db;
    }
    config["seed"] = report.config.seed;
    config["validation_N"] = report.config.validation_samples;
    config["hyper"] = {{"gamma", report.config.hyper.gamma},
                       {"sigma", report.config.hyper.sigma},
                       {"n_x", report.config.hyper.n_x}};
    config["curiosities"] = {{"omegas", report.config.omegas},
                             {"mu", report.config.mu}};
    config["sinc_normalized"] = report.config.sinc_normalized;
    j["config"] = std::move(config);
    j["summary"] = {
        {"baseline",
         {{"mean_bfr", report.baseline.mean},
          {"stddev_bfr", report.baseline.stddev}}},
        {"filtered",
         {{"mean_bfr", report.filtered.mean},
          {"stddev_bfr", report.filtered.stddev}}}};
    j["coefficients_source_run"] = report.coefficients.source_run;
    f << j.dump(2) << '\n';
    finish(f, path);
  }
}

}  // namespace lpvident
