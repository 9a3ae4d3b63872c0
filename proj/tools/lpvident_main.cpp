#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lpvident/errors.hpp"
#include "lpvident/estimator.hpp"
#include "lpvident/filter2d.hpp"
#include "lpvident/io.hpp"
#include "lpvident/montecarlo.hpp"
#include "lpvident/tuner.hpp"

namespace {

using namespace lpvident;

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream f(path);
  if (!f) throw IoError("cannot open " + path);
  try {
    nlohmann::json j;
    f >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + std::string(e.what()));
  }
}

double parse_snr(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw NonFinite("snr must be a number in dB or 'inf', got '" + text + "'");
}

double json_snr(const nlohmann::json& j) {
  if (j.is_string()) return parse_snr(j.get<std::string>());
  return j.get<double>();
}

// Flags that were given override config values, which override defaults.
struct HyperFlags {
  CLI::Option* nx = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* sigma = nullptr;
  int nx_value = 2;
  double gamma_value = 100.0;
  double sigma_value = 0.2;

  void add_to(CLI::App* cmd) {
    nx = cmd->add_option("--nx", nx_value, "Model order n_x");
    gamma = cmd->add_option("--gamma", gamma_value, "Regularization weight");
    sigma = cmd->add_option("--sigma", sigma_value, "RBF kernel width");
  }

  HyperParams resolve(const nlohmann::json& cfg) const {
    HyperParams h;
    if (cfg.contains("hyper")) {
      const auto& j = cfg.at("hyper");
      if (j.contains("gamma")) h.gamma = j.at("gamma").get<double>();
      if (j.contains("sigma")) h.sigma = j.at("sigma").get<double>();
      if (j.contains("n_x")) h.n_x = j.at("n_x").get<int>();
    }
    if (*nx) h.n_x = nx_value;
    if (*gamma) h.gamma = gamma_value;
    if (*sigma) h.sigma = sigma_value;
    return h;
  }
};

struct CuriosityFlags {
  CLI::Option* omegas = nullptr;
  CLI::Option* mu = nullptr;
  std::vector<double> omegas_value;
  double mu_value = 130.0;

  void add_to(CLI::App* cmd) {
    omegas = cmd->add_option("--omega-set", omegas_value,
                             "Candidate cutoff frequencies [rad/s]")
                 ->delimiter(',');
    mu = cmd->add_option("--mu", mu_value, "Barycenter weighting constant");
  }

  CuriositySet resolve(const nlohmann::json& cfg, double ts) const {
    std::vector<double> o = CuriositySet::defaults(ts).omegas();
    double m = 130.0;
    if (cfg.contains("curiosities")) {
      const auto& j = cfg.at("curiosities");
      if (j.contains("omegas")) o = j.at("omegas").get<std::vector<double>>();
      if (j.contains("mu")) m = j.at("mu").get<double>();
    }
    if (*omegas) o = omegas_value;
    if (*mu) m = mu_value;
    return CuriositySet(std::move(o), m);
  }
};

void write_simulation_csv(const std::string& path, const Eigen::VectorXd& y) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << "k,y_sim\n";
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    f << (k + 1) << ',' << format_double(y(k)) << '\n';
  }
  f.flush();
  if (!f) throw IoError("write failed for " + path);
}

void setup_estimate(CLI::App& app) {
  auto* cmd = app.add_subcommand("estimate", "Fit a model from a dataset");
  auto data = std::make_shared<std::string>();
  auto ts = std::make_shared<double>(1.0);
  auto config = std::make_shared<std::string>();
  auto hyper = std::make_shared<HyperFlags>();
  auto curiosities = std::make_shared<CuriosityFlags>();
  auto mode = std::make_shared<std::string>("tuned");
  auto omega_c = std::make_shared<double>(0.0);
  auto out = std::make_shared<std::string>("model.json");

  cmd->add_option("--data", *data, "Dataset CSV")->required();
  cmd->add_option("--ts", *ts, "Sampling period [s]");
  cmd->add_option("--config", *config, "JSON config file");
  hyper->add_to(cmd);
  curiosities->add_to(cmd);
  cmd->add_option("--alpha-mode", *mode, "Predictor pole placement")
      ->check(CLI::IsMember({"origin", "butterworth", "tuned"}));
  auto* omega_opt =
      cmd->add_option("--omega-c", *omega_c, "Butterworth cutoff [rad/s]");
  cmd->add_option("--out", *out, "Model output path");

  cmd->callback([=] {
    const nlohmann::json cfg = load_config(*config);
    const HyperParams h = hyper->resolve(cfg);
    const Dataset d = read_dataset_csv(*data, *ts);

    std::optional<double> omega_used;
    AlphaPolynomial alpha = AlphaPolynomial::origin(h.n_x);
    if (*mode == "butterworth") {
      if (!*omega_opt) {
        throw CutoffOutOfRange("--alpha-mode butterworth requires --omega-c");
      }
      omega_used = *omega_c;
      alpha = butterworth_alpha(*omega_c, d.ts, h.n_x);
    } else if (*mode == "tuned") {
      const CuriositySet cs = curiosities->resolve(cfg, d.ts);
      const TuningResult tuned = tune(d, h, cs);
      omega_used = tuned.omega_star;
      alpha = butterworth_alpha(tuned.omega_star, d.ts, h.n_x);
    }

    const TrainedModel m = fit(d, h, alpha);
    save_model(*out, m);

    std::cout << "alpha_mode: " << *mode << '\n';
    if (omega_used) {
      std::cout << "omega_c: " << format_double(*omega_used) << '\n';
    } else {
      std::cout << "omega_c: baseline\n";
    }
    try {
      const double training_bfr = bfr(d.y, simulate(m, d.u, d.p));
      std::cout << "bfr: " << format_double(training_bfr) << '\n';
    } catch (const ZeroVariance&) {
      std::cout << "bfr: undefined (constant reference output)\n";
    }
    std::cout << "model: " << *out << '\n';
  });
}

void setup_tune(CLI::App& app) {
  auto* cmd = app.add_subcommand("tune", "Sweep filter cutoffs and pick one");
  auto data = std::make_shared<std::string>();
  auto ts = std::make_shared<double>(1.0);
  auto config = std::make_shared<std::string>();
  auto hyper = std::make_shared<HyperFlags>();
  auto curiosities = std::make_shared<CuriosityFlags>();
  auto holdout = std::make_shared<double>(0.0);
  auto holdout_opt = std::make_shared<CLI::Option*>(nullptr);
  auto out = std::make_shared<std::string>("tuning.csv");

  cmd->add_option("--data", *data, "Dataset CSV")->required();
  cmd->add_option("--ts", *ts, "Sampling period [s]");
  cmd->add_option("--config", *config, "JSON config file");
  hyper->add_to(cmd);
  curiosities->add_to(cmd);
  *holdout_opt = cmd->add_option(
      "--holdout", *holdout, "Trailing fraction scored instead of the fit span");
  cmd->add_option("--out", *out, "Tuning report CSV path");

  cmd->callback([=] {
    const nlohmann::json cfg = load_config(*config);
    const HyperParams h = hyper->resolve(cfg);
    const Dataset d = read_dataset_csv(*data, *ts);
    const CuriositySet cs = curiosities->resolve(cfg, d.ts);
    double f = 0.0;
    if (cfg.contains("holdout_fraction")) {
      f = cfg.at("holdout_fraction").get<double>();
    }
    if (**holdout_opt) f = *holdout;

    const TuningResult result = tune(d, h, cs, f);
    write_tuning_report(*out, result);
    std::cout << "omega_star: " << format_double(result.omega_star) << '\n';
    std::cout << "report: " << *out << '\n';
  });
}

void setup_simulate(CLI::App& app) {
  auto* cmd = app.add_subcommand("simulate", "Free-run a saved model");
  auto model = std::make_shared<std::string>();
  auto data = std::make_shared<std::string>();
  auto ts = std::make_shared<double>(1.0);
  auto out = std::make_shared<std::string>("y_sim.csv");

  cmd->add_option("--model", *model, "Model JSON")->required();
  cmd->add_option("--data", *data, "Dataset CSV with the u and p to replay")
      ->required();
  cmd->add_option("--ts", *ts, "Sampling period [s]");
  cmd->add_option("--out", *out, "Simulated output CSV path");

  cmd->callback([=] {
    const TrainedModel m = load_model(*model);
    const Dataset d = read_dataset_csv(*data, *ts);
    const Eigen::VectorXd y_sim = simulate(m, d.u, d.p);
    write_simulation_csv(*out, y_sim);
    try {
      const double fit_bfr = bfr(d.y, y_sim);
      std::cout << "bfr: " << format_double(fit_bfr) << '\n';
    } catch (const ZeroVariance&) {
      std::cout << "bfr: undefined (constant reference output)\n";
    }
    std::cout << "output: " << *out << '\n';
  });
}

void setup_benchmark(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("benchmark", "Monte Carlo comparison on the LPV plant");
  auto config = std::make_shared<std::string>();
  auto hyper = std::make_shared<HyperFlags>();
  auto curiosities = std::make_shared<CuriosityFlags>();
  auto runs = std::make_shared<int>(20);
  auto runs_opt = std::make_shared<CLI::Option*>(nullptr);
  auto snr = std::make_shared<std::string>();
  auto seed = std::make_shared<std::uint64_t>(1);
  auto seed_opt = std::make_shared<CLI::Option*>(nullptr);
  auto out = std::make_shared<std::string>("report");

  cmd->add_option("--config", *config, "JSON config file");
  hyper->add_to(cmd);
  curiosities->add_to(cmd);
  *runs_opt = cmd->add_option("--runs", *runs, "Monte Carlo run count");
  cmd->add_option("--snr", *snr, "Estimation SNR in dB, or 'inf'");
  *seed_opt = cmd->add_option("--seed", *seed, "Master RNG seed");
  cmd->add_option("--out", *out, "Report directory");

  cmd->callback([=] {
    const nlohmann::json cfg = load_config(*config);
    MonteCarloConfig mc;
    try {
      if (cfg.contains("runs")) mc.runs = cfg.at("runs").get<int>();
      if (cfg.contains("N")) mc.n_samples = cfg.at("N").get<Eigen::Index>();
      if (cfg.contains("snr_db")) mc.snr_db = json_snr(cfg.at("snr_db"));
      if (cfg.contains("seed")) mc.seed = cfg.at("seed").get<std::uint64_t>();
      if (cfg.contains("validation_N")) {
        mc.validation_samples = cfg.at("validation_N").get<Eigen::Index>();
      }
      if (cfg.contains("sinc_normalized")) {
        mc.sinc_normalized = cfg.at("sinc_normalized").get<bool>();
      }
      mc.hyper = hyper->resolve(cfg);
      if (cfg.contains("curiosities")) {
        const auto& j = cfg.at("curiosities");
        if (j.contains("omegas")) {
          mc.omegas = j.at("omegas").get<std::vector<double>>();
        }
        if (j.contains("mu")) mc.mu = j.at("mu").get<double>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw IoError(*config + ": " + std::string(e.what()));
    }
    if (**runs_opt) mc.runs = *runs;
    if (!snr->empty()) mc.snr_db = parse_snr(*snr);
    if (**seed_opt) mc.seed = *seed;
    if (*curiosities->omegas) mc.omegas = curiosities->omegas_value;
    if (*curiosities->mu) mc.mu = curiosities->mu_value;

    const BenchmarkReport report = run_monte_carlo(mc);
    emit_report(report, *out);
    std::cout << "baseline: mean " << format_double(report.baseline.mean)
              << " stddev " << format_double(report.baseline.stddev) << '\n';
    std::cout << "filtered: mean " << format_double(report.filtered.mean)
              << " stddev " << format_double(report.filtered.stddev) << '\n';
    std::cout << "report: " << *out << '\n';
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonparametric LPV state-space identification"};
  app.require_subcommand(1);
  setup_estimate(app);
  setup_tune(app);
  setup_simulate(app);
  setup_benchmark(app);

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const AllDiverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const SingularSystem& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const DivergedSimulation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ZeroVariance& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
