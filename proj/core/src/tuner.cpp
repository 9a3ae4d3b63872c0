#include "lpvident/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <string>
#include <utility>

#include "lpvident/errors.hpp"
#include "lpvident/filter2d.hpp"

namespace lpvident {

namespace {

Dataset head(const Dataset& d, Eigen::Index n) {
  return Dataset{d.u.head(n), d.y.head(n), d.p.topRows(n), d.ts};
}

struct CuriosityEval {
  double j = 1.0;
  bool diverged = false;
};

// Fits on the first fit_len samples, free-runs over the full record and
// scores the merit from score_start on. score_start = 0 scores everything.
CuriosityEval eval_curiosity(const Dataset& d, const HyperParams& hyper,
                             double omega, Eigen::Index fit_len,
                             Eigen::Index score_start) {
  const AlphaPolynomial alpha = butterworth_alpha(omega, d.ts, hyper.n_x);
  const TrainedModel model =
      fit_len == d.size() ? fit(d, hyper, alpha) : fit(head(d, fit_len), hyper, alpha);
  const Eigen::Index tail = d.size() - score_start;
  try {
    const Eigen::VectorXd y_sim = simulate(model, d.u, d.p);
    return {merit_index(d.y.tail(tail), y_sim.tail(tail)), false};
  } catch (const DivergedSimulation&) {
    return {1.0, true};
  }
}

void check_nyquist(const CuriositySet& curiosities, double ts) {
  const double nyquist = std::numbers::pi / ts;
  for (double omega : curiosities.omegas()) {
    if (omega >= nyquist) {
      throw CutoffOutOfRange("curiosity " + std::to_string(omega) +
                             " rad/s is not below the Nyquist frequency " +
                             std::to_string(nyquist));
    }
  }
}

}  // namespace

CuriositySet::CuriositySet(std::vector<double> omegas, double mu)
    : omegas_(std::move(omegas)), mu_(mu) {
  if (omegas_.empty()) throw TooShort("curiosity set is empty");
  double prev = 0.0;
  for (double omega : omegas_) {
    if (!std::isfinite(omega)) {
      throw NonFinite("curiosity frequencies contain a non-finite entry");
    }
    if (omega <= prev) {
      throw CutoffOutOfRange(
          "curiosity frequencies must be positive and strictly increasing");
    }
    prev = omega;
  }
  if (!std::isfinite(mu_) || mu_ <= 0.0) {
    throw NonFinite("mu must be finite and > 0, got " + std::to_string(mu_));
  }
}

CuriositySet CuriositySet::defaults(double ts) {
  if (!std::isfinite(ts) || ts <= 0.0) {
    throw NonFinite("ts must be finite and > 0, got " + std::to_string(ts));
  }
  std::vector<double> omegas{0.05, 0.08, 0.13, 0.2, 0.32, 0.5};
  for (double& omega : omegas) omega /= ts;
  return CuriositySet(std::move(omegas), 130.0);
}

double merit_index(const Eigen::VectorXd& y, const Eigen::VectorXd& y_sim) {
  if (y.size() != y_sim.size()) {
    throw LengthMismatch("y has length " + std::to_string(y.size()) +
                         " but y_sim has length " + std::to_string(y_sim.size()));
  }
  if (y.size() < 2) {
    throw TooShort("merit index needs at least 2 samples, got " +
                   std::to_string(y.size()));
  }
  if (!y.allFinite()) throw NonFinite("y contains a non-finite entry");
  if (!y_sim.allFinite()) throw NonFinite("y_sim contains a non-finite entry");

  const double denom = (y.array() - y.mean()).matrix().norm();
  if (denom == 0.0) {
    throw ZeroVariance("y is constant, merit index undefined");
  }
  return std::min((y - y_sim).norm() / denom, 1.0);
}

double j_index(const Dataset& d, const HyperParams& hyper, double omega,
               bool* diverged) {
  validate_hyper(hyper);
  validate_dataset(d, hyper.n_x);
  const CuriosityEval eval = eval_curiosity(d, hyper, omega, d.size(), 0);
  if (diverged != nullptr) *diverged = eval.diverged;
  return eval.j;
}

double barycenter(std::span<const double> omegas,
                  std::span<const double> j_values, double mu) {
  if (omegas.size() != j_values.size()) {
    throw LengthMismatch("got " + std::to_string(omegas.size()) +
                         " curiosities but " + std::to_string(j_values.size()) +
                         " merit values");
  }
  if (omegas.empty()) throw TooShort("barycenter of an empty set");
  if (!std::isfinite(mu) || mu < 0.0) {
    throw NonFinite("mu must be finite and >= 0, got " + std::to_string(mu));
  }
  double j_min = j_values[0];
  for (double j : j_values) {
    if (!std::isfinite(j)) throw NonFinite("merit values contain a non-finite entry");
    j_min = std::min(j_min, j);
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t v = 0; v < omegas.size(); ++v) {
    if (!std::isfinite(omegas[v])) {
      throw NonFinite("curiosity frequencies contain a non-finite entry");
    }
    const double w = std::exp(-mu * (j_values[v] - j_min));
    num += omegas[v] * w;
    den += w;
  }
  return num / den;
}

double barycenter(const CuriositySet& curiosities,
                  const std::vector<double>& j_values) {
  return barycenter(std::span<const double>(curiosities.omegas()),
                    std::span<const double>(j_values), curiosities.mu());
}

TuningResult tune(const Dataset& d, const HyperParams& hyper,
                  const CuriositySet& curiosities, double holdout_fraction) {
  validate_hyper(hyper);
  validate_dataset(d, hyper.n_x);
  check_nyquist(curiosities, d.ts);
  if (!std::isfinite(holdout_fraction) || holdout_fraction < 0.0 ||
      holdout_fraction >= 1.0) {
    throw NonFinite("holdout_fraction must lie in [0, 1), got " +
                    std::to_string(holdout_fraction));
  }
  const Eigen::Index holdout =
      static_cast<Eigen::Index>(holdout_fraction * static_cast<double>(d.size()));
  const Eigen::Index fit_len = d.size() - holdout;
  const Eigen::Index score_start = holdout > 0 ? fit_len : 0;

  const std::vector<double>& omegas = curiosities.omegas();
  std::vector<std::future<CuriosityEval>> futures;
  futures.reserve(omegas.size());
  for (double omega : omegas) {
    futures.push_back(std::async(std::launch::async, [&, omega] {
      return eval_curiosity(d, hyper, omega, fit_len, score_start);
    }));
  }

  TuningResult result;
  result.entries.resize(omegas.size());
  std::vector<double> j_values(omegas.size());
  bool any_converged = false;
  for (std::size_t v = 0; v < omegas.size(); ++v) {
    const CuriosityEval eval = futures[v].get();
    result.entries[v].omega = omegas[v];
    result.entries[v].j = eval.j;
    result.entries[v].diverged = eval.diverged;
    j_values[v] = eval.j;
    any_converged = any_converged || !eval.diverged;
  }
  if (!any_converged) {
    throw AllDiverged("every curiosity diverged during simulation");
  }

  result.omega_star = barycenter(curiosities, j_values);

  const double j_min = *std::min_element(j_values.begin(), j_values.end());
  double total = 0.0;
  for (double j : j_values) total += std::exp(-curiosities.mu() * (j - j_min));
  for (std::size_t v = 0; v < omegas.size(); ++v) {
    result.entries[v].weight =
        std::exp(-curiosities.mu() * (j_values[v] - j_min)) / total;
  }
  return result;
}

}  // namespace lpvident
