#pragma once

#include <span>
#include <vector>

#include "lpvident/estimator.hpp"
#include "lpvident/types.hpp"

namespace lpvident {

/// Candidate cutoff frequencies for the predictor filter together with the
/// weighting constant of the barycenter rule. Frequencies are in rad/s,
/// strictly increasing and positive; checking them against Nyquist happens
/// when a sampling period is known, i.e. inside tune().
class CuriositySet {
 public:
  /// Throws on an empty, non-increasing or non-finite frequency list and on
  /// mu <= 0.
  CuriositySet(std::vector<double> omegas, double mu);

  /// Six cutoffs logarithmically spread over [0.05, 0.5] rad/sample scaled
  /// by the sampling period, with mu = 130.
  static CuriositySet defaults(double ts);

  const std::vector<double>& omegas() const { return omegas_; }
  double mu() const { return mu_; }

 private:
  std::vector<double> omegas_;
  double mu_;
};

/// Outcome of one cutoff sweep.
struct TuningResult {
  struct Entry {
    double omega = 0.0;
    double j = 0.0;       ///< merit index at this curiosity
    double weight = 0.0;  ///< normalized barycenter weight
    bool diverged = false;
  };
  double omega_star = 0.0;
  std::vector<Entry> entries;
};

/// Simulation-error merit min(|y - y_sim| / |y - mean(y)|, 1) in [0, 1].
/// Throws ZeroVariance for constant y.
double merit_index(const Eigen::VectorXd& y, const Eigen::VectorXd& y_sim);

/// Fits a model whose predictor poles are the Butterworth poles at cutoff
/// `omega`, free-runs it over the dataset's input/scheduling records and
/// returns the merit index of the simulation against the recorded output.
/// A diverged simulation yields 1.0 (and sets *diverged when given) instead
/// of aborting; fit errors propagate.
double j_index(const Dataset& d, const HyperParams& hyper, double omega,
               bool* diverged = nullptr);

/// Exponentially weighted average of the candidates:
///   omega* = sum_v omega_v e^{-mu J_v} / sum_v e^{-mu J_v},
/// evaluated with the smallest mu J_v subtracted before exponentiation so
/// large mu cannot overflow. The result always lies within [min, max] of
/// the candidates; mu = 0 degenerates to the arithmetic mean.
double barycenter(std::span<const double> omegas,
                  std::span<const double> j_values, double mu);

double barycenter(const CuriositySet& curiosities,
                  const std::vector<double>& j_values);

/// Evaluates j_index at every curiosity (concurrently; entries stay in
/// curiosity order) and applies the barycenter rule. Does not refit: the
/// caller fits the final model at the returned cutoff. With
/// holdout_fraction > 0 the trailing fraction of the records is held out
/// and the merit is computed on it instead of on the fitted span.
/// Throws AllDiverged when every curiosity diverged.
TuningResult tune(const Dataset& d, const HyperParams& hyper,
                  const CuriositySet& curiosities,
                  double holdout_fraction = 0.0);

}  // namespace lpvident
