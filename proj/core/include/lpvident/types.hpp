#pragma once

#include <Eigen/Dense>

namespace lpvident {

/// Aligned input/output/scheduling records sampled at a fixed period.
///
/// Row k of `p` is the scheduling vector observed together with `u[k]` and
/// `y[k]`. All sequences have the same length N; `ts` is the sampling period
/// in seconds. Treat instances as immutable once filled in; every operation
/// in the library takes them by const reference and never mutates.
struct Dataset {
  Eigen::VectorXd u;  ///< input sequence
  Eigen::VectorXd y;  ///< output sequence
  Eigen::MatrixXd p;  ///< N x n_p scheduling trajectory, one row per sample
  double ts = 1.0;    ///< sampling period [s]

  Eigen::Index size() const { return y.size(); }
  Eigen::Index scheduling_dim() const { return p.cols(); }
};

/// Regularization weight, kernel width and model order of one estimation.
struct HyperParams {
  double gamma = 100.0;  ///< regularization weight, > 0
  double sigma = 0.2;    ///< RBF kernel width, > 0
  int n_x = 2;           ///< model order, >= 1
};

/// Throws NonFinite or a std::invalid_argument-style Error when a
/// hyper-parameter violates its range (gamma > 0, sigma > 0, n_x >= 1).
void validate_hyper(const HyperParams& hyper);

/// Checks that `d` can be used to estimate a model of order `n_x`:
/// equal sequence lengths, all entries finite, ts > 0 and N >= n_x + 2.
/// Throws LengthMismatch, NonFinite or TooShort naming the offending field.
void validate_dataset(const Dataset& d, int n_x);

}  // namespace lpvident
