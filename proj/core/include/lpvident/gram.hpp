#pragma once

#include <Eigen/Dense>

#include <utility>

#include "lpvident/kernel.hpp"
#include "lpvident/types.hpp"

namespace lpvident {

/// Unfiltered kernel Gram matrix of the stacked regressors.
///
/// Index convention (0-based): entry (i, j) sums the kernel-weighted data
/// products over the windows i..i+n_x-1 and j..j+n_x-1, so row 0 belongs to
/// the regressor that predicts sample n_x. Symmetric and positive
/// semidefinite up to roundoff.
struct GramMatrix {
  Eigen::MatrixXd entries;   ///< (N - n_x) x (N - n_x)
  int n_x = 0;               ///< model order used to build it
  Eigen::Index n_samples = 0;  ///< N of the originating dataset
};

/// G_ij = sum_{m=0}^{n_x-1} k(p_{i+m}, p_{j+m}) (y_{i+m} y_{j+m} + u_{i+m} u_{j+m}).
///
/// The kernel values k(p_i, p_j) are computed once into an (N-1) x (N-1)
/// table and reused across the window shift.
GramMatrix gram(const Dataset& d, int n_x, const Kernel& kernel);

/// Same with the RBF kernel of width hyper.sigma.
GramMatrix gram(const Dataset& d, const HyperParams& hyper);

/// Raw kernel-weighted data sequences for coefficient reconstruction at a
/// scheduling point: sy_k = k(pbar, p_k) y_k and su_k = k(pbar, p_k) u_k for
/// k = 0..N-2 (the last sample never enters a regressor).
std::pair<Eigen::VectorXd, Eigen::VectorXd> kernel_sequences(
    const Eigen::RowVectorXd& pbar, const Dataset& d, const Kernel& kernel);

/// Same with the RBF kernel of the given width.
std::pair<Eigen::VectorXd, Eigen::VectorXd> kernel_sequences(
    const Eigen::RowVectorXd& pbar, const Dataset& d, double sigma);

}  // namespace lpvident
