#pragma once

#include <Eigen/Dense>

#include "lpvident/alpha.hpp"
#include "lpvident/gram.hpp"

namespace lpvident {

/// Gram matrix after separable 2D all-pole filtering with a(q) on both axes.
/// Symmetric inputs stay symmetric; a(q) = q^n leaves the input untouched.
struct FilteredGram {
  Eigen::MatrixXd entries;
  AlphaPolynomial alpha;
};

/// Characteristic polynomial whose roots are the discrete images of the
/// order-n_x analog Butterworth poles with cutoff omega_c [rad/s]:
/// z_m = exp(s_m ts) with s_m = omega_c exp(j pi (2m + n_x - 1) / (2 n_x)).
/// All poles land strictly inside the unit circle. Throws CutoffOutOfRange
/// unless 0 < omega_c < pi / ts.
AlphaPolynomial butterworth_alpha(double omega_c, double ts, int n_x);

/// Causal all-pole filter q^n / a(q) with zero initial conditions:
/// out_k = x_k - sum_{m=1}^{n} a_m out_{k-m}, out_k = 0 for k < 0.
Eigen::VectorXd iir_filter_1d(const AlphaPolynomial& alpha,
                              const Eigen::Ref<const Eigen::VectorXd>& x);

/// 2D filtering of the Gram matrix: iir_filter_1d down every column, then
/// across every row (the order does not matter). The output K satisfies
///
///   sum_{l=0}^{n} sum_{r=0}^{n} a_l a_r K_{i-l, j-r} = G_{ij},  a_0 = 1,
///
/// with K taken as zero at out-of-range indices.
FilteredGram filter_gram_2d(const AlphaPolynomial& alpha, const GramMatrix& g);

}  // namespace lpvident
