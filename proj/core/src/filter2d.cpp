#include "lpvident/filter2d.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "lpvident/errors.hpp"

namespace lpvident {

namespace {

// iir_filter_1d applied to every column.
Eigen::MatrixXd filter_columns(const AlphaPolynomial& alpha,
                               const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    out.col(j) = iir_filter_1d(alpha, m.col(j));
  }
  return out;
}

}  // namespace

AlphaPolynomial butterworth_alpha(double omega_c, double ts, int n_x) {
  if (n_x < 1) throw TooShort("n_x must be >= 1, got " + std::to_string(n_x));
  if (!std::isfinite(ts) || ts <= 0.0) {
    throw NonFinite("ts must be finite and > 0, got " + std::to_string(ts));
  }
  const double nyquist = std::numbers::pi / ts;
  if (!std::isfinite(omega_c) || omega_c <= 0.0 || omega_c >= nyquist) {
    throw CutoffOutOfRange("omega_c must lie in (0, " +
                           std::to_string(nyquist) + ") rad/s, got " +
                           std::to_string(omega_c));
  }

  // Left-half-plane analog poles mapped through z = exp(s ts), then the
  // polynomial prod (q - z_m) expanded with descending-power coefficients.
  std::vector<std::complex<double>> poly{1.0};
  for (int m = 1; m <= n_x; ++m) {
    const double theta =
        std::numbers::pi * (2.0 * m + n_x - 1.0) / (2.0 * n_x);
    const std::complex<double> s =
        omega_c * std::complex<double>(std::cos(theta), std::sin(theta));
    const std::complex<double> z = std::exp(s * ts);
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= z * poly[i];
    }
    poly = std::move(next);
  }

  // Conjugate-symmetric pole set: imaginary parts cancel to roundoff.
  Eigen::VectorXd coeffs(n_x);
  for (int i = 1; i <= n_x; ++i) {
    coeffs(i - 1) = poly[static_cast<std::size_t>(i)].real();
  }
  return AlphaPolynomial(std::move(coeffs));
}

Eigen::VectorXd iir_filter_1d(const AlphaPolynomial& alpha,
                              const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::VectorXd& a = alpha.coeffs();
  const Eigen::Index n = a.size();
  Eigen::VectorXd out(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    double acc = x(k);
    const Eigen::Index lim = std::min(n, k);
    for (Eigen::Index m = 1; m <= lim; ++m) acc -= a(m - 1) * out(k - m);
    out(k) = acc;
  }
  return out;
}

FilteredGram filter_gram_2d(const AlphaPolynomial& alpha,
                            const GramMatrix& g) {
  if (g.entries.rows() != g.entries.cols()) {
    throw LengthMismatch("gram matrix is " + std::to_string(g.entries.rows()) +
                         "x" + std::to_string(g.entries.cols()) +
                         ", expected square");
  }
  if (alpha.is_origin()) return FilteredGram{g.entries, alpha};
  Eigen::MatrixXd half = filter_columns(alpha, g.entries);
  Eigen::MatrixXd full = filter_columns(alpha, half.transpose()).transpose();
  return FilteredGram{std::move(full), alpha};
}

}  // namespace lpvident
