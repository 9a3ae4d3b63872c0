#pragma once

#include <Eigen/Dense>

namespace lpvident {

/// Monic characteristic polynomial a(q) = q^n + a_1 q^{n-1} + ... + a_n of
/// the predictor matrix, stored as the coefficient vector [a_1, ..., a_n].
///
/// Construction rejects polynomials with a root on or outside the unit
/// circle: the filtering recursions built from a(q) diverge for those.
class AlphaPolynomial {
 public:
  /// Throws UnstablePolynomial for roots with |z| >= 1, NonFinite for
  /// NaN/inf coefficients and TooShort for an empty coefficient vector.
  explicit AlphaPolynomial(Eigen::VectorXd coeffs);

  /// a(q) = q^n, i.e. all coefficients zero (every predictor pole at the
  /// origin). This is the identity element of the filtering operations.
  static AlphaPolynomial origin(int n_x);

  int order() const { return static_cast<int>(coeffs_.size()); }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }

  /// True when every coefficient is exactly zero.
  bool is_origin() const;

 private:
  Eigen::VectorXd coeffs_;
};

/// Companion realization of a characteristic polynomial: A carries the
/// negated coefficients in its last column over a subdiagonal of ones and
/// C = [0 ... 0 1]. The pair (C, A) is observable and eig(A) equals the
/// roots of a(q).
struct CompanionPair {
  Eigen::MatrixXd A;
  Eigen::RowVectorXd C;
};

CompanionPair companion_from_alpha(const AlphaPolynomial& alpha);

/// Roots of q^n + c_1 q^{n-1} + ... + c_n via the companion eigenvalues.
Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& coeffs);

}  // namespace lpvident
