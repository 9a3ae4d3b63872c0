#include "lpvident/alpha.hpp"

#include <Eigen/Eigenvalues>

#include <string>
#include <utility>

#include "lpvident/errors.hpp"

namespace lpvident {

namespace {

Eigen::MatrixXd companion_matrix(const Eigen::VectorXd& coeffs) {
  const Eigen::Index n = coeffs.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r + 1 < n; ++r) a(r + 1, r) = 1.0;
  // Last column holds -a_n ... -a_1 top to bottom.
  for (Eigen::Index r = 0; r < n; ++r) a(r, n - 1) = -coeffs(n - 1 - r);
  return a;
}

}  // namespace

AlphaPolynomial::AlphaPolynomial(Eigen::VectorXd coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) {
    throw TooShort("alpha polynomial needs order >= 1");
  }
  if (!coeffs_.allFinite()) {
    throw NonFinite("alpha coefficients contain a non-finite entry");
  }
  if (!is_origin()) {
    const Eigen::VectorXcd roots = polynomial_roots(coeffs_);
    const double radius = roots.cwiseAbs().maxCoeff();
    if (radius >= 1.0) {
      throw UnstablePolynomial("root of modulus " + std::to_string(radius) +
                               " is not strictly inside the unit circle");
    }
  }
}

AlphaPolynomial AlphaPolynomial::origin(int n_x) {
  if (n_x < 1) throw TooShort("alpha polynomial needs order >= 1");
  return AlphaPolynomial(Eigen::VectorXd::Zero(n_x));
}

bool AlphaPolynomial::is_origin() const { return coeffs_.isZero(0.0); }

CompanionPair companion_from_alpha(const AlphaPolynomial& alpha) {
  CompanionPair pair;
  pair.A = companion_matrix(alpha.coeffs());
  pair.C = Eigen::RowVectorXd::Zero(alpha.order());
  pair.C(alpha.order() - 1) = 1.0;
  return pair;
}

Eigen::VectorXcd polynomial_roots(const Eigen::VectorXd& coeffs) {
  return companion_matrix(coeffs).eigenvalues();
}

}  // namespace lpvident
