#include "lpvident/kernel.hpp"

#include <cmath>
#include <string>

#include "lpvident/errors.hpp"

namespace lpvident {

double rbf(const Eigen::RowVectorXd& pi, const Eigen::RowVectorXd& pj,
           double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw NonFinite("sigma must be finite and > 0, got " +
                    std::to_string(sigma));
  }
  if (pi.size() != pj.size()) {
    throw LengthMismatch("scheduling vectors have dimensions " +
                         std::to_string(pi.size()) + " and " +
                         std::to_string(pj.size()));
  }
  return std::exp(-(pi - pj).squaredNorm() / (sigma * sigma));
}

Kernel rbf_kernel(double sigma) {
  if (!std::isfinite(sigma) || sigma <= 0.0) {
    throw NonFinite("sigma must be finite and > 0, got " +
                    std::to_string(sigma));
  }
  return [sigma](const Eigen::RowVectorXd& pi, const Eigen::RowVectorXd& pj) {
    return rbf(pi, pj, sigma);
  };
}

}  // namespace lpvident
