#include "lpvident/types.hpp"

#include <cmath>
#include <string>

#include "lpvident/errors.hpp"

namespace lpvident {

void validate_hyper(const HyperParams& hyper) {
  if (!std::isfinite(hyper.gamma) || hyper.gamma <= 0.0) {
    throw NonFinite("gamma must be finite and > 0, got " +
                    std::to_string(hyper.gamma));
  }
  if (!std::isfinite(hyper.sigma) || hyper.sigma <= 0.0) {
    throw NonFinite("sigma must be finite and > 0, got " +
                    std::to_string(hyper.sigma));
  }
  if (hyper.n_x < 1) {
    throw TooShort("n_x must be >= 1, got " + std::to_string(hyper.n_x));
  }
}

void validate_dataset(const Dataset& d, int n_x) {
  const Eigen::Index n = d.y.size();
  if (d.u.size() != n) {
    throw LengthMismatch("u has length " + std::to_string(d.u.size()) +
                         " but y has length " + std::to_string(n));
  }
  if (d.p.rows() != n) {
    throw LengthMismatch("p has " + std::to_string(d.p.rows()) +
                         " rows but y has length " + std::to_string(n));
  }
  if (!d.u.allFinite()) throw NonFinite("u contains a non-finite entry");
  if (!d.y.allFinite()) throw NonFinite("y contains a non-finite entry");
  if (!d.p.allFinite()) throw NonFinite("p contains a non-finite entry");
  if (!std::isfinite(d.ts) || d.ts <= 0.0) {
    throw NonFinite("ts must be finite and > 0, got " + std::to_string(d.ts));
  }
  if (n_x < 1) {
    throw TooShort("n_x must be >= 1, got " + std::to_string(n_x));
  }
  if (n < static_cast<Eigen::Index>(n_x) + 2) {
    throw TooShort("need at least n_x + 2 = " + std::to_string(n_x + 2) +
                   " samples, got " + std::to_string(n));
  }
}

}  // namespace lpvident
