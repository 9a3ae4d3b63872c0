#include "lpvident/estimator.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lpvident/errors.hpp"
#include "lpvident/filter2d.hpp"
#include "lpvident/gram.hpp"

namespace lpvident {

namespace {

constexpr double kRcondFloor = 1e-14;
constexpr double kDivergenceLimit = 1e9;

TrainedModel fit_impl(const Dataset& d, const HyperParams& hyper,
                      const AlphaPolynomial& alpha, Kernel kernel,
                      bool kernel_is_rbf) {
  validate_hyper(hyper);
  validate_dataset(d, hyper.n_x);
  if (alpha.order() != hyper.n_x) {
    throw LengthMismatch("alpha has order " + std::to_string(alpha.order()) +
                         " but n_x is " + std::to_string(hyper.n_x));
  }

  const GramMatrix g = gram(d, hyper.n_x, kernel);
  const FilteredGram k = filter_gram_2d(alpha, g);

  const Eigen::Index m = k.entries.rows();
  Eigen::MatrixXd system = k.entries;
  system.diagonal().array() += 1.0 / hyper.gamma;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
  if (ldlt.info() != Eigen::Success || ldlt.rcond() < kRcondFloor) {
    throw SingularSystem("regularized kernel system is singular to working "
                         "precision (rcond < 1e-14)");
  }
  const Eigen::VectorXd y_target = d.y.segment(hyper.n_x, m);
  Eigen::VectorXd lambda = ldlt.solve(y_target);
  if (!lambda.allFinite()) {
    throw SingularSystem("dual solve produced non-finite multipliers");
  }

  return TrainedModel{d, std::move(lambda), alpha, hyper, std::move(kernel),
                      kernel_is_rbf};
}

}  // namespace

TrainedModel fit(const Dataset& d, const HyperParams& hyper,
                 const AlphaPolynomial& alpha) {
  return fit_impl(d, hyper, alpha, rbf_kernel(hyper.sigma), true);
}

TrainedModel fit(const Dataset& d, const HyperParams& hyper,
                 const AlphaPolynomial& alpha, Kernel kernel) {
  return fit_impl(d, hyper, alpha, std::move(kernel), false);
}

Eigen::VectorXd fitted_output(const TrainedModel& m) {
  const Eigen::Index rows = m.lambda.size();
  return m.data.y.segment(m.order(), rows) - m.lambda / m.hyper.gamma;
}

CoefficientPair reconstruct(const TrainedModel& m,
                            const Eigen::RowVectorXd& pbar) {
  const auto [sy, su] = kernel_sequences(pbar, m.data, m.kernel);

  // The evaluation must equal theta = (T Phi)^T lambda, so the row filter T
  // enters through its adjoint: lambda is filtered anticausally and dotted
  // with the unfiltered kernel sequences.
  Eigen::VectorXd lbar = m.lambda.reverse();
  lbar = iir_filter_1d(m.alpha, lbar);
  lbar.reverseInPlace();

  const int n_x = m.order();
  const Eigen::Index cols = m.lambda.size();
  CoefficientPair pair;
  pair.pbar = pbar;
  pair.L.resize(n_x);
  pair.B.resize(n_x);
  for (int r = 1; r <= n_x; ++r) {
    pair.L(r - 1) = sy.segment(r - 1, cols).dot(lbar);
    pair.B(r - 1) = su.segment(r - 1, cols).dot(lbar);
  }
  return pair;
}

IoCoefficients io_coefficients(const TrainedModel& m,
                               const Eigen::RowVectorXd& pbar) {
  const CoefficientPair pair = reconstruct(m, pbar);
  const int n_x = m.order();
  IoCoefficients io;
  io.a.resize(n_x);
  io.b.resize(n_x);
  for (int c = 1; c <= n_x; ++c) {
    io.a(c - 1) = pair.L(n_x - c) - m.alpha.coeffs()(c - 1);
    io.b(c - 1) = pair.B(n_x - c);
  }
  return io;
}

Eigen::VectorXd simulate(const TrainedModel& m, const Eigen::VectorXd& u,
                         const Eigen::MatrixXd& p) {
  if (u.size() != p.rows()) {
    throw LengthMismatch("u has length " + std::to_string(u.size()) +
                         " but p has " + std::to_string(p.rows()) + " rows");
  }
  if (p.cols() != m.data.scheduling_dim()) {
    throw LengthMismatch("p has dimension " + std::to_string(p.cols()) +
                         " but the model was trained with dimension " +
                         std::to_string(m.data.scheduling_dim()));
  }
  if (!u.allFinite()) throw NonFinite("u contains a non-finite entry");
  if (!p.allFinite()) throw NonFinite("p contains a non-finite entry");

  const Eigen::MatrixXd a_mat = companion_from_alpha(m.alpha).A;
  const int n_x = m.order();

  std::map<std::vector<double>, CoefficientPair> cache;
  std::vector<double> key(static_cast<std::size_t>(p.cols()));

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_x);
  Eigen::VectorXd y(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    const double yk = x(n_x - 1);
    if (!(std::abs(yk) <= kDivergenceLimit)) {
      throw DivergedSimulation("simulated output exceeded 1e9 at step " +
                               std::to_string(k));
    }
    y(k) = yk;

    for (Eigen::Index c = 0; c < p.cols(); ++c) {
      key[static_cast<std::size_t>(c)] = p(k, c);
    }
    auto it = cache.find(key);
    if (it == cache.end()) {
      it = cache.emplace(key, reconstruct(m, p.row(k))).first;
    }
    const CoefficientPair& gains = it->second;
    x = a_mat * x + gains.L * yk + gains.B * u(k);
  }
  return y;
}

double bfr(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_sim) {
  if (y_true.size() != y_sim.size()) {
    throw LengthMismatch("y_true has length " + std::to_string(y_true.size()) +
                         " but y_sim has length " + std::to_string(y_sim.size()));
  }
  if (y_true.size() < 2) {
    throw TooShort("fit rates need at least 2 samples, got " +
                   std::to_string(y_true.size()));
  }
  if (!y_true.allFinite()) throw NonFinite("y_true contains a non-finite entry");
  if (!y_sim.allFinite()) throw NonFinite("y_sim contains a non-finite entry");

  const double denom = (y_true.array() - y_true.mean()).matrix().norm();
  if (denom == 0.0) {
    throw ZeroVariance("y_true is constant, fit ratio undefined");
  }
  const double ratio = (y_true - y_sim).norm() / denom;
  return 100.0 * std::max(1.0 - ratio, 0.0);
}

}  // namespace lpvident
