#include "lpvident/gram.hpp"

#include <string>
#include <vector>

#include "lpvident/errors.hpp"

namespace lpvident {

namespace {

std::vector<Eigen::RowVectorXd> scheduling_rows(const Eigen::MatrixXd& p,
                                                Eigen::Index count) {
  std::vector<Eigen::RowVectorXd> rows(static_cast<std::size_t>(count));
  for (Eigen::Index k = 0; k < count; ++k) {
    rows[static_cast<std::size_t>(k)] = p.row(k);
  }
  return rows;
}

void check_pbar(const Eigen::RowVectorXd& pbar, const Dataset& d) {
  if (pbar.size() != d.scheduling_dim()) {
    throw LengthMismatch("pbar has dimension " + std::to_string(pbar.size()) +
                         " but the scheduling signal has dimension " +
                         std::to_string(d.scheduling_dim()));
  }
  if (!pbar.allFinite()) throw NonFinite("pbar contains a non-finite entry");
}

}  // namespace

GramMatrix gram(const Dataset& d, int n_x, const Kernel& kernel) {
  validate_dataset(d, n_x);
  const Eigen::Index n = d.size();
  // Samples 0..N-2 are the only ones a regressor window touches.
  const Eigen::Index t = n - 1;
  const auto rows = scheduling_rows(d.p, t);
  Eigen::MatrixXd weighted(t, t);
  for (Eigen::Index j = 0; j < t; ++j) {
    const auto& pj = rows[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < t; ++i) {
      weighted(i, j) = kernel(rows[static_cast<std::size_t>(i)], pj) *
                       (d.y(i) * d.y(j) + d.u(i) * d.u(j));
    }
  }

  GramMatrix g;
  g.n_x = n_x;
  g.n_samples = n;
  const Eigen::Index m = n - n_x;
  g.entries.resize(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      double sum = 0.0;
      for (int w = 0; w < n_x; ++w) sum += weighted(i + w, j + w);
      g.entries(i, j) = sum;
    }
  }
  return g;
}

GramMatrix gram(const Dataset& d, const HyperParams& hyper) {
  validate_hyper(hyper);
  return gram(d, hyper.n_x, rbf_kernel(hyper.sigma));
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> kernel_sequences(
    const Eigen::RowVectorXd& pbar, const Dataset& d, const Kernel& kernel) {
  validate_dataset(d, 1);
  check_pbar(pbar, d);
  const Eigen::Index t = d.size() - 1;
  Eigen::VectorXd sy(t);
  Eigen::VectorXd su(t);
  for (Eigen::Index k = 0; k < t; ++k) {
    const double w = kernel(pbar, d.p.row(k));
    sy(k) = w * d.y(k);
    su(k) = w * d.u(k);
  }
  return {std::move(sy), std::move(su)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> kernel_sequences(
    const Eigen::RowVectorXd& pbar, const Dataset& d, double sigma) {
  return kernel_sequences(pbar, d, rbf_kernel(sigma));
}

}  // namespace lpvident
