#pragma once

#include <Eigen/Dense>

#include <functional>

namespace lpvident {

/// Scheduling-space kernel: symmetric positive-definite function of two
/// scheduling vectors. The RBF below is the one shipped kernel; anything
/// matching this signature can be injected into gram() and fit().
using Kernel =
    std::function<double(const Eigen::RowVectorXd&, const Eigen::RowVectorXd&)>;

/// Gaussian RBF exp(-|pi - pj|^2 / sigma^2). Value in (0, 1], equal to 1
/// iff pi == pj. Requires sigma > 0.
double rbf(const Eigen::RowVectorXd& pi, const Eigen::RowVectorXd& pj,
           double sigma);

/// The RBF of the given width as an injectable Kernel.
Kernel rbf_kernel(double sigma);

}  // namespace lpvident
