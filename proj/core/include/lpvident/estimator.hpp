#pragma once

#include <Eigen/Dense>

#include "lpvident/alpha.hpp"
#include "lpvident/kernel.hpp"
#include "lpvident/types.hpp"

namespace lpvident {

/// Everything needed to evaluate the identified model: the estimation data,
/// the dual variables, the predictor polynomial and the hyper-parameters.
/// Immutable by convention; safe to share across threads.
struct TrainedModel {
  Dataset data;
  Eigen::VectorXd lambda;  ///< dual variables, length N - n_x
  AlphaPolynomial alpha;
  HyperParams hyper;
  Kernel kernel;          ///< kernel used for fitting and reconstruction
  bool kernel_is_rbf = true;  ///< false when a custom kernel was injected

  int order() const { return alpha.order(); }
};

/// Scheduling-dependent gain vectors evaluated at one scheduling point:
/// the output-injection gain L(pbar) and the input gain B(pbar).
struct CoefficientPair {
  Eigen::VectorXd L;
  Eigen::VectorXd B;
  Eigen::RowVectorXd pbar;
};

/// Coefficients of the equivalent input/output difference equation at a
/// frozen scheduling value:
///   y_k = sum_m a_m(p) y_{k-m} + sum_m b_m(p) u_{k-m},  m = 1..n_x.
struct IoCoefficients {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};

/// Solves the regularized dual system (I/gamma + K) lambda = Y, where K is
/// the 2D-filtered Gram matrix and Y = [y_{n_x} ... y_{N-1}] (0-based).
/// Throws SingularSystem when the reciprocal condition estimate of the
/// system falls below 1e-14.
TrainedModel fit(const Dataset& d, const HyperParams& hyper,
                 const AlphaPolynomial& alpha);

/// Same with an injected kernel in place of the RBF.
TrainedModel fit(const Dataset& d, const HyperParams& hyper,
                 const AlphaPolynomial& alpha, Kernel kernel);

/// One-step-ahead outputs the fitted model assigns to its own estimation
/// data, aligned with Y (length N - n_x). Equals Y - lambda / gamma.
Eigen::VectorXd fitted_output(const TrainedModel& m);

/// Evaluates L(pbar) and B(pbar) from the dual variables: lambda is passed
/// through the adjoint of the row filter q^n/a(q) and folded with shifted
/// windows of the kernel sequences at pbar.
CoefficientPair reconstruct(const TrainedModel& m,
                            const Eigen::RowVectorXd& pbar);

/// reconstruct() expressed in the input/output difference-equation form:
/// a_m(p) = L_{n_x-m}(p) - alpha_m and b_m(p) = B_{n_x-m}(p) (0-based
/// component indices).
IoCoefficients io_coefficients(const TrainedModel& m,
                               const Eigen::RowVectorXd& pbar);

/// Free-run simulation x_{k+1} = (A + L(p_k) C) x_k + B(p_k) u_k,
/// y_k = C x_k from x_0 = 0, with (A, C) the companion pair of alpha.
/// L and B come from reconstruct(), cached per distinct scheduling value.
/// Throws DivergedSimulation when |y_k| exceeds 1e9.
Eigen::VectorXd simulate(const TrainedModel& m, const Eigen::VectorXd& u,
                         const Eigen::MatrixXd& p);

/// Best fit rate 100 * max(1 - |y - y_sim| / |y - mean(y)|, 0) in percent.
/// Throws ZeroVariance for constant y_true, LengthMismatch and TooShort on
/// malformed inputs.
double bfr(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_sim);

}  // namespace lpvident
