#pragma once

// Reference implementations kept deliberately naive and independent of the
// library internals, so tests compare two separately derived answers.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "lpvident/alpha.hpp"
#include "lpvident/types.hpp"

namespace oracles {

using ScalarKernel = std::function<double(double, double)>;
using FeatureMap = std::function<Eigen::VectorXd(double)>;

inline Eigen::VectorXd linspace(double lo, double hi, Eigen::Index n) {
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

// psi(p, q) = p * q
inline Eigen::VectorXd linear_features(double p) {
  Eigen::VectorXd f(1);
  f(0) = p;
  return f;
}

// psi(p, q) = (p * q + 1)^2
inline Eigen::VectorXd quadratic_features(double p) {
  Eigen::VectorXd f(3);
  f(0) = p * p;
  f(1) = std::sqrt(2.0) * p;
  f(2) = 1.0;
  return f;
}

inline Eigen::MatrixXd brute_force_gram(const lpvident::Dataset& d, int n_x,
                                        const ScalarKernel& psi) {
  const Eigen::Index m = d.size() - n_x;
  Eigen::MatrixXd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      double sum = 0.0;
      for (int w = 0; w < n_x; ++w) {
        sum += psi(d.p(i + w, 0), d.p(j + w, 0)) *
               (d.y(i + w) * d.y(j + w) + d.u(i + w) * d.u(j + w));
      }
      g(i, j) = sum;
    }
  }
  return g;
}

// Causal q^n / alpha(q) recursion with zero initial conditions.
inline Eigen::VectorXd ref_iir(const Eigen::VectorXd& coeffs,
                               const Eigen::VectorXd& in) {
  const Eigen::Index n = coeffs.size();
  Eigen::VectorXd out(in.size());
  for (Eigen::Index k = 0; k < in.size(); ++k) {
    double acc = in(k);
    for (Eigen::Index m = 1; m <= n && m <= k; ++m) {
      acc -= coeffs(m - 1) * out(k - m);
    }
    out(k) = acc;
  }
  return out;
}

inline Eigen::MatrixXd ref_filter_rows_then_cols(const Eigen::VectorXd& coeffs,
                                                 const Eigen::MatrixXd& g) {
  Eigen::MatrixXd a = g;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    a.row(r) = ref_iir(coeffs, a.row(r).transpose()).transpose();
  }
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    a.col(c) = ref_iir(coeffs, a.col(c));
  }
  return a;
}

inline Eigen::MatrixXd ref_filter_cols_then_rows(const Eigen::VectorXd& coeffs,
                                                 const Eigen::MatrixXd& g) {
  Eigen::MatrixXd a = g;
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    a.col(c) = ref_iir(coeffs, a.col(c));
  }
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    a.row(r) = ref_iir(coeffs, a.row(r).transpose()).transpose();
  }
  return a;
}

// max_ij | sum_{ml,mr} alpha_ml alpha_mr K[i-ml, j-mr] - G[i,j] |, alpha_0 = 1
// and out-of-range terms dropped (zero initial conditions).
inline double recursion_residual(const Eigen::MatrixXd& k,
                                 const Eigen::MatrixXd& g,
                                 const Eigen::VectorXd& coeffs) {
  const Eigen::Index n = coeffs.size();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      double acc = 0.0;
      for (Eigen::Index ml = 0; ml <= n && ml <= i; ++ml) {
        const double al = ml == 0 ? 1.0 : coeffs(ml - 1);
        for (Eigen::Index mr = 0; mr <= n && mr <= j; ++mr) {
          const double ar = mr == 0 ? 1.0 : coeffs(mr - 1);
          acc += al * ar * k(i - ml, j - mr);
        }
      }
      worst = std::max(worst, std::abs(acc - g(i, j)));
    }
  }
  return worst;
}

// Row i holds blocks m = 0..n_x-1 of [F(p_{i+m}) y_{i+m}, F(p_{i+m}) u_{i+m}].
inline Eigen::MatrixXd primal_regressors(const lpvident::Dataset& d, int n_x,
                                         const FeatureMap& features) {
  const Eigen::Index f = features(0.0).size();
  const Eigen::Index m = d.size() - n_x;
  Eigen::MatrixXd phi(m, 2 * f * n_x);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (int w = 0; w < n_x; ++w) {
      const Eigen::VectorXd fw = features(d.p(i + w, 0));
      phi.row(i).segment(2 * f * w, f) = (fw * d.y(i + w)).transpose();
      phi.row(i).segment(2 * f * w + f, f) = (fw * d.u(i + w)).transpose();
    }
  }
  return phi;
}

inline Eigen::MatrixXd filter_regressor_rows(const Eigen::VectorXd& coeffs,
                                             const Eigen::MatrixXd& phi) {
  Eigen::MatrixXd out = phi;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    out.col(c) = ref_iir(coeffs, out.col(c));
  }
  return out;
}

inline Eigen::VectorXd ridge_theta(const Eigen::MatrixXd& phi,
                                   const Eigen::VectorXd& y, double gamma) {
  Eigen::MatrixXd normal = phi.transpose() * phi;
  normal.diagonal().array() += 1.0 / gamma;
  return normal.ldlt().solve(phi.transpose() * y);
}

// theta block for Hankel row r (1-based) of the output channel.
inline Eigen::VectorXd theta_y_block(const Eigen::VectorXd& theta,
                                     Eigen::Index f, int r) {
  return theta.segment(2 * f * (r - 1), f);
}

inline Eigen::VectorXd theta_u_block(const Eigen::VectorXd& theta,
                                     Eigen::Index f, int r) {
  return theta.segment(2 * f * (r - 1) + f, f);
}

// Free-run companion-form simulation with coefficient callbacks.
inline Eigen::VectorXd companion_simulate(
    const Eigen::VectorXd& coeffs,
    const std::function<Eigen::VectorXd(double)>& l_of_p,
    const std::function<Eigen::VectorXd(double)>& b_of_p,
    const Eigen::VectorXd& u, const Eigen::VectorXd& p) {
  const Eigen::Index n = coeffs.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r + 1 < n; ++r) a(r + 1, r) = 1.0;
  for (Eigen::Index r = 0; r < n; ++r) a(r, n - 1) = -coeffs(n - 1 - r);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y(u.size());
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    y(k) = x(n - 1);
    x = a * x + l_of_p(p(k)) * y(k) + b_of_p(p(k)) * u(k);
  }
  return y;
}

struct RandomSignals {
  Eigen::VectorXd u;
  Eigen::VectorXd y;
  Eigen::MatrixXd p;
};

inline RandomSignals random_signals(Eigen::Index n, unsigned seed,
                                    double p_span = 0.8) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  RandomSignals s;
  s.u.resize(n);
  s.y.resize(n);
  s.p.resize(n, 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    s.u(k) = unit(rng);
    s.y(k) = unit(rng);
    s.p(k, 0) = p_span * unit(rng);
  }
  return s;
}

inline lpvident::Dataset to_dataset(const RandomSignals& s, double ts = 1.0) {
  lpvident::Dataset d;
  d.u = s.u;
  d.y = s.y;
  d.p = s.p;
  d.ts = ts;
  return d;
}

}  // namespace oracles
