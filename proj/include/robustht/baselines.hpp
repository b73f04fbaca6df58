#pragma once

#include <cmath>
#include <stdexcept>

#include "robustht/rng.hpp"
#include "robustht/solver.hpp"
#include "robustht/types.hpp"

namespace robustht {

// Standard IHT is the robust solver with plain-mean aggregation; provided as
// a named baseline.
inline SolveResult vanilla_iht(const Dataset& data, const LossSpec& loss,
                               const SolverConfig& config,
                               const ParamVector* reference = nullptr) {
  return solve(data, loss, RobustMeanSpec::plain_mean(), config, reference);
}

struct LassoConfig {
  double lambda = 0.0;
  int max_iters = 1000;
  double tol = 1e-6;         // per-coordinate subgradient optimality violation
  std::uint64_t seed = 0;    // power-iteration start
};

struct LassoResult {
  ParamVector beta;
  bool converged = false;
  int iterations = 0;
};

inline double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// (1/2n)||y - X b||^2 + lambda ||b||_1
inline double lasso_objective(const Dataset& data, const ParamVector& beta, double lambda) {
  const double n = static_cast<double>(data.n());
  return (data.y - data.X * beta).squaredNorm() / (2.0 * n) + lambda * beta.lpNorm<1>();
}

namespace detail {

// top eigenvalue of X'X/n by fixed-count power iteration
inline double top_eig_second_moment(const Eigen::MatrixXd& x, int iters, std::uint64_t seed) {
  const double n = static_cast<double>(x.rows());
  Rng rng(derive_seed(seed, 0x715));
  Eigen::VectorXd v(x.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = rng.normal();
  v.normalize();
  double lambda = 1.0;
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXd w = x.transpose() * (x * v) / n;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    lambda = v.dot(w);
    v = w / nw;
  }
  return lambda;
}

}  // namespace detail

// Proximal gradient (ISTA) for (1/2n)||y - Xb||^2 + lambda ||b||_1 with fixed
// step 1/L, L from 50 power iterations. Stops once every coordinate satisfies
// the subgradient optimality condition to tol; hitting max_iters first yields
// converged = false rather than an error.
inline LassoResult lasso(const Dataset& data, const LassoConfig& config) {
  data.validate();
  if (data.y.size() != data.n()) throw std::invalid_argument("lasso: labeled data required");
  if (config.lambda < 0.0) throw std::invalid_argument("lasso: lambda must be >= 0");
  if (config.max_iters < 1) throw std::invalid_argument("lasso: max_iters must be >= 1");
  const double n = static_cast<double>(data.n());

  double big_l = detail::top_eig_second_moment(data.X, 50, config.seed);
  if (big_l <= 0.0) big_l = 1.0;
  const double step = 1.0 / big_l;

  LassoResult result;
  result.beta = ParamVector::Zero(data.dim());
  for (int t = 0; t < config.max_iters; ++t) {
    const Eigen::VectorXd grad = data.X.transpose() * (data.X * result.beta - data.y) / n;

    bool optimal = true;
    for (Eigen::Index j = 0; j < result.beta.size(); ++j) {
      const double viol = result.beta[j] != 0.0
                              ? std::abs(grad[j] + config.lambda * (result.beta[j] > 0 ? 1.0 : -1.0))
                              : std::max(0.0, std::abs(grad[j]) - config.lambda);
      if (viol > config.tol) {
        optimal = false;
        break;
      }
    }
    result.iterations = t;
    if (optimal) {
      result.converged = true;
      return result;
    }

    for (Eigen::Index j = 0; j < result.beta.size(); ++j)
      result.beta[j] = soft_threshold(result.beta[j] - step * grad[j], step * config.lambda);
  }
  result.iterations = config.max_iters;
  return result;
}

}  // namespace robustht
