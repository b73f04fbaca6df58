#pragma once

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "robustht/losses.hpp"
#include "robustht/rng.hpp"
#include "robustht/robust_mean.hpp"
#include "robustht/thresholding.hpp"
#include "robustht/types.hpp"

namespace robustht {

struct SolveResult {
  ParamVector beta_hat;
  IterateTrace trace;
  int iterations_run = 0;
  bool stopped_early = false;
};

// Iterative hard thresholding driven by a robust gradient aggregate:
//   b_{t+1} = project_ball(hard_threshold(b_t - eta * G_hat(b_t), k'), radius)
// from b_0 = 0. Stops after max_iters or once the iterate moves by <= tol.
// In sample-split mode iteration t consumes rows [t*m, (t+1)*m), m = floor(n/T);
// otherwise every iteration sees the full sample. The trace records the
// post-update iterate of each iteration; l2_error is filled when a reference
// parameter is supplied, and the objective is always evaluated on the full
// dataset.
inline SolveResult solve(const Dataset& data, const LossSpec& loss,
                         const RobustMeanSpec& mean_spec, const SolverConfig& config,
                         const ParamVector* reference = nullptr) {
  data.validate();
  config.validate(data.dim());
  const Eigen::Index n_total = data.n(), d = data.dim();
  if (n_total == 0) throw std::invalid_argument("solve: empty dataset");
  if (reference && reference->size() != d)
    throw std::invalid_argument("solve: reference dimension mismatch");

  Eigen::Index split_size = 0;
  if (config.sample_split) {
    split_size = n_total / config.max_iters;
    if (split_size < 1)
      throw std::invalid_argument("solve: sample_split needs n >= max_iters");
    validate_mean_spec(mean_spec, split_size);
  } else {
    validate_mean_spec(mean_spec, n_total);
  }

  const double guard = 1e6 * std::max(1.0, std::isinf(config.projection_radius)
                                               ? 1.0
                                               : config.projection_radius);
  SolveResult result;
  result.beta_hat = ParamVector::Zero(d);
  result.trace.records.reserve(static_cast<std::size_t>(config.max_iters));

  Dataset chunk;  // reused in split mode
  for (int t = 0; t < config.max_iters; ++t) {
    const auto tic = std::chrono::steady_clock::now();

    const Dataset* active = &data;
    if (config.sample_split) {
      chunk.kind = data.kind;
      chunk.X = data.X.middleRows(t * split_size, split_size);
      chunk.y = data.y.segment(t * split_size, split_size);
      active = &chunk;
    }

    const Eigen::MatrixXd grads = gradient_matrix(*active, result.beta_hat, loss);
    const Eigen::VectorXd g_hat = aggregate_gradients(grads, mean_spec);
    if (!g_hat.allFinite())
      throw std::runtime_error("solve: non-finite gradient aggregate (divergent step size?)");

    ParamVector next = project_ball(
        hard_threshold(result.beta_hat - config.eta * g_hat, config.k_prime),
        config.projection_radius);
    if (next.norm() > guard)
      throw std::runtime_error("solve: iterate norm exceeded divergence guard");

    const double step = (next - result.beta_hat).norm();
    result.beta_hat = std::move(next);
    result.iterations_run = t + 1;

    TraceRecord rec;
    rec.iter = t;
    if (reference) rec.l2_error = (result.beta_hat - *reference).norm();
    rec.objective = objective(data, result.beta_hat, loss);
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - tic).count();
    result.trace.records.push_back(rec);

    if (step <= config.tol) {
      result.stopped_early = (t + 1 < config.max_iters);
      break;
    }
  }
  return result;
}

// Suggest a step size as 1/lambda_max(X'X/n), the top eigenvalue estimated
// by a fixed number of power iterations from a seeded random start.
inline double suggest_eta(const Dataset& data, int power_iters = 20,
                          std::uint64_t seed = 0) {
  const Eigen::Index n = data.n(), d = data.dim();
  if (n == 0 || d == 0) throw std::invalid_argument("suggest_eta: empty dataset");
  Rng rng(derive_seed(seed, 0x9d));
  Eigen::VectorXd v(d);
  for (Eigen::Index j = 0; j < d; ++j) v[j] = rng.normal();
  v.normalize();
  double lambda = 1.0;
  for (int it = 0; it < power_iters; ++it) {
    Eigen::VectorXd w = data.X.transpose() * (data.X * v) / static_cast<double>(n);
    const double nw = w.norm();
    if (nw == 0.0) return 1.0;
    lambda = v.dot(w);
    v = w / nw;
  }
  return lambda > 0.0 ? 1.0 / lambda : 1.0;
}

}  // namespace robustht
