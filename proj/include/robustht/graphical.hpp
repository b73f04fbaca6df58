#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "robustht/solver.hpp"
#include "robustht/synthgen.hpp"
#include "robustht/types.hpp"

namespace robustht {

enum class EdgeAggregation { edge_union, edge_intersection };

struct ScoredEdge {
  int i = 0;  // i < j
  int j = 0;
  double score = 0.0;  // max |coefficient| over both endpoint regressions
};

struct GraphEstimate {
  std::vector<std::vector<int>> neighborhoods;  // per node, global ids, sorted
  std::vector<ScoredEdge> edges;                // aggregated, sorted by (i, j)
  EdgeAggregation aggregation = EdgeAggregation::edge_union;
};

namespace detail {

// Coefficient magnitude per directed pair (node -> neighbor) from one
// regression support, merged deterministically by node index later.
struct NodeFit {
  std::vector<int> support;           // global ids
  std::vector<double> magnitudes;     // aligned with support
};

inline NodeFit fit_node(const Dataset& data, int node, int k_prime,
                        const RobustMeanSpec& mean_spec, const SolverConfig& config) {
  const int d = static_cast<int>(data.dim());
  Dataset reg;
  reg.kind = DatasetKind::regression;
  reg.y = data.X.col(node);
  reg.X.resize(data.n(), d - 1);
  for (int c = 0, t = 0; c < d; ++c) {
    if (c == node) continue;
    reg.X.col(t++) = data.X.col(c);
  }
  SolverConfig node_config = config;
  node_config.k_prime = k_prime;
  const SolveResult fit = solve(reg, LossSpec::squared(), mean_spec, node_config);

  NodeFit out;
  for (int t = 0; t < d - 1; ++t) {
    if (fit.beta_hat[t] == 0.0) continue;
    const int global = t < node ? t : t + 1;
    out.support.push_back(global);
    out.magnitudes.push_back(std::abs(fit.beta_hat[t]));
  }
  return out;
}

}  // namespace detail

// Algorithm: regress every node on the remaining d-1 columns with the
// squared-loss robust solver; neighborhoods are the supports, and edges are
// aggregated across both endpoints by union or intersection. The d node
// regressions are independent; num_threads > 1 runs them in parallel with
// results merged by node index.
inline GraphEstimate robust_ns(const Dataset& data, int k_prime,
                               const RobustMeanSpec& mean_spec, const SolverConfig& config,
                               EdgeAggregation aggregation = EdgeAggregation::edge_union,
                               int num_threads = 1) {
  const int d = static_cast<int>(data.dim());
  if (d < 2) throw std::invalid_argument("robust_ns: need at least two variables");
  if (k_prime < 1 || k_prime > d - 1)
    throw std::invalid_argument("robust_ns: k_prime must lie in [1, d-1]");

  std::vector<detail::NodeFit> fits(static_cast<std::size_t>(d));
  std::vector<std::string> failures(static_cast<std::size_t>(d));
  const int workers = std::max(1, std::min(num_threads, d));
  std::atomic<int> next{0};
  auto run = [&]() {
    for (;;) {
      const int node = next.fetch_add(1);
      if (node >= d) return;
      try {
        fits[static_cast<std::size_t>(node)] =
            detail::fit_node(data, node, k_prime, mean_spec, config);
      } catch (const std::exception& e) {
        failures[static_cast<std::size_t>(node)] = e.what();
      }
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  for (int node = 0; node < d; ++node)
    if (!failures[static_cast<std::size_t>(node)].empty())
      throw std::runtime_error("robust_ns: node " + std::to_string(node) +
                               " failed: " + failures[static_cast<std::size_t>(node)]);

  GraphEstimate est;
  est.aggregation = aggregation;
  est.neighborhoods.resize(static_cast<std::size_t>(d));
  std::map<std::pair<int, int>, std::pair<double, double>> directed;  // (i,j) -> |coef| each way
  for (int node = 0; node < d; ++node) {
    const auto& fit = fits[static_cast<std::size_t>(node)];
    est.neighborhoods[static_cast<std::size_t>(node)] = fit.support;
    for (std::size_t t = 0; t < fit.support.size(); ++t) {
      const int other = fit.support[t];
      const auto key = std::minmax(node, other);
      auto& slot = directed[{key.first, key.second}];
      (node < other ? slot.first : slot.second) = fit.magnitudes[t];
    }
  }
  for (const auto& [key, mags] : directed) {
    const bool both = mags.first > 0.0 && mags.second > 0.0;
    if (aggregation == EdgeAggregation::edge_intersection && !both) continue;
    est.edges.push_back({key.first, key.second, std::max(mags.first, mags.second)});
  }
  return est;
}

// One robust_ns estimate per sparsity level; each solve is independent
// (IHT paths are not nested).
inline std::vector<GraphEstimate> regression_path(
    const Dataset& data, const RobustMeanSpec& mean_spec, const SolverConfig& config,
    const std::vector<int>& k_values,
    EdgeAggregation aggregation = EdgeAggregation::edge_union, int num_threads = 1) {
  if (k_values.empty()) throw std::invalid_argument("regression_path: empty k list");
  if (!std::is_sorted(k_values.begin(), k_values.end()))
    throw std::invalid_argument("regression_path: k values must be sorted ascending");
  std::vector<GraphEstimate> out;
  out.reserve(k_values.size());
  for (int k : k_values)
    out.push_back(robust_ns(data, k, mean_spec, config, aggregation, num_threads));
  return out;
}

// (fpr, tpr) per estimate against the true edge set, sorted by fpr.
inline std::vector<std::pair<double, double>> roc_points(
    const std::vector<GraphEstimate>& estimates, const GroundTruth& truth) {
  if (truth.true_edges.empty())
    throw std::invalid_argument("roc_points: ground truth has no edges");
  const int d = static_cast<int>(truth.theta.rows());
  const double total = static_cast<double>(d) * (d - 1) / 2.0;
  const double pos = static_cast<double>(truth.true_edges.size());
  std::vector<std::pair<int, int>> true_sorted = truth.true_edges;
  std::sort(true_sorted.begin(), true_sorted.end());

  std::vector<std::pair<double, double>> pts;
  pts.reserve(estimates.size());
  for (const auto& est : estimates) {
    double tp = 0.0, fp = 0.0;
    for (const auto& e : est.edges) {
      if (std::binary_search(true_sorted.begin(), true_sorted.end(), std::make_pair(e.i, e.j)))
        tp += 1.0;
      else
        fp += 1.0;
    }
    pts.emplace_back(fp / (total - pos), tp / pos);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Trapezoid AUC over the sorted, deduplicated points with (0,0) and (1,1)
// appended.
inline double auc(std::vector<std::pair<double, double>> points) {
  points.emplace_back(0.0, 0.0);
  points.emplace_back(1.0, 1.0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  double area = 0.0;
  for (std::size_t t = 1; t < points.size(); ++t)
    area += (points[t].first - points[t - 1].first) *
            (points[t].second + points[t - 1].second) / 2.0;
  return area;
}

}  // namespace robustht
