#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustht/types.hpp"

namespace robustht {

// Which coordinate-wise estimator turns n gradient samples into one estimate.
struct RobustMeanSpec {
  enum class Kind { plain_mean, trimmed, mom };
  Kind kind = Kind::plain_mean;
  double trim_alpha = 0.0;  // fraction removed from EACH side
  int mom_blocks = 0;       // 0 = auto: min(n, ceil(4.5 ln d))

  static RobustMeanSpec plain_mean() { return {Kind::plain_mean, 0.0, 0}; }
  static RobustMeanSpec trimmed(double alpha) {
    if (!(alpha >= 0.0 && alpha < 0.5))
      throw std::invalid_argument("trim alpha must lie in [0, 0.5)");
    return {Kind::trimmed, alpha, 0};
  }
  static RobustMeanSpec mom(int num_blocks) {
    if (num_blocks < 1) throw std::invalid_argument("mom blocks must be >= 1");
    return {Kind::mom, 0.0, num_blocks};
  }
  static RobustMeanSpec mom_auto() { return {Kind::mom, 0.0, 0}; }
};

// Mean after discarding the floor(alpha*n) smallest and largest values.
// alpha = 0 reduces to the plain mean, summed in input order so it matches
// plain_mean bit for bit.
inline double trimmed_mean_1d(std::span<const double> xs, double alpha) {
  const std::size_t n = xs.size();
  if (n == 0) throw std::invalid_argument("trimmed_mean_1d: empty input");
  if (!(alpha >= 0.0 && alpha < 0.5))
    throw std::invalid_argument("trimmed_mean_1d: alpha must lie in [0, 0.5)");
  const std::size_t m = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n)));
  if (2 * m >= n) throw std::invalid_argument("trimmed_mean_1d: 2*floor(alpha*n) >= n");
  if (m == 0) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(n);
  }
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  double s = 0.0;
  for (std::size_t i = m; i < n - m; ++i) s += sorted[i];
  return s / static_cast<double>(n - 2 * m);
}

// Median of block means. Blocks are contiguous in input order; the first
// n mod b blocks take one extra element. Even median = midpoint average.
inline double mom_1d(std::span<const double> xs, int num_blocks) {
  const std::size_t n = xs.size();
  if (n == 0) throw std::invalid_argument("mom_1d: empty input");
  if (num_blocks < 1 || static_cast<std::size_t>(num_blocks) > n)
    throw std::invalid_argument("mom_1d: need 1 <= num_blocks <= n");
  const std::size_t b = static_cast<std::size_t>(num_blocks);
  const std::size_t base = n / b, extra = n % b;
  std::vector<double> means(b);
  std::size_t pos = 0;
  for (std::size_t j = 0; j < b; ++j) {
    const std::size_t len = base + (j < extra ? 1 : 0);
    double s = 0.0;
    for (std::size_t i = pos; i < pos + len; ++i) s += xs[i];
    means[j] = s / static_cast<double>(len);
    pos += len;
  }
  std::sort(means.begin(), means.end());
  if (b % 2 == 1) return means[b / 2];
  return 0.5 * (means[b / 2 - 1] + means[b / 2]);
}

inline int resolve_mom_blocks(const RobustMeanSpec& spec, Eigen::Index n, Eigen::Index d) {
  int b = spec.mom_blocks;
  if (b == 0) b = static_cast<int>(std::ceil(4.5 * std::log(static_cast<double>(d))));
  b = std::max(1, std::min<int>(b, static_cast<int>(n)));
  return b;
}

inline void validate_mean_spec(const RobustMeanSpec& spec, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("robust mean: need at least one sample");
  if (spec.kind == RobustMeanSpec::Kind::trimmed) {
    const auto m = static_cast<Eigen::Index>(std::floor(spec.trim_alpha * static_cast<double>(n)));
    if (2 * m >= n)
      throw std::invalid_argument("trimmed mean would remove all samples (2*floor(alpha*n) >= n)");
  } else if (spec.kind == RobustMeanSpec::Kind::mom && spec.mom_blocks > n) {
    throw std::invalid_argument("mom blocks exceed sample count");
  }
}

// Apply the chosen 1-d estimator independently to each of the d coordinates
// of an n x d matrix of gradient samples.
inline Eigen::VectorXd aggregate_gradients(const Eigen::MatrixXd& grads,
                                           const RobustMeanSpec& spec) {
  const Eigen::Index n = grads.rows(), d = grads.cols();
  validate_mean_spec(spec, n);
  Eigen::VectorXd out(d);
  switch (spec.kind) {
    case RobustMeanSpec::Kind::plain_mean:
      for (Eigen::Index j = 0; j < d; ++j) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += grads(i, j);
        out[j] = s / static_cast<double>(n);
      }
      break;
    case RobustMeanSpec::Kind::trimmed:
      for (Eigen::Index j = 0; j < d; ++j)
        out[j] = trimmed_mean_1d({grads.col(j).data(), static_cast<std::size_t>(n)},
                                 spec.trim_alpha);
      break;
    case RobustMeanSpec::Kind::mom: {
      const int b = resolve_mom_blocks(spec, n, d);
      for (Eigen::Index j = 0; j < d; ++j)
        out[j] = mom_1d({grads.col(j).data(), static_cast<std::size_t>(n)}, b);
      break;
    }
  }
  return out;
}

}  // namespace robustht
