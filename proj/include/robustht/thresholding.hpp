#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "robustht/types.hpp"

namespace robustht {

// Keep the k_prime entries of largest magnitude, zero the rest. Ties break
// toward the lower index. Kept entries are copied bit-exactly.
inline ParamVector hard_threshold(const ParamVector& v, int k_prime) {
  const Eigen::Index d = v.size();
  if (k_prime < 1 || k_prime > d)
    throw std::invalid_argument("hard_threshold: k_prime must be in [1, dim]");
  if (k_prime == d) return v;

  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  std::nth_element(idx.begin(), idx.begin() + (k_prime - 1), idx.end(),
                   [&v](int a, int b) {
                     const double ma = std::abs(v[a]), mb = std::abs(v[b]);
                     return ma > mb || (ma == mb && a < b);
                   });
  ParamVector out = ParamVector::Zero(d);
  for (int t = 0; t < k_prime; ++t) out[idx[static_cast<std::size_t>(t)]] = v[idx[static_cast<std::size_t>(t)]];
  return out;
}

// Euclidean projection onto the l2 ball of given radius; identity when the
// radius is infinite (the unbounded default).
inline ParamVector project_ball(const ParamVector& v, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("project_ball: radius must be positive");
  if (std::isinf(radius)) return v;
  const double nrm = v.norm();
  if (nrm <= radius) return v;
  return v * (radius / nrm);
}

}  // namespace robustht
