#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "robustht/rng.hpp"
#include "robustht/thresholding.hpp"

using robustht::hard_threshold;
using robustht::project_ball;
using robustht::ParamVector;
using robustht::Rng;

namespace {

ParamVector vec(std::initializer_list<double> xs) {
  ParamVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

ParamVector random_vec(Rng& rng, int d, double scale = 1.0) {
  ParamVector v(d);
  for (int i = 0; i < d; ++i) v[i] = scale * rng.normal();
  return v;
}

// all k-subsets of {0..d-1}
void for_each_support(int d, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i < d; ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

TEST_CASE("hard_threshold keeps the largest magnitudes") {
  REQUIRE(hard_threshold(vec({3, -5, 1, 0}), 2) == vec({3, -5, 0, 0}));
}

TEST_CASE("hard_threshold breaks ties toward the lowest index") {
  REQUIRE(hard_threshold(vec({2, 2, 1}), 1) == vec({2, 0, 0}));
}

TEST_CASE("hard_threshold with k = dim is the identity") {
  Rng rng(7);
  const ParamVector v = random_vec(rng, 50);
  REQUIRE(hard_threshold(v, 50) == v);
}

TEST_CASE("hard_threshold rejects k outside [1, dim]") {
  REQUIRE_THROWS_AS(hard_threshold(vec({1, 2}), 0), std::invalid_argument);
  REQUIRE_THROWS_AS(hard_threshold(vec({1, 2}), 3), std::invalid_argument);
}

TEST_CASE("hard_threshold preserves kept entries exactly and is idempotent") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + rng.uniform_int(40);
    const int k = 1 + rng.uniform_int(d);
    const ParamVector v = random_vec(rng, d, trial % 3 == 0 ? 1e8 : 1.0);
    const ParamVector h = hard_threshold(v, k);
    int nnz = 0;
    for (int i = 0; i < d; ++i) {
      if (h[i] != 0.0) {
        ++nnz;
        REQUIRE(h[i] == v[i]);
      }
    }
    REQUIRE(nnz <= k);
    REQUIRE(hard_threshold(h, k) == h);
  }
}

TEST_CASE("hard_threshold is the best k-sparse approximation (brute force, d <= 8)") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + rng.uniform_int(7);  // 2..8
    const int k = 1 + rng.uniform_int(d);
    const ParamVector v = random_vec(rng, d);
    const double best = (v - hard_threshold(v, k)).norm();
    for_each_support(d, k, [&](const std::vector<int>& support) {
      ParamVector s = ParamVector::Zero(d);
      for (int i : support) s[i] = v[i];  // best vector on this support
      REQUIRE(best <= (v - s).norm() + 1e-12);
    });
  }
}

TEST_CASE("hard_threshold satisfies the k' = c^2 k ratio bound") {
  // <b* - H(z), z - H(z)> <= (1/2c) ||b* - H(z)||^2 for k-sparse b*, k' = c^2 k.
  Rng rng(17);
  int done = 0;
  while (done < 10000) {
    const int c = std::array<int, 3>{1, 2, 4}[static_cast<std::size_t>(rng.uniform_int(3))];
    const int k = 1 + rng.uniform_int(3);
    const int k_prime = c * c * k;
    const int d = k_prime + 1 + rng.uniform_int(30 - k_prime > 0 ? 30 - k_prime : 1);
    if (k_prime >= d || d > 30) continue;

    const ParamVector z = random_vec(rng, d, rng.uniform() < 0.2 ? 10.0 : 1.0);
    ParamVector beta_star = ParamVector::Zero(d);
    for (int t = 0; t < k; ++t) beta_star[rng.uniform_int(d)] = rng.normal();

    const ParamVector h = hard_threshold(z, k_prime);
    const double denom = (beta_star - h).squaredNorm();
    if (denom == 0.0) continue;
    const double lhs = (beta_star - h).dot(z - h);
    REQUIRE(lhs <= denom / (2.0 * c) + 1e-12 * std::max(1.0, denom));
    ++done;
  }
}

TEST_CASE("project_ball examples") {
  REQUIRE(project_ball(vec({3, 4}), 10.0) == vec({3, 4}));
  REQUIRE(project_ball(vec({3, 4}), 5.0) == vec({3, 4}));  // boundary
  const ParamVector p = project_ball(vec({6, 8}), 5.0);
  REQUIRE(p[0] == Catch::Approx(3.0));
  REQUIRE(p[1] == Catch::Approx(4.0));
  Rng rng(3);
  const ParamVector q = random_vec(rng, 4);  // unbounded radius = identity
  REQUIRE(project_ball(q, robustht::kUnboundedRadius) == q);
}

TEST_CASE("project_ball never increases distance to points inside the ball") {
  Rng rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + rng.uniform_int(20);
    const double radius = 0.1 + 5.0 * rng.uniform();
    const ParamVector v = random_vec(rng, d, 3.0);
    ParamVector p = random_vec(rng, d);
    if (p.norm() > radius) p *= radius / p.norm() * rng.uniform();
    REQUIRE((project_ball(v, radius) - p).norm() <= (v - p).norm() + 1e-12);
  }
}
