#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "robustht/rng.hpp"
#include "robustht/types.hpp"

namespace robustht {

enum class Covariance { identity, toeplitz_exp };
enum class TailKind { gaussian, lognormal, cauchy_noise };
enum class Scheme { linear, cubic_misspecified, lda_logistic, ggm_cluster };

struct GenSpec {
  int n = 100;
  int d = 10;
  int k = 2;
  double sigma = 0.0;     // noise std
  double epsilon = 0.0;   // corruption fraction, in [0, 0.5)
  Covariance covariance = Covariance::toeplitz_exp;
  TailKind tail = TailKind::gaussian;
  Scheme scheme = Scheme::linear;
  double ggm_v = 0.3;     // off-diagonal precision value for ggm_cluster
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 1 || d < 1 || k < 1) throw std::invalid_argument("n, d, k must be positive");
    if (k > d) throw std::invalid_argument("k must not exceed d");
    if (sigma < 0.0) throw std::invalid_argument("sigma must be non-negative");
    if (!(epsilon >= 0.0 && epsilon < 0.5))
      throw std::invalid_argument("epsilon must lie in [0, 0.5)");
    if (tail == TailKind::lognormal && epsilon > 0.0)
      throw std::invalid_argument("lognormal tails and corruption cannot be combined");
  }
};

struct GroundTruth {
  ParamVector beta_star;               // empty for ggm_cluster
  std::vector<int> support;            // sorted indices of beta_star's nonzeros
  std::vector<char> clean_mask;        // length = emitted row count, 1 = authentic
  Eigen::MatrixXd theta;               // precision matrix (ggm_cluster only)
  std::vector<std::pair<int, int>> true_edges;  // i < j pairs (ggm_cluster only)

  int corrupted_count() const {
    return static_cast<int>(std::count(clean_mask.begin(), clean_mask.end(), char(0)));
  }
};

namespace detail {

inline Eigen::MatrixXd covariance_matrix(Covariance cov, int d) {
  if (cov == Covariance::identity) return Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd s(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i, j) = std::exp(-std::abs(i - j));
  return s;
}

// standardized logN(0,4): (Z - E Z)/sd(Z), Z = exp(2 N(0,1))
inline double lognormal_std(Rng& rng) {
  static const double mean = std::exp(2.0);
  static const double sd = std::sqrt((std::exp(4.0) - 1.0) * std::exp(4.0));
  return (std::exp(2.0 * rng.normal()) - mean) / sd;
}

// k distinct indices in [0, d), sorted (partial Fisher-Yates)
inline std::vector<int> sample_support(Rng& rng, int d, int k) {
  std::vector<int> idx(static_cast<std::size_t>(d));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < k; ++i)
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(i + rng.uniform_int(d - i))]);
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

inline std::vector<int> sample_row_subset(Rng& rng, int n, int m) {
  return sample_support(rng, n, m);  // same sampling, different domain
}

// rows of standardized entries pushed through the covariance factor
inline Eigen::MatrixXd sample_design(Rng& rng, int n, int d, Covariance cov, TailKind tail) {
  Eigen::MatrixXd x(n, d);
  const bool heavy = (tail == TailKind::lognormal);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = heavy ? lognormal_std(rng) : rng.normal();
  if (cov == Covariance::toeplitz_exp) {
    const Eigen::MatrixXd l = covariance_matrix(cov, d).llt().matrixL();
    x = x * l.transpose();
  }
  return x;
}

}  // namespace detail

// Sparse linear model y = x'b* + noise with the paper's replacement-style
// corruption: floor(eps*n) rows get Rademacher covariates a and response -a'b*.
// tail=lognormal standardizes logN(0,4) entries for covariates and noise
// (eps must be 0); tail=cauchy_noise draws the noise from a standard Cauchy
// (sigma is ignored) over Gaussian covariates.
inline std::pair<Dataset, GroundTruth> gen_linear(const GenSpec& spec) {
  spec.validate();
  if (spec.scheme != Scheme::linear && spec.scheme != Scheme::cubic_misspecified)
    throw std::invalid_argument("gen_linear: wrong scheme");
  const bool cubic = spec.scheme == Scheme::cubic_misspecified;
  Rng rng(splitmix64(spec.seed));

  GroundTruth truth;
  truth.support = detail::sample_support(rng, spec.d, spec.k);
  truth.beta_star = ParamVector::Zero(spec.d);
  for (int j : truth.support) truth.beta_star[j] = rng.rademacher();

  Dataset data;
  data.kind = DatasetKind::regression;
  data.X = detail::sample_design(rng, spec.n, spec.d, spec.covariance, spec.tail);
  data.y.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    double signal = 0.0;
    for (int j : truth.support)
      signal += (cubic ? std::pow(data.X(i, j), 3) : data.X(i, j)) * truth.beta_star[j];
    double noise = 0.0;
    switch (spec.tail) {
      case TailKind::gaussian: noise = spec.sigma * rng.normal(); break;
      case TailKind::lognormal: noise = spec.sigma * detail::lognormal_std(rng); break;
      case TailKind::cauchy_noise: noise = rng.cauchy(); break;
    }
    data.y[i] = signal + noise;
  }

  truth.clean_mask.assign(static_cast<std::size_t>(spec.n), char(1));
  const int m = static_cast<int>(std::floor(spec.epsilon * spec.n));
  if (m > 0) {
    for (int i : detail::sample_row_subset(rng, spec.n, m)) {
      double dot = 0.0;
      for (int j = 0; j < spec.d; ++j) {
        data.X(i, j) = rng.rademacher();
        dot += data.X(i, j) * truth.beta_star[j];
      }
      data.y[i] = -dot;
      truth.clean_mask[static_cast<std::size_t>(i)] = 0;
    }
  }
  data.validate();
  return {std::move(data), std::move(truth)};
}

inline std::pair<Dataset, GroundTruth> gen_cubic_misspecified(GenSpec spec) {
  spec.scheme = Scheme::cubic_misspecified;
  return gen_linear(spec);
}

// Sparse LDA: x | y ~ N(1_d + y v, I) with v k-sparse, entries +/- 1/sqrt(k);
// the Bayes classifier is b* = 2v. Corrupted rows get +/-3 covariates and a
// label drawn from the sign-flipped logistic conditional.
inline std::pair<Dataset, GroundTruth> gen_lda(const GenSpec& spec) {
  spec.validate();
  if (spec.scheme != Scheme::lda_logistic)
    throw std::invalid_argument("gen_lda: wrong scheme");
  Rng rng(splitmix64(spec.seed));

  GroundTruth truth;
  truth.support = detail::sample_support(rng, spec.d, spec.k);
  ParamVector v = ParamVector::Zero(spec.d);
  const double mag = 1.0 / std::sqrt(static_cast<double>(spec.k));
  for (int j : truth.support) v[j] = mag * rng.rademacher();
  truth.beta_star = 2.0 * v;

  Dataset data;
  data.kind = DatasetKind::classification;
  data.X.resize(spec.n, spec.d);
  data.y.resize(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    data.y[i] = rng.rademacher();
    for (int j = 0; j < spec.d; ++j)
      data.X(i, j) = 1.0 + data.y[i] * v[j] + rng.normal();
  }

  truth.clean_mask.assign(static_cast<std::size_t>(spec.n), char(1));
  const int m = static_cast<int>(std::floor(spec.epsilon * spec.n));
  if (m > 0) {
    for (int i : detail::sample_row_subset(rng, spec.n, m)) {
      double dot = 0.0;
      for (int j = 0; j < spec.d; ++j) {
        data.X(i, j) = 3.0 * rng.rademacher();
        dot += data.X(i, j) * truth.beta_star[j];
      }
      // opposite model: P(y = +1 | x) = 1/(1 + exp(x'b*))
      const double p_pos = 1.0 / (1.0 + std::exp(std::clamp(dot, -500.0, 500.0)));
      data.y[i] = rng.uniform() < p_pos ? 1.0 : -1.0;
      truth.clean_mask[static_cast<std::size_t>(i)] = 0;
    }
  }
  data.validate();
  return {std::move(data), std::move(truth)};
}

// Cluster Gaussian graphical model: ceil(d/20) blocks, within-block edges
// with probability 0.3 and precision value v, diagonal loaded so the
// smallest eigenvalue is at least 0.1. Outliers are ADDED (not replaced):
// floor(eps*n/(1-eps)) draws from 0.5 N(mu,I) + 0.5 N(-mu,I), mu = 1.5*1_d.
inline std::pair<Dataset, GroundTruth> gen_ggm_cluster(const GenSpec& spec) {
  spec.validate();
  if (spec.scheme != Scheme::ggm_cluster)
    throw std::invalid_argument("gen_ggm_cluster: wrong scheme");
  Rng rng(splitmix64(spec.seed));
  const int d = spec.d;

  const int num_clusters = (d + 19) / 20;
  std::vector<int> cluster_of(static_cast<std::size_t>(d));
  {
    const int base = d / num_clusters, extra = d % num_clusters;
    int node = 0;
    for (int c = 0; c < num_clusters; ++c) {
      const int len = base + (c < extra ? 1 : 0);
      for (int t = 0; t < len; ++t) cluster_of[static_cast<std::size_t>(node++)] = c;
    }
  }

  GroundTruth truth;
  truth.theta = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      if (cluster_of[static_cast<std::size_t>(i)] != cluster_of[static_cast<std::size_t>(j)])
        continue;
      if (rng.uniform() < 0.3) {
        truth.theta(i, j) = truth.theta(j, i) = spec.ggm_v;
        truth.true_edges.emplace_back(i, j);
      }
    }
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(truth.theta);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.1)
      truth.theta.diagonal().array() += 0.1 - lmin;
  }

  Eigen::LLT<Eigen::MatrixXd> llt(truth.theta.inverse());
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("gen_ggm_cluster: precision matrix not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();

  const int n_out = static_cast<int>(std::floor(spec.epsilon * spec.n / (1.0 - spec.epsilon)));
  const int n_total = spec.n + n_out;
  Dataset data;
  data.kind = DatasetKind::unlabeled;
  data.X.resize(n_total, d);
  Eigen::VectorXd z(d);
  for (int i = 0; i < spec.n; ++i) {
    for (int j = 0; j < d; ++j) z[j] = rng.normal();
    data.X.row(i) = (l * z).transpose();
  }
  for (int i = spec.n; i < n_total; ++i) {
    const double sign = rng.rademacher();
    for (int j = 0; j < d; ++j) data.X(i, j) = sign * 1.5 + rng.normal();
  }
  truth.clean_mask.assign(static_cast<std::size_t>(n_total), char(1));
  for (int i = spec.n; i < n_total; ++i) truth.clean_mask[static_cast<std::size_t>(i)] = 0;
  data.validate();
  return {std::move(data), std::move(truth)};
}

inline std::pair<Dataset, GroundTruth> generate(const GenSpec& spec) {
  switch (spec.scheme) {
    case Scheme::linear:
    case Scheme::cubic_misspecified: return gen_linear(spec);
    case Scheme::lda_logistic: return gen_lda(spec);
    case Scheme::ggm_cluster: return gen_ggm_cluster(spec);
  }
  throw std::logic_error("unreachable");
}

}  // namespace robustht
