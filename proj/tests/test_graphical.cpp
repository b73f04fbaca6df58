#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "robustht/graphical.hpp"
#include "robustht/rng.hpp"

using namespace robustht;

namespace {

// Draw n rows from N(0, theta^{-1}).
Dataset sample_from_precision(const Eigen::MatrixXd& theta, int n, std::uint64_t seed) {
  const Eigen::MatrixXd l = Eigen::LLT<Eigen::MatrixXd>(theta.inverse()).matrixL();
  Rng rng(seed);
  Dataset data;
  data.kind = DatasetKind::unlabeled;
  data.X.resize(n, theta.rows());
  Eigen::VectorXd z(theta.rows());
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = rng.normal();
    data.X.row(i) = (l * z).transpose();
  }
  return data;
}

// Random sparse precision with exact +/-value off-diagonal entries, loaded to
// be positive definite.
Eigen::MatrixXd random_sparse_precision(int d, double value, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (rng.uniform() < 0.25) {
        const double v = value * rng.rademacher();
        theta(i, j) = theta(j, i) = v;
      }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(theta);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin < 0.1) theta.diagonal().array() += 0.1 - lmin;
  return theta;
}

std::set<std::pair<int, int>> edge_set(const GraphEstimate& est) {
  std::set<std::pair<int, int>> out;
  for (const auto& e : est.edges) out.insert({e.i, e.j});
  return out;
}

}  // namespace

TEST_CASE("regression coefficients inherit the sparsity pattern of theta") {
  // support(Sigma_(j)^{-1} sigma_(j)) = support(theta_(j)) via beta_j = -theta_(j)/theta_jj
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d = 5 + static_cast<int>(seed % 8);  // 5..12
    const Eigen::MatrixXd theta = random_sparse_precision(d, 0.3, derive_seed(99, seed));
    const Eigen::MatrixXd sigma = theta.inverse();
    for (int j = 0; j < d; ++j) {
      Eigen::MatrixXd sigma_j(d - 1, d - 1);
      Eigen::VectorXd col_j(d - 1);
      for (int a = 0, ia = 0; a < d; ++a) {
        if (a == j) continue;
        col_j[ia] = sigma(a, j);
        for (int b = 0, ib = 0; b < d; ++b) {
          if (b == j) continue;
          sigma_j(ia, ib) = sigma(a, b);
          ++ib;
        }
        ++ia;
      }
      const Eigen::VectorXd beta_j = sigma_j.ldlt().solve(col_j);
      for (int a = 0, ia = 0; a < d; ++a) {
        if (a == j) continue;
        const bool in_theta = theta(a, j) != 0.0;
        const bool in_beta = std::abs(beta_j[ia]) > 1e-8;
        REQUIRE(in_theta == in_beta);
        ++ia;
      }
    }
  }
}

TEST_CASE("two connected nodes select each other") {
  Eigen::MatrixXd theta(2, 2);
  theta << 1.0, 0.4, 0.4, 1.0;
  const Dataset data = sample_from_precision(theta, 2000, 12345);
  SolverConfig cfg;
  cfg.k_prime = 1;
  cfg.eta = 0.5;
  cfg.max_iters = 60;
  const auto est = robust_ns(data, 1, RobustMeanSpec::plain_mean(), cfg,
                             EdgeAggregation::edge_intersection);
  REQUIRE(est.neighborhoods[0] == std::vector<int>{1});
  REQUIRE(est.neighborhoods[1] == std::vector<int>{0});
  REQUIRE(est.edges.size() == 1);
  REQUIRE(est.edges[0].i == 0);
  REQUIRE(est.edges[0].j == 1);
  REQUIRE(est.edges[0].score > 0.0);
}

TEST_CASE("clean chain clusters are recovered exactly with plenty of samples") {
  // two chains: 0-1-2 and 3-4-5
  Eigen::MatrixXd theta = Eigen::MatrixXd::Identity(6, 6);
  const std::vector<std::pair<int, int>> chain{{0, 1}, {1, 2}, {3, 4}, {4, 5}};
  for (const auto& [a, b] : chain) theta(a, b) = theta(b, a) = 0.35;
  const Dataset data = sample_from_precision(theta, 6000, 777);

  // k' = 1 per node: end nodes have one neighbour, middle nodes report their
  // stronger one, and the union closes the chain. (A k' above a node's true
  // degree would pin a spurious small coefficient into its support.)
  SolverConfig cfg;
  cfg.k_prime = 1;
  cfg.eta = 0.4;
  cfg.max_iters = 80;
  const auto est =
      robust_ns(data, 1, RobustMeanSpec::plain_mean(), cfg, EdgeAggregation::edge_union);
  // oracle: supports of Sigma_(j)^{-1} sigma_(j) equal supports of theta_(j),
  // so every reported neighbour is a true chain edge and each edge has an
  // endpoint that reports it
  REQUIRE(edge_set(est) == std::set<std::pair<int, int>>(chain.begin(), chain.end()));
}

TEST_CASE("independent coordinates yield few intersection edges at k'=1") {
  // Frozen from the Monte-Carlo oracle (numpy pilot, 30 seeds): with
  // Theta = I, d=40, n=400, k'=1 every node claims exactly one neighbour;
  // mutual (intersection) pairs had median 10, p90 11.1, never <= 4, so the
  // frozen bound is <= 15 false edges in >= 90% of seeds.
  int ok = 0;
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    const Dataset data = sample_from_precision(Eigen::MatrixXd::Identity(40, 40), 400,
                                               derive_seed(2024, static_cast<std::uint64_t>(s)));
    SolverConfig cfg;
    cfg.k_prime = 1;
    cfg.eta = 0.2;
    cfg.max_iters = 40;
    const auto est = robust_ns(data, 1, RobustMeanSpec::plain_mean(), cfg,
                               EdgeAggregation::edge_intersection);
    for (const auto& nb : est.neighborhoods) REQUIRE(nb.size() <= 1);
    if (est.edges.size() <= 15) ++ok;
  }
  REQUIRE(ok >= 45);
}

TEST_CASE("intersection edges are a subset of union edges") {
  const Eigen::MatrixXd theta = random_sparse_precision(12, 0.25, 4242);
  const Dataset data = sample_from_precision(theta, 300, 515);
  SolverConfig cfg;
  cfg.k_prime = 3;
  cfg.eta = 0.3;
  cfg.max_iters = 40;
  const auto uni =
      robust_ns(data, 3, RobustMeanSpec::trimmed(0.05), cfg, EdgeAggregation::edge_union);
  const auto inter =
      robust_ns(data, 3, RobustMeanSpec::trimmed(0.05), cfg, EdgeAggregation::edge_intersection);
  const auto ue = edge_set(uni), ie = edge_set(inter);
  for (const auto& e : ie) REQUIRE(ue.count(e) == 1);
  REQUIRE(uni.neighborhoods == inter.neighborhoods);  // aggregation only affects edges
}

TEST_CASE("regression_path validates and matches single solves") {
  const Dataset data = sample_from_precision(Eigen::MatrixXd::Identity(8, 8), 100, 99);
  SolverConfig cfg;
  cfg.k_prime = 1;
  cfg.eta = 0.3;
  cfg.max_iters = 20;

  const auto path = regression_path(data, RobustMeanSpec::plain_mean(), cfg, {1});
  const auto single =
      robust_ns(data, 1, RobustMeanSpec::plain_mean(), cfg, EdgeAggregation::edge_union);
  REQUIRE(path.size() == 1);
  REQUIRE(edge_set(path[0]) == edge_set(single));

  REQUIRE_THROWS_AS(regression_path(data, RobustMeanSpec::plain_mean(), cfg, {0}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(regression_path(data, RobustMeanSpec::plain_mean(), cfg, {3, 1}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(regression_path(data, RobustMeanSpec::plain_mean(), cfg, {}),
                    std::invalid_argument);
}

TEST_CASE("node failures are tagged with the failing node") {
  const Dataset data = sample_from_precision(Eigen::MatrixXd::Identity(5, 5), 40, 1);
  SolverConfig cfg;
  cfg.k_prime = 1;
  cfg.eta = 1e9;  // divergence guard trips
  cfg.max_iters = 50;
  try {
    robust_ns(data, 1, RobustMeanSpec::plain_mean(), cfg);
    FAIL("expected robust_ns to throw");
  } catch (const std::runtime_error& e) {
    REQUIRE(std::string(e.what()).find("node") != std::string::npos);
  }
}

TEST_CASE("roc points and auc handle the boundary estimates") {
  GenSpec spec;
  spec.n = 60;
  spec.d = 40;
  spec.k = 1;
  spec.scheme = Scheme::ggm_cluster;
  spec.ggm_v = 0.5;
  spec.seed = 7;
  auto [data, truth] = gen_ggm_cluster(spec);
  REQUIRE_FALSE(truth.true_edges.empty());
  const double total = 40.0 * 39.0 / 2.0;
  const double pos = static_cast<double>(truth.true_edges.size());

  GraphEstimate exact;
  exact.neighborhoods.resize(40);
  for (const auto& [a, b] : truth.true_edges) exact.edges.push_back({a, b, 1.0});
  GraphEstimate empty;
  empty.neighborhoods.resize(40);
  GraphEstimate full;
  full.neighborhoods.resize(40);
  for (int i = 0; i < 40; ++i)
    for (int j = i + 1; j < 40; ++j) full.edges.push_back({i, j, 1.0});

  const auto pts = roc_points({empty, exact, full}, truth);
  REQUIRE(pts[0] == std::make_pair(0.0, 0.0));
  REQUIRE(pts[1] == std::make_pair(0.0, 1.0));
  REQUIRE(pts[2] == std::make_pair(1.0, 1.0));
  for (const auto& [fpr, tpr] : pts) {
    REQUIRE((fpr >= 0.0 && fpr <= 1.0));
    REQUIRE((tpr >= 0.0 && tpr <= 1.0));
  }
  const double a = auc(pts);
  REQUIRE(a == Catch::Approx(1.0));
  REQUIRE(auc({{0.0, 0.0}}) >= 0.0);
  REQUIRE(auc({{0.0, 0.0}}) <= 1.0);
  REQUIRE(auc({}) == Catch::Approx(0.5));  // chance diagonal only
  (void)total;
  (void)pos;

  GroundTruth no_edges;
  no_edges.theta = Eigen::MatrixXd::Identity(4, 4);
  REQUIRE_THROWS_AS(roc_points({exact}, no_edges), std::invalid_argument);
}

TEST_CASE("robust_ns rejects degenerate inputs") {
  const Dataset data = sample_from_precision(Eigen::MatrixXd::Identity(5, 5), 30, 2);
  SolverConfig cfg;
  cfg.eta = 0.3;
  cfg.max_iters = 5;
  REQUIRE_THROWS_AS(robust_ns(data, 5, RobustMeanSpec::plain_mean(), cfg),
                    std::invalid_argument);  // k' > d-1
  REQUIRE_THROWS_AS(robust_ns(data, 0, RobustMeanSpec::plain_mean(), cfg),
                    std::invalid_argument);
}

TEST_CASE("parallel node solves match the sequential result") {
  const Eigen::MatrixXd theta = random_sparse_precision(10, 0.3, 888);
  const Dataset data = sample_from_precision(theta, 200, 999);
  SolverConfig cfg;
  cfg.k_prime = 2;
  cfg.eta = 0.3;
  cfg.max_iters = 30;
  const auto seq =
      robust_ns(data, 2, RobustMeanSpec::trimmed(0.1), cfg, EdgeAggregation::edge_union, 1);
  const auto par =
      robust_ns(data, 2, RobustMeanSpec::trimmed(0.1), cfg, EdgeAggregation::edge_union, 4);
  REQUIRE(seq.neighborhoods == par.neighborhoods);
  REQUIRE(edge_set(seq) == edge_set(par));
  for (std::size_t t = 0; t < seq.edges.size(); ++t)
    REQUIRE(seq.edges[t].score == par.edges[t].score);
}
