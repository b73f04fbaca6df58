// Experiment harness around the robustht library: seeded replication sweeps
// over the synthetic generators, CSV/JSON emission for offline plotting.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "robustht/robustht.hpp"

namespace rht = robustht;
using ordered_json = nlohmann::ordered_json;

namespace {

struct EstimatorFlags {
  std::string estimator = "trimmed";
  double trim_alpha = 0.1;
  int mom_blocks = 0;  // 0 = auto

  rht::RobustMeanSpec spec() const {
    if (estimator == "mean") return rht::RobustMeanSpec::plain_mean();
    if (estimator == "trimmed") return rht::RobustMeanSpec::trimmed(trim_alpha);
    if (estimator == "mom")
      return mom_blocks > 0 ? rht::RobustMeanSpec::mom(mom_blocks)
                            : rht::RobustMeanSpec::mom_auto();
    throw std::invalid_argument("unknown estimator: " + estimator);
  }

  void attach(CLI::App* cmd, const std::string& default_estimator) {
    estimator = default_estimator;
    cmd->add_option("--estimator", estimator, "gradient aggregation: mean | trimmed | mom")
        ->check(CLI::IsMember({"mean", "trimmed", "mom"}));
    cmd->add_option("--trim-alpha", trim_alpha, "trim fraction per side (trimmed)");
    cmd->add_option("--mom-blocks", mom_blocks, "MOM block count, 0 = 4.5 ln d rule");
  }
};

struct SolverFlags {
  rht::SolverConfig config;
  bool auto_eta = false;
  bool timing = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--k-prime", config.k_prime, "hard-thresholding sparsity k'");
    cmd->add_option("--eta", config.eta, "step size");
    cmd->add_flag("--auto-eta", auto_eta,
                  "set eta = 1/lambda_max(X'X/n) estimated by 20 power iterations");
    cmd->add_option("--iters", config.max_iters, "iteration budget T");
    cmd->add_option("--tol", config.tol, "early-stop threshold on iterate change");
    cmd->add_option("--radius", config.projection_radius,
                    "projection ball radius (default unbounded)");
    cmd->add_flag("--sample-split", config.sample_split,
                  "split samples across iterations (theory mode)");
    cmd->add_flag("--timing", timing, "record real per-iteration wall time in the trace CSV");
  }
};

struct OutputFlags {
  std::string out_dir = ".";
  void attach(CLI::App* cmd) {
    cmd->add_option("--out-dir", out_dir, "output directory");
  }
  std::string path(const std::string& name) const {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / name).string();
  }
};

double quantile(std::vector<double> xs, double p) {
  std::sort(xs.begin(), xs.end());
  if (xs.empty()) return 0.0;
  const double pos = p * static_cast<double>(xs.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

const char* covariance_name(rht::Covariance c) {
  return c == rht::Covariance::identity ? "identity" : "toeplitz_exp";
}
const char* tail_name(rht::TailKind t) {
  switch (t) {
    case rht::TailKind::gaussian: return "gaussian";
    case rht::TailKind::lognormal: return "lognormal";
    case rht::TailKind::cauchy_noise: return "cauchy_noise";
  }
  return "?";
}
const char* scheme_name(rht::Scheme s) {
  switch (s) {
    case rht::Scheme::linear: return "linear";
    case rht::Scheme::cubic_misspecified: return "cubic_misspecified";
    case rht::Scheme::lda_logistic: return "lda_logistic";
    case rht::Scheme::ggm_cluster: return "ggm_cluster";
  }
  return "?";
}

ordered_json gen_spec_json(const rht::GenSpec& g) {
  ordered_json j;
  j["scheme"] = scheme_name(g.scheme);
  j["n"] = g.n;
  j["d"] = g.d;
  j["k"] = g.k;
  j["sigma"] = g.sigma;
  j["epsilon"] = g.epsilon;
  j["covariance"] = covariance_name(g.covariance);
  j["tail"] = tail_name(g.tail);
  if (g.scheme == rht::Scheme::ggm_cluster) j["v"] = g.ggm_v;
  j["seed"] = g.seed;
  return j;
}

ordered_json solver_json(const rht::SolverConfig& c, bool timing) {
  ordered_json j;
  j["k_prime"] = c.k_prime;
  j["eta"] = c.eta;
  j["max_iters"] = c.max_iters;
  j["projection_radius"] =
      std::isinf(c.projection_radius) ? ordered_json("unbounded") : ordered_json(c.projection_radius);
  j["sample_split"] = c.sample_split;
  j["tol"] = c.tol;
  j["seed"] = c.seed;
  j["timing"] = timing;
  return j;
}

ordered_json estimator_json(const EstimatorFlags& e) {
  ordered_json j;
  j["estimator"] = e.estimator;
  if (e.estimator == "trimmed") j["trim_alpha"] = e.trim_alpha;
  if (e.estimator == "mom") j["mom_blocks"] = e.mom_blocks == 0 ? ordered_json("auto") : ordered_json(e.mom_blocks);
  return j;
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

// ---- shared replicated regression driver (regress / logistic / heavy) ----

struct RepResult {
  rht::SolveResult solve;
  double final_error = 0.0;
  double huber_delta = 0.0;
  double eta_used = 0.0;
};

struct RegressionExperiment {
  rht::GenSpec gen;
  EstimatorFlags est;
  SolverFlags solver;
  std::string loss = "squared";  // squared | huber | logistic
  double huber_delta = 0.0;      // 0 = 1.345 * MAD(y)
  int reps = 1;

  RepResult run_one(std::uint64_t child_seed) const {
    rht::GenSpec g = gen;
    g.seed = child_seed;
    auto [data, truth] = rht::generate(g);

    rht::LossSpec loss_spec = rht::LossSpec::squared();
    RepResult out;
    if (loss == "huber") {
      out.huber_delta = huber_delta > 0.0 ? huber_delta : rht::default_huber_delta(data.y);
      loss_spec = rht::LossSpec::huber(out.huber_delta);
    } else if (loss == "logistic") {
      loss_spec = rht::LossSpec::logistic();
    }

    rht::SolverConfig cfg = solver.config;
    cfg.seed = child_seed;
    if (solver.auto_eta) cfg.eta = rht::suggest_eta(data);
    out.eta_used = cfg.eta;
    out.solve = rht::solve(data, loss_spec, est.spec(), cfg, &truth.beta_star);
    out.final_error = (out.solve.beta_hat - truth.beta_star).norm();
    return out;
  }
};

int run_regression_family(const std::string& name, const RegressionExperiment& exp,
                          const OutputFlags& out, const std::string& trace_name,
                          const std::string& summary_name) {
  if (exp.reps < 1) throw std::invalid_argument("--reps must be >= 1");
  exp.solver.config.validate(exp.gen.d);

  std::vector<RepResult> results(static_cast<std::size_t>(exp.reps));
  const int threads = rht::worker_pool_size(exp.reps);
  rht::run_indexed(exp.reps, threads, [&](int r) {
    results[static_cast<std::size_t>(r)] =
        exp.run_one(rht::derive_seed(exp.gen.seed, static_cast<std::uint64_t>(r)));
  });

  const std::string trace_path = out.path(trace_name);
  rht::csv::Writer trace(trace_path);
  trace.row({"replication", "iter", "l2_error", "objective", "wall_ms"});
  for (int r = 0; r < exp.reps; ++r)
    for (const auto& rec : results[static_cast<std::size_t>(r)].solve.trace.records)
      trace.row({std::to_string(r), std::to_string(rec.iter),
                 rht::csv::format_double(rec.l2_error), rht::csv::format_double(rec.objective),
                 rht::csv::format_double(exp.solver.timing ? rec.wall_ms : 0.0)});

  std::vector<double> finals;
  int early = 0;
  for (const auto& r : results) {
    finals.push_back(r.final_error);
    early += r.solve.stopped_early ? 1 : 0;
  }

  ordered_json j;
  j["command"] = name;
  j["generator"] = gen_spec_json(exp.gen);
  j["loss"] = exp.loss;
  if (exp.loss == "huber") {
    std::vector<double> deltas;
    for (const auto& r : results) deltas.push_back(r.huber_delta);
    j["huber_delta_used"] = deltas;
  }
  j["aggregation"] = estimator_json(exp.est);
  j["solver"] = solver_json(exp.solver.config, exp.solver.timing);
  j["eta_used"] = results.front().eta_used;
  j["replications"] = exp.reps;
  j["threads"] = threads;
  j["final_errors"] = finals;
  j["final_error_min"] = quantile(finals, 0.0);
  j["final_error_q25"] = quantile(finals, 0.25);
  j["final_error_median"] = quantile(finals, 0.5);
  j["final_error_q75"] = quantile(finals, 0.75);
  j["final_error_max"] = quantile(finals, 1.0);
  j["stopped_early_count"] = early;
  j["trace_csv"] = trace_name;
  write_json(out.path(summary_name), j);
  std::cout << name << ": median final error " << rht::csv::format_double(median(finals))
            << " over " << exp.reps << " replication(s)\n";
  return 0;
}

// ---- graphical ----

struct GraphicalCmd {
  rht::GenSpec gen;
  EstimatorFlags est;
  SolverFlags solver;
  OutputFlags out;
  std::vector<int> k_path{1, 2, 3, 4, 6, 8};
  std::string aggregation = "union";
  std::string input_csv;
  bool compare_vanilla = false;
  int reps = 1;

  int run() {
    if (reps < 1) throw std::invalid_argument("--reps must be >= 1");
    rht::EdgeAggregation agg = aggregation == "intersection"
                                   ? rht::EdgeAggregation::edge_intersection
                                   : rht::EdgeAggregation::edge_union;
    std::sort(k_path.begin(), k_path.end());

    const bool synthetic = input_csv.empty();
    std::vector<double> auc_robust, auc_vanilla;
    std::vector<std::pair<double, double>> first_points;
    rht::GraphEstimate first_edges;
    const int threads = rht::worker_pool_size(reps);
    std::vector<int> failed(static_cast<std::size_t>(reps), 0);

    if (!synthetic) {
      // user data: single pass, no ROC (no ground truth)
      rht::Dataset data = rht::csv::read_dataset(input_csv);
      data.kind = rht::DatasetKind::unlabeled;
      data.y.resize(0);
      rht::SolverConfig cfg = solver.config;
      if (solver.auto_eta) cfg.eta = rht::suggest_eta(data);
      first_edges = rht::robust_ns(data, k_path.back(), est.spec(), cfg, agg,
                                   rht::worker_pool_size(static_cast<int>(data.dim())));
    } else {
      std::vector<std::vector<double>> rep_auc_r(static_cast<std::size_t>(reps)),
          rep_auc_v(static_cast<std::size_t>(reps));
      std::vector<rht::GraphEstimate> rep_first(static_cast<std::size_t>(reps));
      std::vector<std::vector<std::pair<double, double>>> rep_pts(static_cast<std::size_t>(reps));
      rht::run_indexed(reps, threads, [&](int r) {
        rht::GenSpec g = gen;
        g.scheme = rht::Scheme::ggm_cluster;
        g.seed = rht::derive_seed(gen.seed, static_cast<std::uint64_t>(r));
        auto [data, truth] = rht::gen_ggm_cluster(g);
        rht::SolverConfig cfg = solver.config;
        cfg.seed = g.seed;
        if (solver.auto_eta) cfg.eta = rht::suggest_eta(data);
        const int node_threads = reps == 1 ? rht::worker_pool_size(static_cast<int>(data.dim())) : 1;
        const auto path = rht::regression_path(data, est.spec(), cfg, k_path, agg, node_threads);
        const auto pts = rht::roc_points(path, truth);
        rep_auc_r[static_cast<std::size_t>(r)].push_back(rht::auc(pts));
        rep_pts[static_cast<std::size_t>(r)] = pts;
        rep_first[static_cast<std::size_t>(r)] = path.back();
        if (compare_vanilla) {
          const auto vpath = rht::regression_path(data, rht::RobustMeanSpec::plain_mean(), cfg,
                                                  k_path, agg, node_threads);
          rep_auc_v[static_cast<std::size_t>(r)].push_back(rht::auc(rht::roc_points(vpath, truth)));
        }
      });
      for (int r = 0; r < reps; ++r) {
        auc_robust.push_back(rep_auc_r[static_cast<std::size_t>(r)].front());
        if (compare_vanilla) auc_vanilla.push_back(rep_auc_v[static_cast<std::size_t>(r)].front());
      }
      first_points = rep_pts.front();
      first_edges = rep_first.front();
    }

    const std::string edges_path = out.path("edges.csv");
    {
      rht::csv::Writer w(edges_path);
      w.row({"node_i", "node_j", "score"});
      for (const auto& e : first_edges.edges)
        w.row({std::to_string(e.i), std::to_string(e.j), rht::csv::format_double(e.score)});
    }
    std::string roc_path;
    if (synthetic) {
      roc_path = out.path("roc.csv");
      rht::csv::Writer w(roc_path);
      w.row({"k_prime_or_threshold", "fpr", "tpr"});
      for (std::size_t t = 0; t < first_points.size(); ++t)
        w.row({std::to_string(k_path[t]), rht::csv::format_double(first_points[t].first),
               rht::csv::format_double(first_points[t].second)});
    }

    ordered_json j;
    j["command"] = "graphical";
    if (synthetic) {
      rht::GenSpec g = gen;
      g.scheme = rht::Scheme::ggm_cluster;
      j["generator"] = gen_spec_json(g);
    } else {
      j["input_csv"] = input_csv;
    }
    j["aggregation_rule"] = aggregation;
    j["k_path"] = k_path;
    j["estimator"] = estimator_json(est);
    j["solver"] = solver_json(solver.config, solver.timing);
    j["auto_eta"] = solver.auto_eta;
    j["replications"] = reps;
    j["threads"] = threads;
    if (synthetic) {
      j["auc_robust"] = auc_robust;
      j["auc_robust_median"] = median(auc_robust);
      if (compare_vanilla) {
        j["auc_vanilla"] = auc_vanilla;
        j["auc_vanilla_median"] = median(auc_vanilla);
      }
      j["roc_csv"] = "roc.csv";
    }
    j["edges_csv"] = "edges.csv";
    write_json(out.path("summary.json"), j);
    if (synthetic)
      std::cout << "graphical: median AUC " << rht::csv::format_double(median(auc_robust))
                << (compare_vanilla
                        ? " (vanilla " + rht::csv::format_double(median(auc_vanilla)) + ")"
                        : "")
                << "\n";
    else
      std::cout << "graphical: " << first_edges.edges.size() << " edges\n";
    return 0;
  }
};

// ---- bench ----

struct BenchCmd {
  rht::GenSpec gen;
  EstimatorFlags est;
  SolverFlags solver;
  OutputFlags out;
  std::vector<int> n_list{300, 1200};
  std::vector<std::string> methods{"rht", "vanilla", "lasso"};
  int reps = 5;
  int lasso_grid = 8;
  int lasso_iters = 500;
  double lasso_tol = 1e-5;

  double lasso_best_error(const rht::Dataset& data, const rht::ParamVector& beta_star,
                          std::uint64_t seed) const {
    const double lam_max =
        (data.X.transpose() * data.y).cwiseAbs().maxCoeff() / static_cast<double>(data.n());
    double best = std::numeric_limits<double>::infinity();
    for (int g = 0; g < lasso_grid; ++g) {
      const double frac = lasso_grid == 1 ? 0.0
                                          : static_cast<double>(g) / (lasso_grid - 1);
      rht::LassoConfig cfg;
      cfg.lambda = lam_max * std::pow(1e-3, frac);
      cfg.max_iters = lasso_iters;
      cfg.tol = lasso_tol;
      cfg.seed = seed;
      const auto fit = rht::lasso(data, cfg);
      best = std::min(best, (fit.beta - beta_star).norm());
    }
    return best;
  }

  int run() {
    if (reps < 1) throw std::invalid_argument("--reps must be >= 1");
    struct Cell { std::vector<double> errors; };
    std::map<std::pair<std::string, int>, Cell> table;

    for (int n : n_list) {
      std::vector<std::map<std::string, double>> rep_rows(static_cast<std::size_t>(reps));
      const int threads = rht::worker_pool_size(reps);
      rht::run_indexed(reps, threads, [&](int r) {
        rht::GenSpec g = gen;
        g.n = n;
        g.seed = rht::derive_seed(gen.seed ^ static_cast<std::uint64_t>(n),
                                  static_cast<std::uint64_t>(r));
        auto [data, truth] = rht::generate(g);
        rht::SolverConfig cfg = solver.config;
        cfg.seed = g.seed;
        if (solver.auto_eta) cfg.eta = rht::suggest_eta(data);
        for (const auto& m : methods) {
          if (m == "rht") {
            const auto res = rht::solve(data, rht::LossSpec::squared(), est.spec(), cfg);
            rep_rows[static_cast<std::size_t>(r)][m] = (res.beta_hat - truth.beta_star).norm();
          } else if (m == "vanilla") {
            const auto res = rht::vanilla_iht(data, rht::LossSpec::squared(), cfg);
            rep_rows[static_cast<std::size_t>(r)][m] = (res.beta_hat - truth.beta_star).norm();
          } else if (m == "lasso") {
            rep_rows[static_cast<std::size_t>(r)][m] =
                lasso_best_error(data, truth.beta_star, g.seed);
          } else {
            throw std::invalid_argument("unknown method: " + m);
          }
        }
      });
      for (const auto& row : rep_rows)
        for (const auto& [m, err] : row) table[{m, n}].errors.push_back(err);
    }

    const std::string bench_path = out.path("bench.csv");
    rht::csv::Writer w(bench_path);
    w.row({"method", "n", "median_final_error"});
    ordered_json cells = ordered_json::array();
    for (const auto& m : methods)
      for (int n : n_list) {
        const auto& cell = table[{m, n}];
        w.row({m, std::to_string(n), rht::csv::format_double(median(cell.errors))});
        ordered_json c;
        c["method"] = m;
        c["n"] = n;
        c["errors"] = cell.errors;
        c["median"] = median(cell.errors);
        cells.push_back(c);
      }

    ordered_json j;
    j["command"] = "bench";
    j["generator"] = gen_spec_json(gen);
    j["methods"] = methods;
    j["n_list"] = n_list;
    j["aggregation"] = estimator_json(est);
    j["solver"] = solver_json(solver.config, solver.timing);
    j["replications"] = reps;
    j["lasso_grid"] = lasso_grid;
    j["cells"] = cells;
    j["bench_csv"] = "bench.csv";
    write_json(out.path("summary.json"), j);
    std::cout << "bench: wrote " << bench_path << "\n";
    return 0;
  }
};

// ---- gen ----

int run_gen(const rht::GenSpec& spec, const OutputFlags& out) {
  auto [data, truth] = rht::generate(spec);
  const std::string data_path = out.path("data.csv");
  rht::csv::write_dataset(data_path, data);

  ordered_json j;
  j["command"] = "gen";
  j["spec"] = gen_spec_json(spec);
  ordered_json beta = ordered_json::object();
  for (int i : truth.support) beta[std::to_string(i)] = truth.beta_star[i];
  if (truth.beta_star.size() > 0) j["beta_star"] = beta;
  j["support"] = truth.support;
  ordered_json corrupted = ordered_json::array();
  for (std::size_t i = 0; i < truth.clean_mask.size(); ++i)
    if (!truth.clean_mask[i]) corrupted.push_back(i);
  j["corrupted_rows"] = corrupted;
  j["rows_emitted"] = data.n();
  if (spec.scheme == rht::Scheme::ggm_cluster) {
    ordered_json edges = ordered_json::array();
    for (const auto& [a, b] : truth.true_edges) edges.push_back(ordered_json::array({a, b}));
    j["theta_edges"] = edges;
  }
  j["data_csv"] = "data.csv";
  write_json(out.path("truth.json"), j);
  std::cout << "gen: wrote " << data_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust Hard Thresholding experiment harness"};
  app.require_subcommand(1);

  // regress
  RegressionExperiment regress;
  regress.gen = {300, 1000, 5, 0.0, 0.0, rht::Covariance::toeplitz_exp,
                 rht::TailKind::gaussian, rht::Scheme::linear, 0.3, 0};
  OutputFlags regress_out;
  bool regress_cubic = false;
  std::string regress_noise = "gaussian";
  std::string regress_cov = "toeplitz";
  auto* regress_cmd = app.add_subcommand("regress", "sparse linear regression under corruption");
  regress_cmd->add_option("--n", regress.gen.n, "sample count");
  regress_cmd->add_option("--d", regress.gen.d, "dimension");
  regress_cmd->add_option("--k", regress.gen.k, "true sparsity");
  regress_cmd->add_option("--sigma", regress.gen.sigma, "noise std");
  regress_cmd->add_option("--eps", regress.gen.epsilon, "corruption fraction");
  regress_cmd->add_option("--covariance", regress_cov, "toeplitz | identity")
      ->check(CLI::IsMember({"toeplitz", "identity"}));
  regress_cmd->add_option("--noise", regress_noise, "gaussian | cauchy")
      ->check(CLI::IsMember({"gaussian", "cauchy"}));
  regress_cmd->add_flag("--cubic", regress_cubic, "cubic misspecified responses");
  regress_cmd->add_option("--loss", regress.loss, "squared | huber")
      ->check(CLI::IsMember({"squared", "huber"}));
  regress_cmd->add_option("--huber-delta", regress.huber_delta,
                          "huber threshold, 0 = 1.345 * MAD(y)");
  regress_cmd->add_option("--seed", regress.gen.seed, "base seed");
  regress_cmd->add_option("--reps", regress.reps, "replication count");
  regress.est.attach(regress_cmd, "trimmed");
  regress.solver.attach(regress_cmd);
  regress_out.attach(regress_cmd);

  // logistic
  RegressionExperiment logistic;
  logistic.gen = {300, 1000, 5, 0.0, 0.0, rht::Covariance::identity,
                  rht::TailKind::gaussian, rht::Scheme::lda_logistic, 0.3, 0};
  logistic.loss = "logistic";
  OutputFlags logistic_out;
  auto* logistic_cmd = app.add_subcommand("logistic", "sparse LDA / logistic regression");
  logistic_cmd->add_option("--n", logistic.gen.n, "sample count");
  logistic_cmd->add_option("--d", logistic.gen.d, "dimension");
  logistic_cmd->add_option("--k", logistic.gen.k, "true sparsity");
  logistic_cmd->add_option("--eps", logistic.gen.epsilon, "corruption fraction");
  logistic_cmd->add_option("--seed", logistic.gen.seed, "base seed");
  logistic_cmd->add_option("--reps", logistic.reps, "replication count");
  logistic.est.attach(logistic_cmd, "trimmed");
  logistic.solver.attach(logistic_cmd);
  logistic_out.attach(logistic_cmd);

  // heavy
  RegressionExperiment heavy;
  heavy.gen = {300, 1000, 5, 0.5, 0.0, rht::Covariance::toeplitz_exp,
               rht::TailKind::lognormal, rht::Scheme::linear, 0.3, 0};
  OutputFlags heavy_out;
  std::string heavy_cov = "toeplitz";
  auto* heavy_cmd = app.add_subcommand("heavy", "heavy-tailed (log-normal) regression");
  heavy_cmd->add_option("--n", heavy.gen.n, "sample count");
  heavy_cmd->add_option("--d", heavy.gen.d, "dimension");
  heavy_cmd->add_option("--k", heavy.gen.k, "true sparsity");
  heavy_cmd->add_option("--sigma", heavy.gen.sigma, "noise std");
  heavy_cmd->add_option("--eps", heavy.gen.epsilon, "must stay 0 for log-normal tails");
  heavy_cmd->add_option("--covariance", heavy_cov, "toeplitz | identity")
      ->check(CLI::IsMember({"toeplitz", "identity"}));
  heavy_cmd->add_option("--seed", heavy.gen.seed, "base seed");
  heavy_cmd->add_option("--reps", heavy.reps, "replication count");
  heavy.est.attach(heavy_cmd, "mom");
  heavy.solver.attach(heavy_cmd);
  heavy_out.attach(heavy_cmd);

  // graphical
  GraphicalCmd graphical;
  graphical.gen = {100, 100, 5, 0.0, 0.1, rht::Covariance::identity,
                   rht::TailKind::gaussian, rht::Scheme::ggm_cluster, 0.3, 0};
  graphical.solver.config.max_iters = 30;
  graphical.solver.auto_eta = true;
  auto* graphical_cmd = app.add_subcommand("graphical", "robust neighborhood selection");
  graphical_cmd->add_option("--n", graphical.gen.n, "authentic sample count");
  graphical_cmd->add_option("--d", graphical.gen.d, "node count");
  graphical_cmd->add_option("--v", graphical.gen.ggm_v, "off-diagonal precision value");
  graphical_cmd->add_option("--eps", graphical.gen.epsilon, "added outlier fraction");
  graphical_cmd->add_option("--seed", graphical.gen.seed, "base seed");
  graphical_cmd->add_option("--reps", graphical.reps, "replication count");
  graphical_cmd->add_option("--k-path", graphical.k_path, "sparsity levels for the path");
  graphical_cmd->add_option("--agg", graphical.aggregation, "union | intersection")
      ->check(CLI::IsMember({"union", "intersection"}));
  graphical_cmd->add_option("--input", graphical.input_csv,
                            "CSV dataset instead of the synthetic generator");
  graphical_cmd->add_flag("--compare-vanilla", graphical.compare_vanilla,
                          "also run plain-mean NS and report its AUC");
  graphical.est.attach(graphical_cmd, "trimmed");
  graphical.solver.attach(graphical_cmd);
  graphical.out.attach(graphical_cmd);

  // bench
  BenchCmd bench;
  bench.gen = {300, 1000, 5, 0.5, 0.0, rht::Covariance::toeplitz_exp,
               rht::TailKind::lognormal, rht::Scheme::linear, 0.3, 0};
  std::string bench_tail = "lognormal";
  std::string bench_cov = "toeplitz";
  auto* bench_cmd = app.add_subcommand("bench", "method comparison across sample sizes");
  bench_cmd->add_option("--d", bench.gen.d, "dimension");
  bench_cmd->add_option("--k", bench.gen.k, "true sparsity");
  bench_cmd->add_option("--sigma", bench.gen.sigma, "noise std");
  bench_cmd->add_option("--eps", bench.gen.epsilon, "corruption fraction");
  bench_cmd->add_option("--tail", bench_tail, "gaussian | lognormal")
      ->check(CLI::IsMember({"gaussian", "lognormal"}));
  bench_cmd->add_option("--covariance", bench_cov, "toeplitz | identity")
      ->check(CLI::IsMember({"toeplitz", "identity"}));
  bench_cmd->add_option("--n-list", bench.n_list, "sample sizes");
  bench_cmd->add_option("--methods", bench.methods, "subset of rht vanilla lasso");
  bench_cmd->add_option("--seed", bench.gen.seed, "base seed");
  bench_cmd->add_option("--reps", bench.reps, "replications per cell");
  bench_cmd->add_option("--lasso-grid", bench.lasso_grid, "lambda grid size");
  bench_cmd->add_option("--lasso-iters", bench.lasso_iters, "lasso iteration budget");
  bench_cmd->add_option("--lasso-tol", bench.lasso_tol, "lasso optimality tolerance");
  bench.est.attach(bench_cmd, "mom");
  bench.solver.attach(bench_cmd);
  bench.out.attach(bench_cmd);

  // gen
  rht::GenSpec gen_spec{300, 1000, 5, 0.0, 0.1, rht::Covariance::toeplitz_exp,
                        rht::TailKind::gaussian, rht::Scheme::linear, 0.3, 0};
  OutputFlags gen_out;
  std::string gen_scheme = "linear";
  std::string gen_cov = "toeplitz";
  std::string gen_tail = "gaussian";
  auto* gen_cmd = app.add_subcommand("gen", "emit a dataset CSV plus ground-truth JSON");
  gen_cmd->add_option("--scheme", gen_scheme, "linear | cubic | lda | ggm")
      ->check(CLI::IsMember({"linear", "cubic", "lda", "ggm"}));
  gen_cmd->add_option("--n", gen_spec.n, "sample count");
  gen_cmd->add_option("--d", gen_spec.d, "dimension");
  gen_cmd->add_option("--k", gen_spec.k, "true sparsity");
  gen_cmd->add_option("--sigma", gen_spec.sigma, "noise std");
  gen_cmd->add_option("--eps", gen_spec.epsilon, "corruption fraction");
  gen_cmd->add_option("--v", gen_spec.ggm_v, "ggm off-diagonal value");
  gen_cmd->add_option("--covariance", gen_cov, "toeplitz | identity")
      ->check(CLI::IsMember({"toeplitz", "identity"}));
  gen_cmd->add_option("--tail", gen_tail, "gaussian | lognormal | cauchy")
      ->check(CLI::IsMember({"gaussian", "lognormal", "cauchy"}));
  gen_cmd->add_option("--seed", gen_spec.seed, "seed");
  gen_out.attach(gen_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (regress_cmd->parsed()) {
      regress.gen.covariance = regress_cov == "identity" ? rht::Covariance::identity
                                                         : rht::Covariance::toeplitz_exp;
      if (regress_noise == "cauchy") regress.gen.tail = rht::TailKind::cauchy_noise;
      if (regress_cubic) regress.gen.scheme = rht::Scheme::cubic_misspecified;
      return run_regression_family("regress", regress, regress_out, "trace.csv", "summary.json");
    }
    if (logistic_cmd->parsed())
      return run_regression_family("logistic", logistic, logistic_out, "trace.csv",
                                   "summary.json");
    if (heavy_cmd->parsed()) {
      heavy.gen.covariance = heavy_cov == "identity" ? rht::Covariance::identity
                                                     : rht::Covariance::toeplitz_exp;
      return run_regression_family("heavy", heavy, heavy_out, "trace.csv", "summary.json");
    }
    if (graphical_cmd->parsed()) return graphical.run();
    if (bench_cmd->parsed()) {
      bench.gen.tail = bench_tail == "gaussian" ? rht::TailKind::gaussian
                                                : rht::TailKind::lognormal;
      bench.gen.covariance = bench_cov == "identity" ? rht::Covariance::identity
                                                     : rht::Covariance::toeplitz_exp;
      return bench.run();
    }
    if (gen_cmd->parsed()) {
      if (gen_scheme == "cubic") gen_spec.scheme = rht::Scheme::cubic_misspecified;
      else if (gen_scheme == "lda") gen_spec.scheme = rht::Scheme::lda_logistic;
      else if (gen_scheme == "ggm") gen_spec.scheme = rht::Scheme::ggm_cluster;
      gen_spec.covariance = gen_cov == "identity" ? rht::Covariance::identity
                                                  : rht::Covariance::toeplitz_exp;
      if (gen_tail == "lognormal") gen_spec.tail = rht::TailKind::lognormal;
      else if (gen_tail == "cauchy") gen_spec.tail = rht::TailKind::cauchy_noise;
      return run_gen(gen_spec, gen_out);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
