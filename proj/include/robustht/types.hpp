#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace robustht {

using ParamVector = Eigen::VectorXd;

enum class DatasetKind { regression, classification, unlabeled };

// Rows of X are samples. y is empty iff kind == unlabeled.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  DatasetKind kind = DatasetKind::regression;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }

  void validate() const {
    if (kind == DatasetKind::unlabeled) {
      if (y.size() != 0)
        throw std::invalid_argument("unlabeled dataset must not carry responses");
    } else {
      if (y.size() != X.rows())
        throw std::invalid_argument("response length " + std::to_string(y.size()) +
                                    " does not match row count " + std::to_string(X.rows()));
    }
    if (kind == DatasetKind::classification) {
      for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y[i] != 1.0 && y[i] != -1.0)
          throw std::invalid_argument("classification labels must be exactly +/-1");
    }
    if (!X.allFinite() || !y.allFinite())
      throw std::invalid_argument("dataset contains non-finite entries");
  }
};

inline constexpr double kUnboundedRadius = std::numeric_limits<double>::infinity();

struct SolverConfig {
  int k_prime = 1;                              // hard-thresholding sparsity k'
  double eta = 0.5;                             // step size
  int max_iters = 100;
  double projection_radius = kUnboundedRadius;  // l2 ball; infinity = no projection
  bool sample_split = false;                    // fresh floor(n/T) samples per iteration
  double tol = 0.0;                             // stop once ||b_{t+1}-b_t||_2 <= tol
  std::uint64_t seed = 0;

  void validate(Eigen::Index d) const {
    if (k_prime < 1) throw std::invalid_argument("k_prime must be >= 1");
    if (d >= 0 && k_prime > d)
      throw std::invalid_argument("k_prime exceeds dimension " + std::to_string(d));
    if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (!(projection_radius > 0.0)) throw std::invalid_argument("projection_radius must be positive");
    if (tol < 0.0) throw std::invalid_argument("tol must be non-negative");
  }
};

struct TraceRecord {
  int iter = 0;
  double l2_error = std::numeric_limits<double>::quiet_NaN();  // NaN when no reference given
  double objective = 0.0;
  double wall_ms = 0.0;
};

// One record per executed iteration, in order.
struct IterateTrace {
  std::vector<TraceRecord> records;
};

}  // namespace robustht
