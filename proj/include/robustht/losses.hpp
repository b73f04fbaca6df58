#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "robustht/types.hpp"

namespace robustht {

struct LossSpec {
  enum class Kind { squared, logistic, huber };
  Kind kind = Kind::squared;
  double huber_delta = 1.0;

  static LossSpec squared() { return {Kind::squared, 0.0}; }
  static LossSpec logistic() { return {Kind::logistic, 0.0}; }
  static LossSpec huber(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("huber delta must be positive");
    return {Kind::huber, delta};
  }
};

namespace detail {

inline void check_dims(const ParamVector& x, const ParamVector& beta) {
  if (x.size() != beta.size())
    throw std::invalid_argument("sample/parameter dimension mismatch");
}

// 1/(1+exp(t)) without overflow for large |t|
inline double inv_one_plus_exp(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

inline double log1p_exp(double t) {
  // log(1 + e^t)
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

}  // namespace detail

// g = x (x'b - y), the gradient of (1/2)(x'b - y)^2
inline ParamVector grad_squared(const ParamVector& x, double y, const ParamVector& beta) {
  detail::check_dims(x, beta);
  return x * (x.dot(beta) - y);
}

// g = -y x / (1 + exp(y x'b)); every coordinate satisfies |g_j| <= |x_j|
inline ParamVector grad_logistic(const ParamVector& x, double y, const ParamVector& beta) {
  detail::check_dims(x, beta);
  if (y != 1.0 && y != -1.0) throw std::invalid_argument("logistic label must be +/-1");
  return x * (-y * detail::inv_one_plus_exp(y * x.dot(beta)));
}

// Huber gradient: x r for |r| <= delta, x delta sign(r) beyond the kink
inline ParamVector grad_huber(const ParamVector& x, double y, const ParamVector& beta,
                              double delta) {
  detail::check_dims(x, beta);
  if (!(delta > 0.0)) throw std::invalid_argument("huber delta must be positive");
  const double r = x.dot(beta) - y;
  const double c = std::clamp(r, -delta, delta);
  return x * c;
}

inline ParamVector sample_grad(const LossSpec& loss, const ParamVector& x, double y,
                               const ParamVector& beta) {
  switch (loss.kind) {
    case LossSpec::Kind::squared: return grad_squared(x, y, beta);
    case LossSpec::Kind::logistic: return grad_logistic(x, y, beta);
    case LossSpec::Kind::huber: return grad_huber(x, y, beta, loss.huber_delta);
  }
  throw std::logic_error("unreachable");
}

// Per-sample loss whose gradient is sample_grad: (1/2)r^2, log(1+e^{-y x'b}),
// or the Huber function with (1/2)r^2 inner branch.
inline double sample_loss(const LossSpec& loss, const ParamVector& x, double y,
                          const ParamVector& beta) {
  detail::check_dims(x, beta);
  const double m = x.dot(beta);
  switch (loss.kind) {
    case LossSpec::Kind::squared: {
      const double r = m - y;
      return 0.5 * r * r;
    }
    case LossSpec::Kind::logistic:
      return detail::log1p_exp(-y * m);
    case LossSpec::Kind::huber: {
      const double r = std::abs(m - y);
      const double d = loss.huber_delta;
      return r <= d ? 0.5 * r * r : d * r - 0.5 * d * d;
    }
  }
  throw std::logic_error("unreachable");
}

// Median absolute deviation of the responses around their median: the
// residual scale at the zero initializer.
inline double mad_scale(const Eigen::VectorXd& y) {
  if (y.size() == 0) throw std::invalid_argument("mad_scale: empty vector");
  std::vector<double> v(y.data(), y.data() + y.size());
  const auto mid = v.begin() + v.size() / 2;
  std::nth_element(v.begin(), mid, v.end());
  double med = *mid;
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), mid - 1, mid);
    med = 0.5 * (med + *(mid - 1));
  }
  for (double& x : v) x = std::abs(x - med);
  const auto mid2 = v.begin() + v.size() / 2;
  std::nth_element(v.begin(), mid2, v.end());
  double mad = *mid2;
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), mid2 - 1, mid2);
    mad = 0.5 * (mad + *(mid2 - 1));
  }
  return mad;
}

// Default Huber threshold: 1.345 times the MAD residual scale.
inline double default_huber_delta(const Eigen::VectorXd& y) {
  const double s = mad_scale(y);
  return 1.345 * (s > 0.0 ? s : 1.0);
}

// n x d matrix of per-sample gradients at beta.
inline Eigen::MatrixXd gradient_matrix(const Dataset& data, const ParamVector& beta,
                                       const LossSpec& loss) {
  if (data.dim() != beta.size())
    throw std::invalid_argument("dataset/parameter dimension mismatch");
  if (data.y.size() != data.n())
    throw std::invalid_argument("loss gradients need a labeled dataset");
  Eigen::VectorXd w(data.n());
  switch (loss.kind) {
    case LossSpec::Kind::squared:
      w = data.X * beta - data.y;
      break;
    case LossSpec::Kind::huber: {
      const double d = loss.huber_delta;
      w = (data.X * beta - data.y).cwiseMax(-d).cwiseMin(d);
      break;
    }
    case LossSpec::Kind::logistic: {
      const Eigen::VectorXd t = data.y.cwiseProduct(data.X * beta);
      for (Eigen::Index i = 0; i < t.size(); ++i)
        w[i] = -data.y[i] * detail::inv_one_plus_exp(t[i]);
      break;
    }
  }
  return data.X.array().colwise() * w.array();
}

// Experiment objective tracked in traces. Squared uses the residual sum of
// squares convention sum (y - x'b)^2; huber and logistic sum the per-sample
// losses.
inline double objective(const Dataset& data, const ParamVector& beta, const LossSpec& loss) {
  if (data.dim() != beta.size())
    throw std::invalid_argument("dataset/parameter dimension mismatch");
  if (data.y.size() != data.n())
    throw std::invalid_argument("objective needs a labeled dataset");
  switch (loss.kind) {
    case LossSpec::Kind::squared:
      return (data.X * beta - data.y).squaredNorm();
    case LossSpec::Kind::huber: {
      const Eigen::VectorXd r = data.X * beta - data.y;
      const double d = loss.huber_delta;
      double s = 0.0;
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double a = std::abs(r[i]);
        s += a <= d ? 0.5 * a * a : d * a - 0.5 * d * d;
      }
      return s;
    }
    case LossSpec::Kind::logistic: {
      const Eigen::VectorXd t = data.y.cwiseProduct(data.X * beta);
      double s = 0.0;
      for (Eigen::Index i = 0; i < t.size(); ++i) s += detail::log1p_exp(-t[i]);
      return s;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace robustht
