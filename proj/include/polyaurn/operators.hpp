#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyaurn/functions.hpp"
#include "polyaurn/report.hpp"
#include "polyaurn/scalar.hpp"
#include "polyaurn/urn.hpp"

// The operator R_n(f,x) = E f(X_n / n), where X_n follows the urn law with
// a = x, b = 1-x and the minimal replacement increment. It reproduces
// constants and the identity, interpolates f at the endpoints, and maps
// monotone functions to monotone functions — the checks in this header make
// those statements executable. The classical Bernstein operator (increment
// c = 0) is provided for comparison.
namespace polyaurn {

/// Expectation of f(X/n) against a precomputed law (shared across
/// functions when sweeping a family at one x).
template <Scalar T>
T rn_eval(const Pmf<T>& law, const SampledFunction<T>& f) {
  const int n = law.params.n;
  T sum(0);
  for (int k = 0; k <= n; ++k) {
    sum += f(ratio<T>(k, n)) * law.probs[static_cast<size_t>(k)];
  }
  return sum;
}

/// R_n(f,x) = sum_k f(k/n) p_{n,k}(x). n = 1 is outside the
/// parameterization (the increment is undefined) and is rejected.
template <Scalar T>
T rn_eval(int n, const SampledFunction<T>& f, const T& x) {
  if (n < 2) throw std::invalid_argument("rn_eval: n must be >= 2");
  if (x < T(0) || x > T(1)) throw std::invalid_argument("rn_eval: x outside [0,1]");
  return rn_eval(pmf_vector(n, x), f);
}

/// Classical Bernstein operator sum_k f(k/n) C(n,k) x^k (1-x)^{n-k}.
template <Scalar T>
T bernstein_eval(int n, const SampledFunction<T>& f, const T& x) {
  if (n < 2) throw std::invalid_argument("bernstein_eval: n must be >= 2");
  if (x < T(0) || x > T(1)) throw std::invalid_argument("bernstein_eval: x outside [0,1]");
  const T q = T(1) - x;
  T sum(0);
  T binom(1);
  for (int k = 0; k <= n; ++k) {
    T term = binom;
    for (int i = 0; i < k; ++i) term *= x;
    for (int i = 0; i < n - k; ++i) term *= q;
    sum += f(ratio<T>(k, n)) * term;
    if (k < n) binom *= ratio<T>(n - k, k + 1);
  }
  return sum;
}

struct OrderReport {
  int n = 0;
  double x = 0.0;
  double y = 0.0;
  bool dominated = false;   // F_x(k) >= F_y(k) - tolerance for all k
  double worst_margin = 0.0;  // min_k F_x(k) - F_y(k)
  int worst_k = 0;
};

/// Usual stochastic order check X_n(x) <=_st X_n(y) for x <= y, i.e.
/// F_x(k) >= F_y(k) pointwise.
template <Scalar T>
OrderReport dominates(int n, const T& x, const T& y, double tolerance) {
  if (x > y) throw std::invalid_argument("dominates: need x <= y");
  const Cdf<T> fx = cdf_vector(n, x);
  const Cdf<T> fy = cdf_vector(n, y);
  OrderReport report{n, to_double(x), to_double(y), false, 0.0, 0};
  bool first = true;
  T worst(0);
  for (int k = 0; k <= n; ++k) {
    const T margin = fx.values[static_cast<size_t>(k)] - fy.values[static_cast<size_t>(k)];
    if (first || margin < worst) {
      worst = margin;
      report.worst_k = k;
      first = false;
    }
  }
  report.worst_margin = to_double(worst);
  report.dominated = report.worst_margin >= -tolerance;
  return report;
}

/// Stochastic ordering across a uniform x-grid: every consecutive pair
/// (x_i, x_{i+1}) must satisfy F_{x_i} >= F_{x_{i+1}} pointwise;
/// transitivity extends the conclusion to all pairs.
template <Scalar T>
VerificationReport verify_theorem2(int n, int x_grid_points, double tolerance) {
  if (x_grid_points < 2) throw std::invalid_argument("verify_theorem2: need at least 2 grid points");
  if (n < 2) throw std::invalid_argument("verify_theorem2: n must be >= 2");

  VerificationReport report("theorem2", mode_name<T>());
  report.params = {{"n", n}, {"grid", x_grid_points}, {"tol", tolerance}};

  Cdf<T> prev = cdf_vector(n, ratio<T>(0, 1));
  for (int i = 1; i < x_grid_points; ++i) {
    Cdf<T> cur = cdf_vector(n, ratio<T>(i, x_grid_points - 1));
    for (int k = 0; k <= n; ++k) {
      const T margin = prev.values[static_cast<size_t>(k)] - cur.values[static_cast<size_t>(k)];
      report.record("n=" + std::to_string(n) + ",i=" + std::to_string(i) +
                        ",k=" + std::to_string(k),
                    to_double(margin), tolerance);
    }
    prev = std::move(cur);
  }
  return report;
}

/// R_n(f, .) must inherit f's monotonicity tag on a uniform grid, and must
/// interpolate f at both endpoints.
template <Scalar T>
VerificationReport verify_theorem3(int n, const SampledFunction<T>& f, int grid_points,
                                   double tolerance) {
  if (f.tag == Monotonicity::none) {
    throw std::invalid_argument("verify_theorem3: function carries no monotonicity tag");
  }
  if (grid_points < 2) throw std::invalid_argument("verify_theorem3: need at least 2 grid points");

  VerificationReport report("theorem3", mode_name<T>());
  report.params = {{"n", n}, {"f", f.name}, {"grid", grid_points}, {"tol", tolerance}};

  const double sign = f.tag == Monotonicity::increasing ? 1.0 : -1.0;
  std::vector<T> values;
  values.reserve(static_cast<size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    values.push_back(rn_eval(n, f, ratio<T>(i, grid_points - 1)));
  }
  for (int i = 0; i + 1 < grid_points; ++i) {
    const double diff = to_double(T(values[static_cast<size_t>(i) + 1] -
                                    values[static_cast<size_t>(i)]));
    report.record("n=" + std::to_string(n) + ",f=" + f.name + ",i=" + std::to_string(i),
                  sign * diff, tolerance);
  }

  const double at0 = to_double(T(values.front() - f(T(0))));
  const double at1 = to_double(T(values.back() - f(T(1))));
  report.record("endpoint x=0,f=" + f.name, -std::abs(at0), tolerance);
  report.record("endpoint x=1,f=" + f.name, -std::abs(at1), tolerance);
  return report;
}

}  // namespace polyaurn
