#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "polyaurn/report.hpp"
#include "polyaurn/scalar.hpp"
#include "polyaurn/urn.hpp"

// Shape analysis of x -> p_{n,k}(x). The driver is
//
//   phi(n,k,x) = sum_{i=0}^{n-1} 1/(1 - ix/(n-1))
//              - sum_{i=0}^{n-k-1} 1/(1 - x - ix/(n-1)),
//
// defined on [0, (n-1)/(2n-k-2)). On (0, 1/2), x * (d/dx) log p_{n,k}(x)
// equals phi(n,k,x); phi starts at the value k, changes sign exactly once,
// and its root x_{n,k} lies in [(k-1)/(n-1), k/(n-1)]. The mode of p_{n,k}
// is assembled from these roots by x_star below.
namespace polyaurn {

template <Scalar T>
struct PhiSpec {
  int n;
  int k;
  T domain_sup;  // (n-1)/(2n-k-2); equals 1 iff k = n-1
};

template <Scalar T>
PhiSpec<T> make_phi_spec(int n, int k) {
  if (n < 2) throw std::invalid_argument("phi: n must be >= 2");
  if (k < 0 || k > n - 1) throw std::invalid_argument("phi: k outside 0..n-1");
  return PhiSpec<T>{n, k, ratio<T>(n - 1, 2 * n - k - 2)};
}

template <Scalar T>
T phi(int n, int k, const T& x) {
  const PhiSpec<T> spec = make_phi_spec<T>(n, k);
  if (x < T(0) || x >= spec.domain_sup) {
    throw std::domain_error("phi: x outside [0, (n-1)/(2n-k-2))");
  }
  const T one(1);
  T sum(0);
  for (int i = 0; i < n; ++i) {
    sum += one / (one - ratio<T>(i, n - 1) * x);
  }
  for (int i = 0; i < n - k; ++i) {
    sum -= one / (one - x * (one + ratio<T>(i, n - 1)));
  }
  return sum;
}

/// d/dx phi(n,k,x) on (0, domain_sup).
template <Scalar T>
T phi_prime(int n, int k, const T& x) {
  const PhiSpec<T> spec = make_phi_spec<T>(n, k);
  if (x <= T(0) || x >= spec.domain_sup) {
    throw std::domain_error("phi_prime: x outside (0, (n-1)/(2n-k-2))");
  }
  const T one(1);
  T sum(0);
  for (int i = 0; i < n; ++i) {
    const T t = ratio<T>(i, n - 1);
    const T d = one - t * x;
    sum += t / (d * d);
  }
  for (int i = 0; i < n - k; ++i) {
    const T t = one + ratio<T>(i, n - 1);
    const T d = one - x * t;
    sum -= t / (d * d);
  }
  return sum;
}

struct RootResult {
  double x_root = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0;  // |phi(x_root)|
  int iterations = 0;
  bool exact_case = false;  // closed form k = 0 or k = n-1
};

/// Root of phi(n,k,.) by bisection on the guaranteed sign-change bracket
/// [max(0,(k-1)/(n-1)), k/(n-1)]. k = 0 and k = n-1 have the closed forms
/// 0 and 1. Bisection narrows the bracket to `tolerance` (or to floating
/// point exhaustion) and reports the evaluated point with the smallest
/// |phi|; the bracket fields keep the original enclosure.
inline RootResult locate_root(int n, int k, double tolerance = 1e-13) {
  if (n < 2) throw std::invalid_argument("locate_root: n must be >= 2");
  if (k < 0 || k > n - 1) throw std::invalid_argument("locate_root: k outside 0..n-1");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("locate_root: tolerance must be >= 0");

  RootResult result;
  if (k == 0) {
    result = {0.0, 0.0, 0.0, 0.0, 0, true};
    return result;
  }
  if (k == n - 1) {
    const double lo = n == 2 ? 0.0 : static_cast<double>(k - 1) / (n - 1);
    result = {1.0, lo, 1.0, 0.0, 0, true};
    return result;
  }

  const double lo0 = std::max(0.0, static_cast<double>(k - 1) / (n - 1));
  const double hi0 = static_cast<double>(k) / (n - 1);
  if (!(phi<double>(n, k, lo0) > 0.0) || !(phi<double>(n, k, hi0) < 0.0)) {
    throw std::logic_error("locate_root: bracket lost its sign change (internal inconsistency)");
  }

  double lo = lo0, hi = hi0;
  double best_x = 0.5 * (lo + hi);
  double best_abs = std::abs(phi<double>(n, k, best_x));
  int iterations = 1;
  if (phi<double>(n, k, best_x) > 0.0) {
    lo = best_x;
  } else {
    hi = best_x;
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating point resolution
    const double value = phi<double>(n, k, mid);
    ++iterations;
    if (std::abs(value) < best_abs) {
      best_abs = std::abs(value);
      best_x = mid;
    }
    if (value > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result = {best_x, lo0, hi0, best_abs, iterations, false};
  return result;
}

/// Mode of x -> p_{n,k}(x):
///   k <= (n-1)/2        -> x_{n,k}
///   (n-1)/2 < k < (n+1)/2 -> 1/2        (only k = n/2 for even n)
///   k >= (n+1)/2        -> 1 - x_{n,n-k}
inline double x_star(int n, int k, double tolerance = 1e-13) {
  if (n < 2) throw std::invalid_argument("x_star: n must be >= 2");
  if (k < 0 || k > n) throw std::invalid_argument("x_star: k outside 0..n");
  if (2 * k <= n - 1) return locate_root(n, k, tolerance).x_root;
  if (2 * k >= n + 1) return 1.0 - locate_root(n, n - k, tolerance).x_root;
  return 0.5;
}

struct XStarTable {
  int n = 0;
  std::vector<double> entries;  // indexed k = 0..n, nondecreasing
};

inline XStarTable x_star_table(int n, double tolerance = 1e-13) {
  if (n < 2) throw std::invalid_argument("x_star_table: n must be >= 2");
  XStarTable table{n, {}};
  table.entries.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) table.entries.push_back(x_star(n, k, tolerance));
  return table;
}

/// Grid check that p_{n,k}(.) ascends then descends (plateaus within
/// `tolerance` allowed, at most one descent) and that the empirical argmax
/// stays inside [(k-1)/(n-1), k/(n-1)] widened by one grid step. Failures
/// are recorded in the report, never thrown.
inline VerificationReport verify_unimodal(int n, int k, int grid_points, double tolerance) {
  if (grid_points < 3) throw std::invalid_argument("verify_unimodal: need at least 3 grid points");
  if (n < 2) throw std::invalid_argument("verify_unimodal: n must be >= 2");
  if (k < 0 || k > n) throw std::invalid_argument("verify_unimodal: k outside 0..n");

  VerificationReport report("theorem1", "double");
  report.params = {{"n", n}, {"k", k}, {"grid", grid_points}, {"tol", tolerance}};

  std::vector<double> values(static_cast<size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    values[static_cast<size_t>(i)] =
        pmf_special<double>(n, static_cast<double>(i) / (grid_points - 1), k);
  }

  bool descending = false;
  for (int i = 0; i + 1 < grid_points; ++i) {
    const double diff = values[static_cast<size_t>(i) + 1] - values[static_cast<size_t>(i)];
    if (descending) {
      // Any genuine rise after the first descent breaks unimodality.
      report.record("n=" + std::to_string(n) + ",k=" + std::to_string(k) +
                        ",x=" + to_string(static_cast<double>(i) / (grid_points - 1)),
                    -diff, tolerance);
    }
    if (diff < -tolerance) descending = true;
  }

  const auto argmax =
      std::distance(values.begin(), std::max_element(values.begin(), values.end()));
  const double x_max = static_cast<double>(argmax) / (grid_points - 1);
  const double step = 1.0 / (grid_points - 1);
  const double lo = static_cast<double>(k - 1) / (n - 1) - step;
  const double hi = static_cast<double>(k) / (n - 1) + step;
  const double slack = std::min(x_max - lo, hi - x_max);
  report.record(
      "argmax n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",x=" + to_string(x_max),
      slack, 0.0);
  return report;
}

}  // namespace polyaurn
