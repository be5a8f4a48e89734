#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyaurn/rng.hpp"
#include "polyaurn/scalar.hpp"

// Executable forms of the inequalities backing the shape results:
//
//  * refined reversed Cauchy–Bunyakovsky–Schwarz: positive a_1..a_n,
//    b_1..b_{n-k} with max a <= min b and equal sums force
//    sum a^2 < sum b^2 strictly, via sum a^2 <= (sum a)^2/(n-k);
//  * the Pólya–Szegő ratio bound it refines;
//  * two-sided trapezoid bounds: for f with f, f', f'', f''' >= 0 on [0,1],
//    0 <= sum_{i=0}^{N} f(i/N) - N∫f - (f(0)+f(1))/2 <= (f'(1)-f'(0))/(4N).
namespace polyaurn {

struct generation_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <Scalar T>
struct SequencePair {
  std::vector<T> a;  // n positive values
  std::vector<T> b;  // n-k positive values, each >= max a, same total as a
  int k = 0;
};

namespace detail {

template <Scalar T>
T sum_of(const std::vector<T>& v) {
  T s(0);
  for (const T& x : v) s += x;
  return s;
}

template <Scalar T>
T sum_of_squares(const std::vector<T>& v) {
  T s(0);
  for (const T& x : v) s += x * x;
  return s;
}

}  // namespace detail

/// Validates the hypotheses and reports which one failed. In double mode the
/// sums must agree within 1e-12 relative; checks then use sum(b) as the
/// common total, which is the exact-rescaling convention.
template <Scalar T>
SequencePair<T> make_sequence_pair(std::vector<T> a, std::vector<T> b) {
  const int n = static_cast<int>(a.size());
  const int k = n - static_cast<int>(b.size());
  if (n < 2) throw std::invalid_argument("sequence pair: need n >= 2 values in a");
  if (k < 1 || k > n - 1) throw std::invalid_argument("sequence pair: need 1 <= k <= n-1 (b shorter than a)");
  for (const T& x : a) {
    if (!(x > T(0))) throw std::invalid_argument("sequence pair: entries of a must be positive");
  }
  for (const T& x : b) {
    if (!(x > T(0))) throw std::invalid_argument("sequence pair: entries of b must be positive");
  }
  const T max_a = *std::max_element(a.begin(), a.end());
  const T min_b = *std::min_element(b.begin(), b.end());
  if (max_a > min_b) throw std::invalid_argument("sequence pair: max(a) exceeds min(b)");
  const T sa = detail::sum_of(a);
  const T sb = detail::sum_of(b);
  if constexpr (is_rational_v<T>) {
    if (sa != sb) throw std::invalid_argument("sequence pair: sum(a) != sum(b)");
  } else {
    if (std::abs(sa - sb) > 1e-12 * sb) {
      throw std::invalid_argument("sequence pair: sum(a) != sum(b) beyond 1e-12 relative");
    }
  }
  return {std::move(a), std::move(b), k};
}

template <Scalar T>
struct CbsResult {
  T lhs;  // sum a^2
  T rhs;  // sum b^2
  bool strict_holds;
};

template <Scalar T>
CbsResult<T> check_refined_reversed_cbs(const SequencePair<T>& p) {
  CbsResult<T> r{detail::sum_of_squares(p.a), detail::sum_of_squares(p.b), false};
  r.strict_holds = r.lhs < r.rhs;
  return r;
}

template <Scalar T>
struct Aux7Result {
  T lhs;    // sum a^2
  T bound;  // (sum a)^2 / (n-k), with the common total as the sum
  bool holds;
};

template <Scalar T>
Aux7Result<T> check_aux7(const SequencePair<T>& p) {
  const T total = detail::sum_of(p.b);
  const int denominator = static_cast<int>(p.b.size());  // n - k
  Aux7Result<T> r{detail::sum_of_squares(p.a), T(total * total / T(denominator)), false};
  r.holds = r.lhs <= r.bound;
  return r;
}

template <Scalar T>
struct PolyaSzegoResult {
  T lhs_ratio;  // (sum a^2)(sum b^2) / (sum ab)^2
  T ps_bound;   // (R + 2 + 1/R)/4 with R = M1 M2 / (m1 m2)
  bool holds;
};

/// Pólya–Szegő's ratio bound for positive sequences of equal length. The
/// bound is written sqrt-free so it stays exact in rational mode.
template <Scalar T>
PolyaSzegoResult<T> polya_szego_ratio(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument("polya_szego_ratio: sequences must be nonempty and equal length");
  }
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > T(0)) || !(b[i] > T(0))) {
      throw std::invalid_argument("polya_szego_ratio: entries must be positive");
    }
  }
  T dot(0);
  for (size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  const T m1 = *std::min_element(a.begin(), a.end());
  const T M1 = *std::max_element(a.begin(), a.end());
  const T m2 = *std::min_element(b.begin(), b.end());
  const T M2 = *std::max_element(b.begin(), b.end());
  const T big_ratio = T(M1 * M2) / T(m1 * m2);

  PolyaSzegoResult<T> r{
      T(detail::sum_of_squares(a) * detail::sum_of_squares(b) / (dot * dot)),
      T((big_ratio + T(2) + T(1) / big_ratio) / T(4)), false};
  r.holds = r.lhs_ratio <= r.ps_bound;
  return r;
}

// A C^3 test function with closed-form derivatives and integral over [0,1].
// The integral is supplied analytically on purpose: the trapezoid bounds
// estimate a quadrature error, so checking them against another quadrature
// would be circular.
struct FunctionDescriptor {
  std::string name;
  std::function<double(double)> value, d1, d2, d3;
  double integral_01 = 0.0;
  bool qualifies = false;  // f, f', f'', f''' >= 0 on a 1001-point grid
};

inline bool lemma2_qualifies(const FunctionDescriptor& f, int grid_points = 1001) {
  for (int i = 0; i < grid_points; ++i) {
    const double x = static_cast<double>(i) / (grid_points - 1);
    if (f.value(x) < 0.0 || f.d1(x) < 0.0 || f.d2(x) < 0.0 || f.d3(x) < 0.0) return false;
  }
  return true;
}

inline FunctionDescriptor fd_exp(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("fd_exp: need a > 0");
  FunctionDescriptor f;
  f.name = "exp(" + to_string(a) + "t)";
  f.value = [a](double t) { return std::exp(a * t); };
  f.d1 = [a](double t) { return a * std::exp(a * t); };
  f.d2 = [a](double t) { return a * a * std::exp(a * t); };
  f.d3 = [a](double t) { return a * a * a * std::exp(a * t); };
  f.integral_01 = (std::exp(a) - 1.0) / a;
  f.qualifies = lemma2_qualifies(f);
  return f;
}

inline FunctionDescriptor fd_reciprocal(double q) {
  if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("fd_reciprocal: need 0 < q < 1");
  FunctionDescriptor f;
  f.name = "1/(1-" + to_string(q) + "t)";
  f.value = [q](double t) { return 1.0 / (1.0 - q * t); };
  f.d1 = [q](double t) { const double d = 1.0 - q * t; return q / (d * d); };
  f.d2 = [q](double t) { const double d = 1.0 - q * t; return 2.0 * q * q / (d * d * d); };
  f.d3 = [q](double t) { const double d = 1.0 - q * t; return 6.0 * q * q * q / (d * d * d * d); };
  f.integral_01 = -std::log1p(-q) / q;
  f.qualifies = lemma2_qualifies(f);
  return f;
}

/// Polynomial sum c_i t^i; qualifies whenever all coefficients are >= 0.
inline FunctionDescriptor fd_polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  const auto horner = [](const std::vector<double>& cs, double t) {
    double v = 0.0;
    for (size_t i = cs.size(); i-- > 0;) v = v * t + cs[i];
    return v;
  };
  const auto derive = [](const std::vector<double>& cs) {
    std::vector<double> out;
    for (size_t i = 1; i < cs.size(); ++i) out.push_back(static_cast<double>(i) * cs[i]);
    if (out.empty()) out.push_back(0.0);
    return out;
  };
  const std::vector<double> c1 = derive(coeffs);
  const std::vector<double> c2 = derive(c1);
  const std::vector<double> c3 = derive(c2);

  FunctionDescriptor f;
  f.name = "poly(deg " + std::to_string(coeffs.size() - 1) + ")";
  f.value = [coeffs, horner](double t) { return horner(coeffs, t); };
  f.d1 = [c1, horner](double t) { return horner(c1, t); };
  f.d2 = [c2, horner](double t) { return horner(c2, t); };
  f.d3 = [c3, horner](double t) { return horner(c3, t); };
  f.integral_01 = 0.0;
  for (size_t i = 0; i < coeffs.size(); ++i) f.integral_01 += coeffs[i] / static_cast<double>(i + 1);
  f.qualifies = lemma2_qualifies(f);
  return f;
}

inline FunctionDescriptor fd_constant(double v) { return fd_polynomial({v}); }

struct TrapezoidResult {
  double gap;          // sum_{i=0}^{N} f(i/N) - N * integral - (f(0)+f(1))/2
  double upper_bound;  // (f'(1) - f'(0)) / (4N)
  bool holds;          // -tol <= gap <= upper_bound + tol
};

inline TrapezoidResult trapezoid_gap(const FunctionDescriptor& f, int N, double tolerance = 1e-12) {
  if (N < 1) throw std::invalid_argument("trapezoid_gap: N must be >= 1");
  if (!f.qualifies) {
    throw std::invalid_argument("trapezoid_gap: '" + f.name + "' does not satisfy f,f',f'',f''' >= 0");
  }
  double sum = 0.0;
  for (int i = 0; i <= N; ++i) sum += f.value(static_cast<double>(i) / N);
  TrapezoidResult r{};
  r.gap = sum - static_cast<double>(N) * f.integral_01 - 0.5 * (f.value(0.0) + f.value(1.0));
  r.upper_bound = (f.d1(1.0) - f.d1(0.0)) / (4.0 * N);
  r.holds = r.gap >= -tolerance && r.gap <= r.upper_bound + tolerance;
  return r;
}

inline constexpr int kGenerationRetryCap = 1000;

/// Rejection step of the instance generator: draw n values in (0, min b],
/// rescale them to sum(b), reject if rescaling pushes max(a) above min(b).
inline std::vector<double> generate_a_for_b(const std::vector<double>& b, int n, SplitMix64& rng) {
  const double min_b = *std::min_element(b.begin(), b.end());
  double sum_b = 0.0;
  for (double x : b) sum_b += x;

  std::vector<double> a(static_cast<size_t>(n));
  for (int attempt = 0; attempt < kGenerationRetryCap; ++attempt) {
    double sum_a = 0.0;
    for (auto& x : a) {
      x = (1.0 - rng.next_unit()) * min_b;  // (0, min_b]
      sum_a += x;
    }
    const double scale = sum_b / sum_a;
    bool ok = true;
    for (auto& x : a) {
      x *= scale;
      if (x > min_b) ok = false;
    }
    if (ok) return a;
  }
  throw generation_failure("generate_a_for_b: retry cap exhausted");
}

/// Random valid instance: b_j uniform on [1,2], then a by rejection.
/// Throws generation_failure when the drawn b admits no rescaled a within
/// the retry cap; callers pick a fresh seed.
inline SequencePair<double> generate_lemma1_instance(int n, int k, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("generate_lemma1_instance: n must be >= 2");
  if (k < 1 || k > n - 1) throw std::invalid_argument("generate_lemma1_instance: k outside 1..n-1");
  SplitMix64 rng = substream(seed, 0);
  std::vector<double> b(static_cast<size_t>(n - k));
  for (auto& x : b) x = 1.0 + rng.next_unit();
  std::vector<double> a = generate_a_for_b(b, n, rng);
  return make_sequence_pair(std::move(a), std::move(b));
}

}  // namespace polyaurn
