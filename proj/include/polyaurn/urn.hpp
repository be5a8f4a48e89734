#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyaurn/scalar.hpp"

// Pólya–Eggenberger urn with a signed replacement increment. An urn starts
// with white mass a and black mass b; after each draw the drawn colour's
// mass changes by c. For n draws the model is well defined when
// c >= -min{a,b}/(n-1), and the law of the white count is
//
//   p_k = C(n,k) * a^(k,c) * b^(n-k,c) / (a+b)^(n,c),
//
// with x^(k,h) the rising factorial with increment h. The denominator is
// written for general total mass a+b; it reduces to 1^(n,c) when a+b = 1.
namespace polyaurn {

/// x^(k,h) = x(x+h)...(x+(k-1)h); empty product = 1; exact 0 if a factor is 0.
template <Scalar T>
T rising_factorial(const T& x, int k, const T& h) {
  if (k < 0) throw std::invalid_argument("rising_factorial: negative length");
  T result(1);
  for (int i = 0; i < k; ++i) {
    const T factor = x + T(i) * h;
    if (factor == T(0)) return T(0);
    result *= factor;
  }
  return result;
}

/// The smallest admissible replacement increment, -min{x,1-x}/(n-1).
template <Scalar T>
T replacement_param(int n, const T& x) {
  if (n < 2) throw std::invalid_argument("replacement_param: n must be >= 2");
  if (x < T(0) || x > T(1)) throw std::invalid_argument("replacement_param: x outside [0,1]");
  const T other = T(1) - x;
  const T m = x < other ? x : other;
  return -m / T(n - 1);
}

template <Scalar T>
struct UrnParams {
  int n;  // number of draws, >= 1
  T a;    // initial white mass, >= 0
  T b;    // initial black mass, >= 0
  T c;    // replacement increment

  UrnParams(int n_, T a_, T b_, T c_)
      : n(n_), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (n < 1) throw std::invalid_argument("urn: n must be >= 1");
    if (a < T(0) || b < T(0)) throw std::invalid_argument("urn: initial masses must be >= 0");
    if (a + b == T(0)) throw std::invalid_argument("urn: a + b must be positive");
    if (n >= 2) {
      // Bound compared in the same form replacement_param constructs it, so
      // minimal-c parameters validate bit-for-bit in double mode.
      const T m = a < b ? a : b;
      if (c < -(m / T(n - 1))) {
        throw std::invalid_argument("urn: c below -min{a,b}/(n-1), process not defined for n draws");
      }
      if (a + b + T(n - 1) * c <= T(0)) {
        throw std::domain_error("urn: degenerate parameters, a + b + (n-1)c must be positive");
      }
    }
  }

  T total() const { return a + b; }
};

/// Urn with a = x, b = 1-x and the minimal replacement increment.
template <Scalar T>
UrnParams<T> special_params(int n, const T& x) {
  return UrnParams<T>(n, x, T(1) - x, replacement_param(n, x));
}

template <Scalar T>
struct Pmf {
  UrnParams<T> params;
  std::vector<T> probs;  // indexed k = 0..n
};

template <Scalar T>
struct Cdf {
  UrnParams<T> params;
  std::vector<T> values;  // values[k] = P(X <= k)
};

namespace detail {

// Shared product core: C(n,k) * prod_i num(i)/den(i). Numerator and
// denominator factors are paired by index, and the multiplicative binomial
// factors (n-k+j)/j are interleaved whenever the running product is below 1,
// so every prefix stays within double range for large n. A vanishing
// numerator factor short-circuits to exact 0; in double mode a tiny negative
// factor (rounding at the validity boundary, magnitude <= 1e-12 * scale) is
// treated as that exact zero.
template <Scalar T, typename NumF, typename DenF>
T pmf_product(int n, int k, double scale, NumF&& num, DenF&& den) {
  T result(1);
  long next_binom = 1;
  for (int i = 0; i < n; ++i) {
    T factor = num(i);
    if (factor == T(0)) return T(0);
    if constexpr (!is_rational_v<T>) {
      if (factor < 0.0) {
        if (factor < -1e-12 * scale) {
          throw std::logic_error("urn: negative mass factor for validated parameters");
        }
        return T(0);
      }
    }
    result *= factor / den(i);
    while (next_binom <= k && result < T(1)) {
      result *= ratio<T>(n - k + next_binom, next_binom);
      ++next_binom;
    }
  }
  while (next_binom <= k) {
    result *= ratio<T>(n - k + next_binom, next_binom);
    ++next_binom;
  }
  return result;
}

}  // namespace detail

/// P(X = k) for a general urn. Exact in rational mode.
template <Scalar T>
T pmf_general(const UrnParams<T>& params, int k) {
  const int n = params.n;
  if (k < 0 || k > n) throw std::invalid_argument("pmf: k outside 0..n");
  const T sum = params.total();
  return detail::pmf_product<T>(
      n, k, to_double(sum),
      [&](int i) -> T {
        return i < k ? T(params.a + T(i) * params.c) : T(params.b + T(i - k) * params.c);
      },
      [&](int i) -> T { return T(sum + T(i) * params.c); });
}

template <Scalar T>
Pmf<T> pmf_general_vector(const UrnParams<T>& params) {
  Pmf<T> out{params, {}};
  out.probs.reserve(static_cast<size_t>(params.n) + 1);
  for (int k = 0; k <= params.n; ++k) out.probs.push_back(pmf_general(params, k));
  return out;
}

/// P(X = k) for the (n, x) parameterization a = x, b = 1-x,
/// c = -min{x,1-x}/(n-1). Factors are evaluated in factored form per branch
/// of the min, so the boundary zeros (e.g. p_{n,n} = 0 for x <= 1/2) are
/// exact in double mode as well. x in {0,1} yields the point masses at 0
/// resp. n directly through the product.
template <Scalar T>
T pmf_special(int n, const T& x, int k) {
  if (n < 2) throw std::invalid_argument("pmf_special: n must be >= 2");
  if (k < 0 || k > n) throw std::invalid_argument("pmf_special: k outside 0..n");
  if (x < T(0) || x > T(1)) throw std::invalid_argument("pmf_special: x outside [0,1]");

  const T one(1);
  const auto frac = [&](int i) -> T { return ratio<T>(i, n - 1); };
  if (x <= ratio<T>(1, 2)) {
    // c = -x/(n-1): white factors x(1 - i/(n-1)), black 1 - x(1 + j/(n-1)).
    return detail::pmf_product<T>(
        n, k, 1.0,
        [&](int i) -> T {
          return i < k ? T(x * (one - frac(i))) : T(one - x * (one + frac(i - k)));
        },
        [&](int i) -> T { return T(one - x * frac(i)); });
  }
  // c = -(1-x)/(n-1): black factors (1-x)(1 - j/(n-1)).
  const T q = one - x;
  return detail::pmf_product<T>(
      n, k, 1.0,
      [&](int i) -> T {
        return i < k ? T(x - q * frac(i)) : T(q * (one - frac(i - k)));
      },
      [&](int i) -> T { return T(one - q * frac(i)); });
}

template <Scalar T>
Pmf<T> pmf_vector(int n, const T& x) {
  Pmf<T> out{special_params(n, x), {}};
  out.probs.reserve(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) out.probs.push_back(pmf_special(n, x, k));
  return out;
}

/// Running sums of a pmf; clamped to [0,1] in double mode.
template <Scalar T>
Cdf<T> cdf_from_pmf(const Pmf<T>& pmf) {
  Cdf<T> out{pmf.params, {}};
  out.values.reserve(pmf.probs.size());
  T running(0);
  for (const T& p : pmf.probs) {
    running += p;
    if constexpr (!is_rational_v<T>) {
      if (running > 1.0) running = 1.0;
      if (running < 0.0) running = 0.0;
    }
    out.values.push_back(running);
  }
  return out;
}

template <Scalar T>
Cdf<T> cdf_vector(int n, const T& x) {
  return cdf_from_pmf(pmf_vector(n, x));
}

/// F_x(k) = P(X <= k) for the (n, x) parameterization.
template <Scalar T>
T cdf(int n, const T& x, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("cdf: k outside 0..n");
  return cdf_vector(n, x).values[static_cast<size_t>(k)];
}

inline constexpr int kEnumerationCap = 16;

/// Brute-force law by walking all 2^n colour sequences of the urn process,
/// multiplying conditional draw probabilities (colour mass / total mass).
/// Independent of the rising-factorial route; agrees with it exactly in
/// rational mode. A colour whose mass is zero is never drawn.
template <Scalar T>
Pmf<T> enumerate_paths_pmf(const UrnParams<T>& params, int cap = kEnumerationCap) {
  const int n = params.n;
  if (n > cap) {
    throw std::length_error("enumerate_paths_pmf: n exceeds enumeration cap " + std::to_string(cap));
  }
  std::vector<T> acc(static_cast<size_t>(n) + 1, T(0));

  // Depth-first over colour sequences, sharing path prefixes.
  auto walk = [&](auto&& self, int step, int whites, const T& prob, const T& white_mass,
                  const T& black_mass) -> void {
    if (step == n) {
      acc[static_cast<size_t>(whites)] += prob;
      return;
    }
    const T total = white_mass + black_mass;
    if (white_mass > T(0)) {
      self(self, step + 1, whites + 1, T(prob * white_mass / total), T(white_mass + params.c),
           black_mass);
    }
    if (black_mass > T(0)) {
      self(self, step + 1, whites, T(prob * black_mass / total), white_mass,
           T(black_mass + params.c));
    }
  };
  walk(walk, 0, 0, T(1), params.a, params.b);
  return Pmf<T>{params, std::move(acc)};
}

}  // namespace polyaurn
