#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyaurn/scalar.hpp"

namespace polyaurn {

enum class Monotonicity { increasing, decreasing, none };

inline const char* monotonicity_name(Monotonicity m) {
  switch (m) {
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::decreasing: return "decreasing";
    default: return "none";
  }
}

// A test function on [0,1]: a closed form or an interpolated table, plus a
// monotonicity tag used by the shape-preservation checks.
template <Scalar T>
struct SampledFunction {
  std::string name;
  std::function<T(const T&)> eval;
  Monotonicity tag = Monotonicity::none;

  T operator()(const T& x) const { return eval(x); }
};

template <Scalar T>
SampledFunction<T> fn_constant(T value) {
  return {"constant(" + to_string(value) + ")",
          [value](const T&) -> T { return value; }, Monotonicity::increasing};
}

template <Scalar T>
SampledFunction<T> fn_identity() {
  return {"t", [](const T& x) -> T { return x; }, Monotonicity::increasing};
}

template <Scalar T>
SampledFunction<T> fn_square() {
  return {"t^2", [](const T& x) -> T { return T(x * x); }, Monotonicity::increasing};
}

template <Scalar T>
SampledFunction<T> fn_affine(T c0, T c1) {
  const Monotonicity tag =
      c1 >= T(0) ? Monotonicity::increasing : Monotonicity::decreasing;
  return {"affine(" + to_string(c0) + "," + to_string(c1) + ")",
          [c0, c1](const T& x) -> T { return T(c0 + c1 * x); }, tag};
}

/// Indicator 1[t >= j/n], the step family bridging the operator to CDFs.
template <Scalar T>
SampledFunction<T> fn_step(int j, int n) {
  if (n < 1 || j < 0 || j > n) throw std::invalid_argument("fn_step: need 0 <= j <= n");
  const T threshold = ratio<T>(j, n);
  return {"step(" + std::to_string(j) + "/" + std::to_string(n) + ")",
          [threshold](const T& x) -> T { return x >= threshold ? T(1) : T(0); },
          Monotonicity::increasing};
}

/// 1/(1 - q t) with 0 < q < 1; rational-exact for rational q.
template <Scalar T>
SampledFunction<T> fn_reciprocal(T q) {
  if (!(q > T(0)) || !(q < T(1))) throw std::invalid_argument("fn_reciprocal: need 0 < q < 1");
  return {"1/(1-" + to_string(q) + "t)",
          [q](const T& x) -> T { return T(T(1) / (T(1) - q * x)); },
          Monotonicity::increasing};
}

/// e^{a t} with a > 0. Double mode only.
inline SampledFunction<double> fn_exp(double a = 1.0) {
  if (!(a > 0.0)) throw std::invalid_argument("fn_exp: need a > 0");
  return {"exp(" + to_string(a) + "t)", [a](const double& x) { return std::exp(a * x); },
          Monotonicity::increasing};
}

/// Piecewise-linear interpolation of (x, f(x)) pairs covering [0,1]; the
/// monotonicity tag is inferred from the node values.
template <Scalar T>
SampledFunction<T> fn_table(std::vector<std::pair<T, T>> points) {
  if (points.size() < 2) throw std::invalid_argument("fn_table: need at least 2 points");
  std::sort(points.begin(), points.end(),
            [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
  if (points.front().first != T(0) || points.back().first != T(1)) {
    throw std::invalid_argument("fn_table: nodes must cover [0,1]");
  }
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i].first == points[i + 1].first) {
      throw std::invalid_argument("fn_table: duplicate node");
    }
  }

  bool up = true, down = true;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1].second < points[i].second) up = false;
    if (points[i + 1].second > points[i].second) down = false;
  }
  const Monotonicity tag = up   ? Monotonicity::increasing
                           : down ? Monotonicity::decreasing
                                  : Monotonicity::none;

  auto eval = [pts = std::move(points)](const T& x) -> T {
    if (x < T(0) || x > T(1)) throw std::domain_error("fn_table: x outside [0,1]");
    size_t hi = 1;
    while (hi + 1 < pts.size() && pts[hi].first < x) ++hi;
    const auto& [x0, y0] = pts[hi - 1];
    const auto& [x1, y1] = pts[hi];
    return T(y0 + (y1 - y0) * (x - x0) / (x1 - x0));
  };
  return {"table", std::move(eval), tag};
}

/// Confirms an increasing/decreasing tag by a grid scan (default 1001
/// points, slack 1e-12). Untagged functions confirm trivially.
template <Scalar T>
bool scan_confirms_tag(const SampledFunction<T>& f, int grid_points = 1001, double tol = 1e-12) {
  if (f.tag == Monotonicity::none) return true;
  const T slack = [&]() -> T {
    if constexpr (is_rational_v<T>) {
      return Rational(tol);
    } else {
      return tol;
    }
  }();
  T prev = f(T(0));
  for (int i = 1; i < grid_points; ++i) {
    const T cur = f(ratio<T>(i, grid_points - 1));
    if (f.tag == Monotonicity::increasing && cur < prev - slack) return false;
    if (f.tag == Monotonicity::decreasing && cur > prev + slack) return false;
    prev = cur;
  }
  return true;
}

/// Builtin lookup for the CLI: "one", "identity", "square", "exp[:a]",
/// "recip[:q]", "step:j" (threshold j/n), "affine:c0,c1".
template <Scalar T>
SampledFunction<T> make_builtin_function(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "one" || head == "constant") return fn_constant<T>(T(1));
  if (head == "identity" || head == "t") return fn_identity<T>();
  if (head == "square" || head == "t2") return fn_square<T>();
  if (head == "step") {
    if (arg.empty()) throw std::invalid_argument("step function needs a threshold index, step:j");
    return fn_step<T>(std::stoi(arg), n);
  }
  if (head == "recip") {
    return fn_reciprocal<T>(arg.empty() ? ratio<T>(1, 2) : parse_scalar<T>(arg));
  }
  if (head == "affine") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("affine needs two coefficients, affine:c0,c1");
    }
    return fn_affine<T>(parse_scalar<T>(arg.substr(0, comma)),
                        parse_scalar<T>(arg.substr(comma + 1)));
  }
  if (head == "exp") {
    if constexpr (is_rational_v<T>) {
      throw std::invalid_argument("exp is not available in rational mode");
    } else {
      return fn_exp(arg.empty() ? 1.0 : parse_scalar<double>(arg));
    }
  }
  throw std::invalid_argument("unknown function '" + spec + "'");
}

}  // namespace polyaurn
