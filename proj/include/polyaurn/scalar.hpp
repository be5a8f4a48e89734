#pragma once

#include <gmpxx.h>

#include <charconv>
#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polyaurn {

// Exact rational scalar. gmpxx keeps canonical form (lowest terms, positive
// denominator) through arithmetic; every parsing entry point below
// canonicalizes explicitly.
using Rational = mpq_class;

// The two numeric modes of the library. A computation is instantiated for
// exactly one mode; there is no implicit crossover between them.
template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_rational_v = std::same_as<T, Rational>;

template <Scalar T>
constexpr const char* mode_name() {
  if constexpr (is_rational_v<T>) {
    return "rational";
  } else {
    return "double";
  }
}

/// num/den carried exactly in the target mode; den must be nonzero.
template <Scalar T>
T ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  if constexpr (is_rational_v<T>) {
    Rational q(num);
    q /= Rational(den);  // division canonicalizes
    return q;
  } else {
    return static_cast<double>(num) / static_cast<double>(den);
  }
}

template <Scalar T>
T abs_val(const T& x) {
  return x < T(0) ? T(-x) : x;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

namespace detail {

// Decimal literal ("12", "-0.25", "1.5e-3") to an exact rational.
inline Rational parse_decimal(std::string_view s) {
  const std::string input(s);
  bool negative = false;
  std::string_view rest = s;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  long exponent = 0;
  if (auto epos = rest.find_first_of("eE"); epos != std::string_view::npos) {
    const std::string_view etail = rest.substr(epos + 1);
    const auto* first = etail.data();
    const auto* last = etail.data() + etail.size();
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) {
      throw std::invalid_argument("not a number: '" + input + "'");
    }
    rest = rest.substr(0, epos);
  }

  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char ch : rest) {
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("not a number: '" + input + "'");
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("not a number: '" + input + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("not a number: '" + input + "'");

  mpz_class numerator(digits, 10);
  if (negative) numerator = -numerator;

  const long shift = exponent - frac_digits;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10u, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q;
  if (shift >= 0) {
    q = Rational(numerator * pow10);
  } else {
    q = Rational(numerator, pow10);
  }
  q.canonicalize();
  return q;
}

}  // namespace detail

/// Accepts "p/q" fractions as well as integer and decimal literals.
inline Rational parse_rational(std::string_view s) {
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const Rational num = detail::parse_decimal(s.substr(0, slash));
    const Rational den = detail::parse_decimal(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  return detail::parse_decimal(s);
}

inline bool is_fraction_literal(std::string_view s) {
  return s.find('/') != std::string_view::npos;
}

template <Scalar T>
T parse_scalar(std::string_view s) {
  if constexpr (is_rational_v<T>) {
    return parse_rational(s);
  } else {
    // Fractions are accepted in double mode too; they round once.
    if (is_fraction_literal(s)) return parse_rational(s).get_d();
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    }
    return value;
  }
}

/// Canonical "p/q" (or plain "p" for integers).
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Shortest decimal that round-trips.
inline std::string to_string(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("to_string(double) failed");
  return std::string(buf, ptr);
}

}  // namespace polyaurn
