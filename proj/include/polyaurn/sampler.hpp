#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "polyaurn/rng.hpp"
#include "polyaurn/scalar.hpp"
#include "polyaurn/urn.hpp"

// Monte Carlo simulation of the urn process, used as evidence independent
// of the rising-factorial formula. Double mode only; exactness at the
// boundary (a colour whose mass reaches 0 must never be drawn again) is
// preserved by recomputing masses from scratch each draw and snapping
// values within 1e-13 of zero, which is far above accumulated rounding and
// far below any genuine mass.
namespace polyaurn {

struct SampleConfig {
  UrnParams<double> params;
  std::uint64_t trials = 0;  // >= 1
  std::uint64_t seed = kDefaultSeed;
};

struct EmpiricalPmf {
  std::vector<std::uint64_t> counts;  // indexed k = 0..n
  std::uint64_t trials = 0;
};

namespace detail {

inline double snapped_mass(double initial, int draws_of_colour, double c, double scale) {
  double mass = initial + static_cast<double>(draws_of_colour) * c;
  if (std::abs(mass) <= 1e-13 * scale) return 0.0;
  if (mass < 0.0) {
    if (mass < -1e-12 * scale) {
      throw std::logic_error("sampler: mass went negative beyond rounding for validated parameters");
    }
    return 0.0;
  }
  return mass;
}

}  // namespace detail

/// One pass of the urn process: n draws, the drawn colour's mass changes by
/// c after each draw. Returns the white count.
inline int draw_path(const UrnParams<double>& params, SplitMix64& rng) {
  const double scale = params.total();
  int whites = 0;
  for (int step = 0; step < params.n; ++step) {
    const double white = detail::snapped_mass(params.a, whites, params.c, scale);
    const double black = detail::snapped_mass(params.b, step - whites, params.c, scale);
    const double u = rng.next_unit();
    // u * total < white happens with probability white/total; in particular
    // never when white == 0, and always when black == 0.
    if (u * (white + black) < white) ++whites;
  }
  return whites;
}

/// Deterministic given the seed; trial i uses substream(seed, i), so counts
/// are independent of any partitioning of the trial range.
inline EmpiricalPmf empirical_pmf(const SampleConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("empirical_pmf: need at least 1 trial");
  if (static_cast<std::uint64_t>(config.params.n) >= kStreamStride) {
    throw std::invalid_argument("empirical_pmf: n exceeds the per-trial draw budget");
  }
  EmpiricalPmf out{std::vector<std::uint64_t>(static_cast<size_t>(config.params.n) + 1, 0),
                   config.trials};
  for (std::uint64_t i = 0; i < config.trials; ++i) {
    SplitMix64 rng = substream(config.seed, i);
    ++out.counts[static_cast<size_t>(draw_path(config.params, rng))];
  }
  return out;
}

/// Regularized lower incomplete gamma P(a, x), by power series for
/// x < a + 1 and by a Lentz continued fraction for the complement above.
inline double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_p: need a > 0 and x >= 0");
  if (x == 0.0) return 0.0;
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-15;
  const double log_prefactor = a * std::log(x) - x - std::lgamma(a);

  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < kMaxIter; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(log_prefactor);
  }

  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return 1.0 - std::exp(log_prefactor) * h;
}

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  bool pass = false;
};

/// Pearson goodness-of-fit over the cells with positive exact probability.
/// Cells with exact probability 0 must have zero counts (automatic fail
/// otherwise) and never contribute to the statistic or the dof. Passing
/// means the statistic is below the chi-square quantile at `level`,
/// evaluated as gamma_p(dof/2, statistic/2) < level.
inline GofResult gof_chi_square(const EmpiricalPmf& emp, const Pmf<double>& exact, double level) {
  if (emp.counts.size() != exact.probs.size()) {
    throw std::invalid_argument("gof_chi_square: support sizes differ");
  }
  if (!(level > 0.0) || !(level < 1.0)) {
    throw std::invalid_argument("gof_chi_square: level must be in (0,1)");
  }

  GofResult r{};
  bool zero_cell_hit = false;
  int cells = 0;
  for (size_t k = 0; k < exact.probs.size(); ++k) {
    const double p = exact.probs[k];
    if (p == 0.0) {
      if (emp.counts[k] != 0) zero_cell_hit = true;
      continue;
    }
    ++cells;
    const double expected = p * static_cast<double>(emp.trials);
    const double delta = static_cast<double>(emp.counts[k]) - expected;
    r.statistic += delta * delta / expected;
  }
  r.dof = cells - 1;
  if (zero_cell_hit) {
    r.pass = false;
  } else if (r.dof <= 0) {
    r.pass = r.statistic == 0.0;
  } else {
    r.pass = gamma_p(0.5 * r.dof, 0.5 * r.statistic) < level;
  }
  return r;
}

}  // namespace polyaurn
