#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace polyaurn {

struct Violation {
  std::string location;
  double margin;
};

// Machine-readable evidence for one verification suite. A check contributes
// a margin; margins >= -tolerance pass, anything below is recorded as a
// violation. worst_margin is the minimum margin seen (0 if nothing was
// checked).
class VerificationReport {
 public:
  VerificationReport() = default;
  VerificationReport(std::string suite, std::string mode)
      : suite_(std::move(suite)), mode_(std::move(mode)) {}

  void record(const std::string& location, double margin, double tolerance) {
    ++checks_;
    if (margin < worst_margin_) worst_margin_ = margin;
    if (margin < -tolerance) violations_.push_back({location, margin});
  }

  /// For strict inequalities: a margin of exactly zero is already a failure.
  void record_strict(const std::string& location, double margin) {
    ++checks_;
    if (margin < worst_margin_) worst_margin_ = margin;
    if (margin <= 0.0) violations_.push_back({location, margin});
  }

  void merge(const VerificationReport& other) {
    checks_ += other.checks_;
    if (other.worst_margin_ < worst_margin_) worst_margin_ = other.worst_margin_;
    violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
  }

  bool pass() const { return violations_.empty(); }
  double worst_margin() const {
    return checks_ == 0 ? 0.0 : worst_margin_;
  }
  long long checks() const { return checks_; }
  const std::vector<Violation>& violations() const { return violations_; }

  const std::string& suite() const { return suite_; }
  const std::string& mode() const { return mode_; }

  nlohmann::json params;
  long long elapsed_ms = 0;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : violations_) {
      vs.push_back({{"location", v.location}, {"margin", v.margin}});
    }
    nlohmann::json out{{"suite", suite_},
                       {"params", params},
                       {"violations", std::move(vs)},
                       {"worst_margin", worst_margin()},
                       {"elapsed_ms", elapsed_ms},
                       {"mode", mode_}};
    if (seed) out["seed"] = *seed;
    return out;
  }

 private:
  std::string suite_;
  std::string mode_;
  std::vector<Violation> violations_;
  double worst_margin_ = std::numeric_limits<double>::infinity();
  long long checks_ = 0;
};

}  // namespace polyaurn
