#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biphoton/detection.hpp"

namespace biphoton {

/// Exact outcome probabilities of one run, optionally with Poisson-sampled
/// counts, keyed to the circuit's declared coincidence pairs.
struct CoincidenceTable {
  std::vector<std::pair<std::string, std::string>> declared_pairs;
  OutcomeDistribution outcomes;
  std::map<Outcome, uint64_t> counts;  // present in sampled mode only

  std::optional<uint64_t> seed;
  double pair_rate_hz = 0.0;
  double duration_s = 0.0;

  bool sampled() const { return !counts.empty() || seed.has_value(); }

  double probability(const Outcome& o) const {
    auto it = outcomes.find(o);
    return it == outcomes.end() ? 0.0 : it->second;
  }
  double pair_probability(const std::string& a, const std::string& b) const {
    return probability(Outcome::coincidence(a, b));
  }
  uint64_t count(const Outcome& o) const {
    auto it = counts.find(o);
    return it == counts.end() ? 0 : it->second;
  }
  uint64_t pair_count(const std::string& a, const std::string& b) const {
    return count(Outcome::coincidence(a, b));
  }
  double loss_probability() const { return probability(Outcome::lost()); }
  double total_probability() const { return outcome_total(outcomes); }
};

/// One scanned parameter against the full table at each grid point.
struct ScanCurve {
  std::string element;  // delay element being scanned
  std::vector<double> params;
  std::vector<CoincidenceTable> tables;

  size_t size() const { return params.size(); }
};

inline void check_monotone(const std::vector<double>& grid) {
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("scan grid must be strictly increasing");
}

/// Four correlation settings plus the Bell combination.
struct CHSHResult {
  struct Setting {
    double theta_a_deg = 0.0;
    double theta_b_deg = 0.0;
    // counts in sampled mode, probabilities in exact mode
    double n_pp = 0.0, n_mm = 0.0, n_pm = 0.0, n_mp = 0.0;
    double E = 0.0;
    double dE = 0.0;
  };
  double theta_a_deg = 0.0, theta_a2_deg = 0.0, theta_b_deg = 0.0, theta_b2_deg = 0.0;
  std::array<Setting, 4> settings;
  double S = 0.0;
  double dS = 0.0;
  std::optional<double> sigma_violation;  // (S-2)/dS, sampled mode only
  bool is_sampled = false;
};

}  // namespace biphoton
