#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "biphoton/state.hpp"

namespace biphoton {

/// Click pattern of one detection round. Threshold detectors, unit
/// efficiency: a doubly occupied detector yields one click.
struct Outcome {
  enum class Kind : uint8_t {
    kCoincidence,   // two distinct detectors fired
    kSingle,        // one detector fired (bunched pair or partner discarded)
    kAllDiscarded,  // both photons left through discard ports
    kLost           // removed earlier by lossy elements
  };
  Kind kind = Kind::kLost;
  std::string d1, d2;  // d1 <= d2 for coincidences; d1 for singles

  friend auto operator<=>(const Outcome&, const Outcome&) = default;

  static Outcome coincidence(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return Outcome{Kind::kCoincidence, std::move(a), std::move(b)};
  }
  static Outcome single(std::string d) { return Outcome{Kind::kSingle, std::move(d), {}}; }
  static Outcome all_discarded() { return Outcome{Kind::kAllDiscarded, {}, {}}; }
  static Outcome lost() { return Outcome{Kind::kLost, {}, {}}; }

  std::string str() const {
    switch (kind) {
      case Kind::kCoincidence: return d1 + "+" + d2;
      case Kind::kSingle: return "single:" + d1;
      case Kind::kAllDiscarded: return "discarded";
      case Kind::kLost: return "lost";
    }
    return {};
  }
};

/// Where each live (mode, polarization) slot ends: a named detector or a
/// discard port.
struct DetectorAssignment {
  std::map<std::pair<std::string, Pol>, std::string> detectors;
  std::set<std::string> discards;
};

using OutcomeDistribution = std::map<Outcome, double>;

inline double outcome_total(const OutcomeDistribution& d) {
  double t = 0.0;
  for (const auto& [o, p] : d) t += p;
  return t;
}

inline double coincidence_probability(const OutcomeDistribution& d, const std::string& a,
                                      const std::string& b) {
  auto it = d.find(Outcome::coincidence(a, b));
  return it == d.end() ? 0.0 : it->second;
}

/// Trace out internal labels and bucket every monomial into a click pattern.
/// Probabilities (with the lost bucket) sum to one.
inline OutcomeDistribution outcome_distribution(const TwoPhotonState& s,
                                                const DetectorAssignment& assign) {
  // resolve slot -> detector name; empty string means discard
  auto sink = [&](const Op& op) -> std::string {
    const std::string& mode = s.modes.name(op.mode);
    auto it = assign.detectors.find({mode, op.pol});
    if (it != assign.detectors.end()) return it->second;
    if (assign.discards.count(mode)) return {};
    throw std::invalid_argument("outcome_distribution: live mode '" + mode + "' (pol " +
                                pol_char(op.pol) + ") is neither detected nor discarded");
  };

  OutcomeDistribution dist;
  for (const Monomial& t : s.terms) {
    const double p = (t.op1 == t.op2 ? 2.0 : 1.0) * std::norm(t.amp);
    const std::string s1 = sink(t.op1);
    const std::string s2 = sink(t.op2);
    Outcome o = Outcome::lost();
    if (!s1.empty() && !s2.empty())
      o = (s1 == s2) ? Outcome::single(s1) : Outcome::coincidence(s1, s2);
    else if (!s1.empty())
      o = Outcome::single(s1);
    else if (!s2.empty())
      o = Outcome::single(s2);
    else
      o = Outcome::all_discarded();
    dist[o] += p;
  }
  if (s.accumulated_loss > 0.0) dist[Outcome::lost()] += s.accumulated_loss;
  return dist;
}

}  // namespace biphoton
