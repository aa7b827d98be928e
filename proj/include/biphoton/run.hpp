#pragma once

#include <array>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "biphoton/detection.hpp"
#include "biphoton/program.hpp"
#include "biphoton/table.hpp"

namespace biphoton {

/// Evolve the photons through the program's elements, optionally stopping
/// just before a named element (useful to inspect the state ahead of the
/// analyzers).
inline TwoPhotonState run_state(const ElementProgram& p,
                                const std::optional<std::string>& stop_before = std::nullopt) {
  TwoPhotonState s = initial_state(p.photons);
  for (const auto& e : p.elements) {
    if (stop_before && e.name == *stop_before) break;
    s = apply_element(s, e.element);
  }
  return s;
}

inline DetectorAssignment detector_assignment(const ElementProgram& p) {
  DetectorAssignment a;
  for (const auto& d : p.detectors) a.detectors[{d.mode, d.pol}] = d.name;
  for (const auto& m : p.discards) a.discards.insert(m);
  return a;
}

/// Full exact run: deterministic outcome probabilities of the program.
inline CoincidenceTable run_exact(const ElementProgram& p) {
  CoincidenceTable t;
  t.declared_pairs = p.coincidence_pairs;
  t.outcomes = outcome_distribution(run_state(p), detector_assignment(p));
  return t;
}

/// Condition on one photon at each site. Detectors are partitioned into two
/// sites; returns the renormalized cross-site distribution and the success
/// probability.
struct PostselectionResult {
  std::map<Outcome, double> conditional;
  double success = 0.0;
};

inline PostselectionResult postselect_pairs(const OutcomeDistribution& dist,
                                            const std::set<std::string>& site_a,
                                            const std::set<std::string>& site_b) {
  if (site_a.empty() || site_b.empty())
    throw std::invalid_argument("postselect_pairs: both sites need at least one detector");
  PostselectionResult r;
  for (const auto& [o, p] : dist) {
    if (o.kind != Outcome::Kind::kCoincidence) continue;
    const bool ab = site_a.count(o.d1) && site_b.count(o.d2);
    const bool ba = site_a.count(o.d2) && site_b.count(o.d1);
    if (!ab && !ba) continue;
    r.conditional[o] = p;
    r.success += p;
  }
  if (r.success > 0.0)
    for (auto& [o, p] : r.conditional) p /= r.success;
  else
    r.conditional.clear();
  return r;
}

inline PostselectionResult postselect_pairs(const CoincidenceTable& t,
                                            const std::set<std::string>& site_a,
                                            const std::set<std::string>& site_b) {
  return postselect_pairs(t.outcomes, site_a, site_b);
}

/// Conditional polarization content of the one-photon-per-site sector:
/// amplitudes indexed [polA][polB][labelA][labelB], plus the sector weight.
struct ConditionalPolarizationState {
  std::array<std::array<std::array<std::array<std::complex<double>, 2>, 2>, 2>, 2> amp{};
  double success = 0.0;

  /// Fidelity against a pure two-qubit polarization state (internal labels
  /// traced out).
  double fidelity(const std::array<std::array<std::complex<double>, 2>, 2>& target) const {
    if (success <= 0.0) return 0.0;
    double f = 0.0;
    for (int la = 0; la < 2; ++la)
      for (int lb = 0; lb < 2; ++lb) {
        std::complex<double> ov = 0.0;
        for (int pa = 0; pa < 2; ++pa)
          for (int pb = 0; pb < 2; ++pb)
            ov += std::conj(target[pa][pb]) * amp[pa][pb][la][lb];
        f += std::norm(ov);
      }
    return f / success;
  }
};

inline ConditionalPolarizationState postselect_state(const TwoPhotonState& s,
                                                     const std::string& mode_a,
                                                     const std::string& mode_b) {
  const auto ma = s.modes.find(mode_a);
  const auto mb = s.modes.find(mode_b);
  ConditionalPolarizationState r;
  if (!ma || !mb) return r;
  for (const Monomial& t : s.terms) {
    const Op* oa = nullptr;
    const Op* ob = nullptr;
    if (t.op1.mode == *ma && t.op2.mode == *mb) {
      oa = &t.op1;
      ob = &t.op2;
    } else if (t.op1.mode == *mb && t.op2.mode == *ma) {
      oa = &t.op2;
      ob = &t.op1;
    } else {
      continue;
    }
    r.amp[pol_index(oa->pol)][pol_index(ob->pol)][static_cast<int>(oa->label)]
         [static_cast<int>(ob->label)] += t.amp;
    r.success += std::norm(t.amp);
  }
  return r;
}

/// (|HV> + e^{i phi}|VH>) / sqrt(2)
inline std::array<std::array<std::complex<double>, 2>, 2> bell_hv_state(double phi) {
  std::array<std::array<std::complex<double>, 2>, 2> t{};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  t[0][1] = inv_sqrt2;
  t[1][0] = std::polar(inv_sqrt2, phi);
  return t;
}

}  // namespace biphoton
