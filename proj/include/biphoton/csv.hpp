#pragma once

#include <ostream>
#include <string>

#include "biphoton/numfmt.hpp"
#include "biphoton/table.hpp"

namespace biphoton {

// CSV writers: UTF-8, header row, '.' decimal separator, deterministic
// digits (shortest round-trip form).

/// One table as outcome rows: `outcome,p` plus a count column when sampled.
inline void write_table_csv(std::ostream& os, const CoincidenceTable& t) {
  const bool sampled = t.sampled();
  os << (sampled ? "outcome,p,n\n" : "outcome,p\n");
  for (const auto& [o, p] : t.outcomes) {
    os << o.str() << "," << format_double(p);
    if (sampled) os << "," << t.count(o);
    os << "\n";
  }
}

inline std::string pair_column(const std::pair<std::string, std::string>& pr) {
  return pr.first + "-" + pr.second;
}

/// Scan curve: param, the declared coincidence channels, and the loss
/// probability; count columns appear in sampled mode.
inline void write_scan_csv(std::ostream& os, const ScanCurve& curve) {
  if (curve.tables.empty()) return;
  const auto& declared = curve.tables.front().declared_pairs;
  const bool sampled = curve.tables.front().sampled();
  os << "param";
  for (const auto& pr : declared) {
    os << "," << pair_column(pr) << "_p";
    if (sampled) os << "," << pair_column(pr) << "_n";
  }
  os << ",loss_p";
  if (sampled) os << ",loss_n";
  os << "\n";
  for (size_t i = 0; i < curve.size(); ++i) {
    const CoincidenceTable& t = curve.tables[i];
    os << format_double(curve.params[i]);
    for (const auto& pr : declared) {
      os << "," << format_double(t.pair_probability(pr.first, pr.second));
      if (sampled) os << "," << t.pair_count(pr.first, pr.second);
    }
    os << "," << format_double(t.loss_probability());
    if (sampled) os << "," << t.count(Outcome::lost());
    os << "\n";
  }
}

/// One row per setting, then a summary row. In exact mode the N columns
/// carry exact probabilities and the sigma field is empty.
inline void write_chsh_csv(std::ostream& os, const CHSHResult& r) {
  os << "thetaA,thetaB,Npp,Nmm,Npm,Nmp,E,dE\n";
  for (const auto& s : r.settings) {
    os << format_double(s.theta_a_deg) << "," << format_double(s.theta_b_deg) << ","
       << format_double(s.n_pp) << "," << format_double(s.n_mm) << "," << format_double(s.n_pm)
       << "," << format_double(s.n_mp) << "," << format_double(s.E) << ","
       << format_double(s.dE) << "\n";
  }
  os << "S,dS,sigma\n";
  os << format_double(r.S) << "," << format_double(r.dS) << ",";
  if (r.sigma_violation) os << format_double(*r.sigma_violation);
  os << "\n";
}

}  // namespace biphoton
