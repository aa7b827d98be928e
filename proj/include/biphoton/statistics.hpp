#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "biphoton/run.hpp"
#include "biphoton/sampling.hpp"
#include "biphoton/table.hpp"

namespace biphoton {

struct Correlation {
  double E = 0.0;
  double dE = 0.0;
};

/// E = (N++ + N-- - N+- - N-+) / total, with first-order Poisson error
/// propagation dE^2 = sum_i (dE/dN_i)^2 N_i. Accepts real-valued inputs so
/// the same formula serves counts and exact probabilities.
inline Correlation correlation_E(double n_pp, double n_mm, double n_pm, double n_mp) {
  const double total = n_pp + n_mm + n_pm + n_mp;
  if (!(total > 0.0)) throw std::invalid_argument("correlation_E: zero total counts");
  const double diff = n_pp + n_mm - n_pm - n_mp;
  const double e = diff / total;
  // d/dN of (P-M)/(P+M): (1-E)/T for the aligned counts, -(1+E)/T otherwise
  const double gp = (1.0 - e) / total;
  const double gm = (1.0 + e) / total;
  const double var = gp * gp * (n_pp + n_mm) + gm * gm * (n_pm + n_mp);
  return {e, std::sqrt(var)};
}

enum class RunMode { kExact, kSampled };

/// Measurement conventions for the Bell test: which plates set the analysis
/// bases and which detectors are the +/- channels of each site.
struct ChshOptions {
  std::string hwp_a = "HWP1";
  std::string hwp_b = "HWP2";
  std::string det_a_plus = "DHA";
  std::string det_a_minus = "DVA";
  std::string det_b_plus = "DHB";
  std::string det_b_minus = "DVB";
  RunMode mode = RunMode::kExact;
  double pair_rate_hz = 12000.0;
  double duration_s = 3.0;
  std::optional<uint64_t> seed;
};

/// One correlation measurement: both analyzers set, all four coincidence
/// channels read from a single run.
inline CHSHResult::Setting measure_setting(const ElementProgram& base, double theta_a_deg,
                                           double theta_b_deg, const ChshOptions& opt,
                                           uint64_t setting_index) {
  ElementProgram p = base;
  // analysis angle theta corresponds to the plate's optical axis at theta/2
  set_hwp_angle(p, opt.hwp_a, theta_a_deg / 2.0);
  set_hwp_angle(p, opt.hwp_b, theta_b_deg / 2.0);
  CoincidenceTable t = run_exact(p);

  CHSHResult::Setting s;
  s.theta_a_deg = theta_a_deg;
  s.theta_b_deg = theta_b_deg;
  if (opt.mode == RunMode::kSampled) {
    if (!opt.seed) throw std::invalid_argument("chsh: sampled mode requires a seed");
    t = sample_counts(t, opt.pair_rate_hz, opt.duration_s, derive_seed(*opt.seed, setting_index));
    s.n_pp = static_cast<double>(t.pair_count(opt.det_a_plus, opt.det_b_plus));
    s.n_mm = static_cast<double>(t.pair_count(opt.det_a_minus, opt.det_b_minus));
    s.n_pm = static_cast<double>(t.pair_count(opt.det_a_plus, opt.det_b_minus));
    s.n_mp = static_cast<double>(t.pair_count(opt.det_a_minus, opt.det_b_plus));
    const Correlation c = correlation_E(s.n_pp, s.n_mm, s.n_pm, s.n_mp);
    s.E = c.E;
    s.dE = c.dE;
  } else {
    s.n_pp = t.pair_probability(opt.det_a_plus, opt.det_b_plus);
    s.n_mm = t.pair_probability(opt.det_a_minus, opt.det_b_minus);
    s.n_pm = t.pair_probability(opt.det_a_plus, opt.det_b_minus);
    s.n_mp = t.pair_probability(opt.det_a_minus, opt.det_b_plus);
    s.E = correlation_E(s.n_pp, s.n_mm, s.n_pm, s.n_mp).E;
    s.dE = 0.0;
  }
  return s;
}

/// S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')| over the four settings, with
/// dS from the quadrature sum of the dE and, in sampled mode, the violation
/// in standard deviations (S-2)/dS.
inline CHSHResult chsh(const ElementProgram& base, double theta_a_deg, double theta_a2_deg,
                       double theta_b_deg, double theta_b2_deg, const ChshOptions& opt = {}) {
  CHSHResult r;
  r.theta_a_deg = theta_a_deg;
  r.theta_a2_deg = theta_a2_deg;
  r.theta_b_deg = theta_b_deg;
  r.theta_b2_deg = theta_b2_deg;
  r.is_sampled = opt.mode == RunMode::kSampled;

  const std::array<std::pair<double, double>, 4> settings{
      std::pair{theta_a_deg, theta_b_deg}, std::pair{theta_a_deg, theta_b2_deg},
      std::pair{theta_a2_deg, theta_b_deg}, std::pair{theta_a2_deg, theta_b2_deg}};
  for (size_t i = 0; i < 4; ++i)
    r.settings[i] = measure_setting(base, settings[i].first, settings[i].second, opt, i);

  r.S = std::abs(r.settings[0].E - r.settings[1].E + r.settings[2].E + r.settings[3].E);
  double var = 0.0;
  for (const auto& s : r.settings) var += s.dE * s.dE;
  r.dS = std::sqrt(var);
  if (r.is_sampled && r.dS > 0.0) r.sigma_violation = (r.S - 2.0) / r.dS;
  return r;
}

}  // namespace biphoton
