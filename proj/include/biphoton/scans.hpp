#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biphoton/run.hpp"
#include "biphoton/sampling.hpp"
#include "biphoton/statistics.hpp"
#include "biphoton/table.hpp"

namespace biphoton {

struct ScanOptions {
  RunMode mode = RunMode::kExact;
  double pair_rate_hz = 12000.0;
  double duration_s = 3.0;
  std::optional<uint64_t> seed;  // per-point seeds derive from (seed, index)
};

namespace detail {

inline ScanCurve scan_delay(const ElementProgram& base, const std::string& element,
                            const std::vector<double>& tau_grid_fs, const ScanOptions& opt) {
  check_monotone(tau_grid_fs);
  if (tau_grid_fs.empty()) throw std::invalid_argument("scan: empty grid");
  const NamedElement* e = base.find_element(element);
  if (!e) throw std::invalid_argument("scan: no element named '" + element + "'");
  if (!std::holds_alternative<DelayLine>(e->element))
    throw std::invalid_argument("scan: element '" + element + "' is not a delay");
  if (opt.mode == RunMode::kSampled && !opt.seed)
    throw std::invalid_argument("scan: sampled mode requires a seed");

  ScanCurve curve;
  curve.element = element;
  curve.params = tau_grid_fs;
  curve.tables.reserve(tau_grid_fs.size());
  // Each point runs the full program independently from the initial state;
  // merged in grid order, so parallel evaluation would be observationally
  // identical.
  for (size_t i = 0; i < tau_grid_fs.size(); ++i) {
    ElementProgram p = base;
    set_delay_tau(p, element, tau_grid_fs[i]);
    CoincidenceTable t = run_exact(p);
    if (opt.mode == RunMode::kSampled)
      t = sample_counts(t, opt.pair_rate_hz, opt.duration_s, derive_seed(*opt.seed, i));
    curve.tables.push_back(std::move(t));
  }
  return curve;
}

inline std::vector<double> pair_series(const ScanCurve& c, const std::string& d1,
                                       const std::string& d2) {
  std::vector<double> v;
  v.reserve(c.size());
  for (const auto& t : c.tables)
    v.push_back(t.sampled() ? static_cast<double>(t.pair_count(d1, d2))
                            : t.pair_probability(d1, d2));
  return v;
}

}  // namespace detail

/// Two-photon interference dip scan: vary one delay line, record every
/// declared coincidence channel. The dip shows in a same-site analyzer pair.
inline ScanCurve hom_scan(const ElementProgram& base, const std::string& element,
                          const std::vector<double>& tau_grid_fs, const ScanOptions& opt = {}) {
  return detail::scan_delay(base, element, tau_grid_fs, opt);
}

/// Phase-fringe scan: same mechanics, but the grid is meant to resolve the
/// optical period (step well below wavelength/c) in a cross-site channel.
inline ScanCurve fringe_scan(const ElementProgram& base, const std::string& element,
                             const std::vector<double>& tau_grid_fs,
                             const ScanOptions& opt = {}) {
  return detail::scan_delay(base, element, tau_grid_fs, opt);
}

/// V = (C_plat - C_dip)/C_plat. The plateau is the mean of the outer 20% of
/// points on each side; the dip is the curve minimum.
inline double dip_visibility(const ScanCurve& curve, const std::string& d1,
                             const std::string& d2) {
  const size_t n = curve.size();
  if (n < 5) throw std::invalid_argument("dip_visibility: need at least 5 scan points");
  const std::vector<double> y = detail::pair_series(curve, d1, d2);
  const size_t edge = std::max<size_t>(1, n / 5);
  double plat = 0.0;
  for (size_t i = 0; i < edge; ++i) plat += y[i] + y[n - 1 - i];
  plat /= static_cast<double>(2 * edge);
  const double dip = *std::min_element(y.begin(), y.end());
  if (!(plat > 0.0)) throw std::invalid_argument("dip_visibility: degenerate curve (zero plateau)");
  return (plat - dip) / plat;
}

/// (max - min)/(max + min) over the central period of the scan.
inline double fringe_visibility(const ScanCurve& curve, const std::string& d1,
                                const std::string& d2, double period_fs) {
  if (!(period_fs > 0.0)) throw std::invalid_argument("fringe_visibility: period must be > 0");
  const size_t n = curve.size();
  if (n < 3) throw std::invalid_argument("fringe_visibility: need at least 3 scan points");
  const double span = curve.params.back() - curve.params.front();
  if (!(span >= period_fs))
    throw std::invalid_argument("fringe_visibility: scan must span at least one period");
  const std::vector<double> y = detail::pair_series(curve, d1, d2);
  const double mid = 0.5 * (curve.params.front() + curve.params.back());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (size_t i = 0; i < n; ++i) {
    if (std::abs(curve.params[i] - mid) > period_fs / 2.0) continue;
    lo = std::min(lo, y[i]);
    hi = std::max(hi, y[i]);
  }
  if (!(hi + lo > 0.0))
    throw std::invalid_argument("fringe_visibility: degenerate curve");
  return (hi - lo) / (hi + lo);
}

/// Uniform grid helper: from, from+step, ... up to and including `to` (within
/// half a step).
inline std::vector<double> uniform_grid(double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from)) throw std::invalid_argument("grid: need step > 0, to >= from");
  std::vector<double> g;
  const size_t n = static_cast<size_t>(std::floor((to - from) / step + 0.5)) + 1;
  g.reserve(n);
  for (size_t i = 0; i < n; ++i) g.push_back(from + static_cast<double>(i) * step);
  return g;
}

}  // namespace biphoton
