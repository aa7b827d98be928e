#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "biphoton/circuit.hpp"

namespace biphoton {

/// Whole-file checks on a parsed circuit: photon count, name uniqueness,
/// port feed-forward discipline, termination of live modes, coincidence
/// references, finite parameter values. Returns diagnostics only; an empty
/// error set means the circuit is compilable.
inline std::vector<Diagnostic> validate(const Circuit& c) {
  std::vector<Diagnostic> out;
  auto error = [&](int line, std::string msg, std::string tok = {}) {
    out.push_back({Diagnostic::Severity::kError, line, std::move(msg), std::move(tok)});
  };
  auto warning = [&](int line, std::string msg, std::string tok = {}) {
    out.push_back({Diagnostic::Severity::kWarning, line, std::move(msg), std::move(tok)});
  };

  if (c.photons.size() != 2)
    error(c.photons.empty() ? 0 : c.photons.back().line, "exactly two photons required");

  // name uniqueness across photons, elements and detectors
  std::map<std::string, int> names;
  auto claim_name = [&](const std::string& n, int line) {
    auto [it, fresh] = names.emplace(n, line);
    if (!fresh) error(line, "duplicate name '" + n + "'", n);
  };
  for (const auto& p : c.photons) claim_name(p.name, p.line);
  for (const auto& e : c.elements) claim_name(e.name, e.line);
  for (const auto& d : c.detectors) claim_name(d.name, d.line);

  auto finite = [&](double v, int line, const std::string& what) {
    if (!std::isfinite(v)) error(line, what + " must be finite");
  };

  // photon declarations
  std::set<std::string> photon_modes;
  for (const auto& p : c.photons) {
    if (is_vacuum_label(p.mode))
      error(p.line, "photon mode '" + p.mode + "' uses a reserved vacuum label", p.mode);
    if (!photon_modes.insert(p.mode).second)
      error(p.line, "duplicate photon mode '" + p.mode + "'", p.mode);
    if (!(p.wavelength_nm > 0.0)) error(p.line, "wavelength_nm must be > 0");
    if (!(p.bandwidth_nm > 0.0)) error(p.line, "bandwidth_nm must be > 0");
    finite(p.delay_fs, p.line, "delay_fs");
    if (!(p.mode_overlap >= 0.0 && p.mode_overlap <= 1.0))
      error(p.line, "mode_overlap must lie in [0, 1]");
  }

  // port discipline: labels are created by photons, by element outputs, or
  // by first use of a reserved vacuum label as an input
  std::set<std::string> live = photon_modes;
  std::set<std::string> defined = photon_modes;
  auto use_input = [&](const std::string& l, int line) {
    if (live.count(l)) {
      live.erase(l);
      return;
    }
    if (is_vacuum_label(l) && !defined.count(l)) {
      defined.insert(l);  // fresh vacuum port, consumed immediately
      return;
    }
    error(line, "input '" + l + "' is not a live mode", l);
  };
  auto make_output = [&](const std::string& l, int line) {
    if (is_vacuum_label(l)) {
      error(line, "output '" + l + "' uses a reserved vacuum label", l);
      return;
    }
    if (defined.count(l)) {
      error(line, "output '" + l + "' is already in use", l);
      return;
    }
    defined.insert(l);
    live.insert(l);
  };
  auto use_in_place = [&](const std::string& l, int line) {
    if (!live.count(l)) error(line, "mode '" + l + "' is not live here", l);
  };

  for (const auto& e : c.elements) {
    const int line = e.line;
    if (const auto* bs = std::get_if<Beamsplitter>(&e.element)) {
      use_input(bs->in1, line);
      use_input(bs->in2, line);
      make_output(bs->out1, line);
      make_output(bs->out2, line);
    } else if (const auto* pbs = std::get_if<PolarizingBeamsplitter>(&e.element)) {
      use_input(pbs->in1, line);
      use_input(pbs->in2, line);
      make_output(pbs->out1, line);
      make_output(pbs->out2, line);
    } else if (const auto* ph = std::get_if<PhaseShift>(&e.element)) {
      use_in_place(ph->mode, line);
      finite(ph->phi_rad, line, "phi_rad");
    } else if (const auto* h = std::get_if<HalfWavePlate>(&e.element)) {
      use_in_place(h->mode, line);
      finite(h->angle_deg, line, "angle_deg");
    } else if (const auto* d = std::get_if<DelayLine>(&e.element)) {
      use_in_place(d->mode, line);
      finite(d->tau_fs, line, "tau_fs");
    } else if (const auto* po = std::get_if<Polarizer>(&e.element)) {
      use_in_place(po->mode, line);
      finite(po->angle_deg, line, "angle_deg");
      if (!(po->extinction >= 1.0)) error(line, "extinction must be >= 1");
    }
  }

  // terminal bookkeeping: every live mode must end in detectors or a discard
  std::set<std::string> detected_modes, discarded_modes;
  std::set<std::pair<std::string, Pol>> detector_slots;
  for (const auto& d : c.detectors) {
    if (!live.count(d.mode))
      error(d.line, "detector '" + d.name + "' references mode '" + d.mode +
                        "' which is not live at the end", d.mode);
    if (!detector_slots.insert({d.mode, d.pol}).second)
      error(d.line, "duplicate detector on mode '" + d.mode + "' pol " + pol_char(d.pol));
    detected_modes.insert(d.mode);
  }
  for (const auto& d : c.discards) {
    if (!live.count(d.mode))
      error(d.line, "discard references mode '" + d.mode + "' which is not live at the end",
            d.mode);
    if (!discarded_modes.insert(d.mode).second)
      error(d.line, "mode '" + d.mode + "' discarded twice", d.mode);
  }
  for (const auto& m : discarded_modes)
    if (detected_modes.count(m)) error(0, "mode '" + m + "' is both detected and discarded", m);
  for (const auto& m : live) {
    if (detected_modes.count(m) || discarded_modes.count(m)) continue;
    warning(0, "unterminated mode '" + m + "'", m);
  }
  for (const auto& m : detected_modes) {
    if (discarded_modes.count(m)) continue;
    for (Pol p : {Pol::H, Pol::V})
      if (!detector_slots.count({m, p}))
        warning(0, std::string("mode '") + m + "' has no detector for pol " + pol_char(p), m);
  }

  // coincidence references
  std::set<std::string> detector_names;
  for (const auto& d : c.detectors) detector_names.insert(d.name);
  for (const auto& co : c.coincidences) {
    if (co.d1 == co.d2)
      error(co.line, "coincidence pair must name two distinct detectors", co.d1);
    for (const std::string* n : {&co.d1, &co.d2})
      if (!detector_names.count(*n))
        error(co.line, "coincidence references unknown detector '" + *n + "'", *n);
  }

  return out;
}

}  // namespace biphoton
