#pragma once

#include <string>

#include "biphoton/circuit.hpp"
#include "biphoton/numfmt.hpp"

namespace biphoton {

/// Canonical text form. parse_circuit(format_circuit(c)) reproduces c
/// structurally; comments are not preserved.
inline std::string format_circuit(const Circuit& c) {
  std::string out;
  auto num = [](double v) { return format_double(v); };

  for (const auto& p : c.photons) {
    out += "photon " + p.name + " mode=" + p.mode + " pol=" + pol_char(p.pol) +
           " wavelength_nm=" + num(p.wavelength_nm) + " bandwidth_nm=" + num(p.bandwidth_nm) +
           " delay_fs=" + num(p.delay_fs);
    if (p.mode_overlap != 1.0) out += " mode_overlap=" + num(p.mode_overlap);
    out += "\n";
  }
  for (const auto& e : c.elements) {
    if (const auto* bs = std::get_if<Beamsplitter>(&e.element)) {
      out += "bs " + e.name + " in=" + bs->in1 + "," + bs->in2 + " out=" + bs->out1 + "," +
             bs->out2 + "\n";
    } else if (const auto* pbs = std::get_if<PolarizingBeamsplitter>(&e.element)) {
      out += "pbs " + e.name + " in=" + pbs->in1 + "," + pbs->in2 + " out=" + pbs->out1 + "," +
             pbs->out2 + "\n";
    } else if (const auto* ph = std::get_if<PhaseShift>(&e.element)) {
      out += "phase " + e.name + " mode=" + ph->mode + " phi_rad=" + num(ph->phi_rad) + "\n";
    } else if (const auto* h = std::get_if<HalfWavePlate>(&e.element)) {
      out += "hwp " + e.name + " mode=" + h->mode + " angle_deg=" + num(h->angle_deg) + "\n";
    } else if (const auto* d = std::get_if<DelayLine>(&e.element)) {
      out += "delay " + e.name + " mode=" + d->mode + " tau_fs=" + num(d->tau_fs) + "\n";
    } else if (const auto* po = std::get_if<Polarizer>(&e.element)) {
      out += "pol " + e.name + " mode=" + po->mode + " angle_deg=" + num(po->angle_deg) +
             " extinction=" + num(po->extinction) + "\n";
    }
  }
  for (const auto& d : c.discards) out += "discard " + d.mode + "\n";
  for (const auto& d : c.detectors)
    out += "detector " + d.name + " mode=" + d.mode + " pol=" + std::string(1, pol_char(d.pol)) +
           "\n";
  for (const auto& co : c.coincidences) out += "coincidence " + co.d1 + "," + co.d2 + "\n";
  return out;
}

}  // namespace biphoton
