#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biphoton/circuit.hpp"
#include "biphoton/evolve.hpp"
#include "biphoton/validate.hpp"

namespace biphoton {

struct NamedElement {
  std::string name;
  Element element;
};

/// Executable form of a validated circuit: initial photons, elements in file
/// order, terminal assignments and the declared coincidence pairs.
struct ElementProgram {
  std::vector<PhotonInit> photons;
  std::vector<NamedElement> elements;
  std::vector<DetectorDecl> detectors;
  std::vector<std::string> discards;
  std::vector<std::pair<std::string, std::string>> coincidence_pairs;

  const NamedElement* find_element(const std::string& name) const {
    for (const auto& e : elements)
      if (e.name == name) return &e;
    return nullptr;
  }
  NamedElement* find_element(const std::string& name) {
    for (auto& e : elements)
      if (e.name == name) return &e;
    return nullptr;
  }
  std::optional<std::string> detector_mode(const std::string& det) const {
    for (const auto& d : detectors)
      if (d.name == det) return d.mode;
    return std::nullopt;
  }
};

/// Lower a circuit to an ElementProgram. Precondition: validate(c) reports
/// no errors; violations raise logic_error.
inline ElementProgram compile(const Circuit& c) {
  if (has_errors(validate(c)))
    throw std::logic_error("compile: circuit has validation errors");
  ElementProgram p;
  for (const auto& ph : c.photons)
    p.photons.push_back({ph.mode, ph.pol,
                         Wavepacket{ph.wavelength_nm, ph.bandwidth_nm, ph.delay_fs},
                         ph.mode_overlap});
  for (const auto& e : c.elements) p.elements.push_back({e.name, e.element});
  p.detectors = c.detectors;
  for (const auto& d : c.discards) p.discards.push_back(d.mode);
  for (const auto& co : c.coincidences) p.coincidence_pairs.push_back({co.d1, co.d2});
  return p;
}

// Parameter setters used by scans and measurement drivers.

inline void set_delay_tau(ElementProgram& p, const std::string& name, double tau_fs) {
  NamedElement* e = p.find_element(name);
  if (!e) throw std::invalid_argument("set_delay_tau: no element named '" + name + "'");
  auto* d = std::get_if<DelayLine>(&e->element);
  if (!d) throw std::invalid_argument("set_delay_tau: element '" + name + "' is not a delay");
  d->tau_fs = tau_fs;
}

inline void set_phase_phi(ElementProgram& p, const std::string& name, double phi_rad) {
  NamedElement* e = p.find_element(name);
  if (!e) throw std::invalid_argument("set_phase_phi: no element named '" + name + "'");
  auto* ph = std::get_if<PhaseShift>(&e->element);
  if (!ph) throw std::invalid_argument("set_phase_phi: element '" + name + "' is not a phase");
  ph->phi_rad = phi_rad;
}

inline void set_hwp_angle(ElementProgram& p, const std::string& name, double angle_deg) {
  NamedElement* e = p.find_element(name);
  if (!e) throw std::invalid_argument("set_hwp_angle: no element named '" + name + "'");
  auto* h = std::get_if<HalfWavePlate>(&e->element);
  if (!h) throw std::invalid_argument("set_hwp_angle: element '" + name + "' is not a hwp");
  h->angle_deg = angle_deg;
}

}  // namespace biphoton
