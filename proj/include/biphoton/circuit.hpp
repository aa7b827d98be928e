#pragma once

#include <string>
#include <vector>

#include "biphoton/elements.hpp"
#include "biphoton/state.hpp"

namespace biphoton {

/// Parser/validator message. Errors prevent compilation; warnings do not.
/// Line numbers are 1-based; line 0 marks file-level findings.
struct Diagnostic {
  enum class Severity { kError, kWarning };
  Severity severity = Severity::kError;
  int line = 0;
  std::string message;
  std::string token;
};

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  for (const Diagnostic& d : ds)
    if (d.severity == Diagnostic::Severity::kError) return true;
  return false;
}

struct PhotonDecl {
  std::string name;
  std::string mode;
  Pol pol = Pol::H;
  double wavelength_nm = 0.0;
  double bandwidth_nm = 0.0;
  double delay_fs = 0.0;
  double mode_overlap = 1.0;
  int line = 0;

  friend bool operator==(const PhotonDecl& a, const PhotonDecl& b) {
    return a.name == b.name && a.mode == b.mode && a.pol == b.pol &&
           a.wavelength_nm == b.wavelength_nm && a.bandwidth_nm == b.bandwidth_nm &&
           a.delay_fs == b.delay_fs && a.mode_overlap == b.mode_overlap;
  }
};

struct ElementDecl {
  std::string name;
  Element element;
  int line = 0;

  friend bool operator==(const ElementDecl& a, const ElementDecl& b) {
    return a.name == b.name && a.element == b.element;
  }
};

struct DetectorDecl {
  std::string name;
  std::string mode;
  Pol pol = Pol::H;
  int line = 0;

  friend bool operator==(const DetectorDecl& a, const DetectorDecl& b) {
    return a.name == b.name && a.mode == b.mode && a.pol == b.pol;
  }
};

struct DiscardDecl {
  std::string mode;
  int line = 0;

  friend bool operator==(const DiscardDecl& a, const DiscardDecl& b) {
    return a.mode == b.mode;
  }
};

struct CoincidenceDecl {
  std::string d1, d2;
  int line = 0;

  friend bool operator==(const CoincidenceDecl& a, const CoincidenceDecl& b) {
    return a.d1 == b.d1 && a.d2 == b.d2;
  }
};

/// Semantic model of one circuit file. Statement order is meaningful for
/// elements and preserved for everything else; comments are not kept.
struct Circuit {
  std::vector<PhotonDecl> photons;
  std::vector<ElementDecl> elements;
  std::vector<DetectorDecl> detectors;
  std::vector<DiscardDecl> discards;
  std::vector<CoincidenceDecl> coincidences;

  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.photons == b.photons && a.elements == b.elements && a.detectors == b.detectors &&
           a.discards == b.discards && a.coincidences == b.coincidences;
  }
};

/// Reserved vacuum input labels: vac, vac1, vac2, ...
inline bool is_vacuum_label(const std::string& s) {
  if (s.rfind("vac", 0) != 0) return false;
  for (size_t i = 3; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace biphoton
