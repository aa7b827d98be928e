#pragma once

#include <string>
#include <variant>

namespace biphoton {

// Optical elements. Four-port elements consume their two input labels and
// produce two fresh output labels; single-mode elements act in place.

struct Beamsplitter {  // 50:50, reflection picks up a factor i
  std::string in1, in2, out1, out2;
  friend bool operator==(const Beamsplitter&, const Beamsplitter&) = default;
};

struct PolarizingBeamsplitter {  // transmits H, reflects V with a factor i
  std::string in1, in2, out1, out2;
  friend bool operator==(const PolarizingBeamsplitter&, const PolarizingBeamsplitter&) = default;
};

struct PhaseShift {
  std::string mode;
  double phi_rad = 0.0;
  friend bool operator==(const PhaseShift&, const PhaseShift&) = default;
};

struct HalfWavePlate {  // optical axis at angle_deg from H
  std::string mode;
  double angle_deg = 0.0;
  friend bool operator==(const HalfWavePlate&, const HalfWavePlate&) = default;
};

struct DelayLine {
  std::string mode;
  double tau_fs = 0.0;
  friend bool operator==(const DelayLine&, const DelayLine&) = default;
};

struct Polarizer {  // pass axis at angle_deg; blocked axis attenuated by 1/sqrt(extinction)
  std::string mode;
  double angle_deg = 0.0;
  double extinction = 1.0;
  friend bool operator==(const Polarizer&, const Polarizer&) = default;
};

using Element = std::variant<Beamsplitter, PolarizingBeamsplitter, PhaseShift, HalfWavePlate,
                             DelayLine, Polarizer>;

inline const char* element_kind(const Element& e) {
  struct V {
    const char* operator()(const Beamsplitter&) const { return "bs"; }
    const char* operator()(const PolarizingBeamsplitter&) const { return "pbs"; }
    const char* operator()(const PhaseShift&) const { return "phase"; }
    const char* operator()(const HalfWavePlate&) const { return "hwp"; }
    const char* operator()(const DelayLine&) const { return "delay"; }
    const char* operator()(const Polarizer&) const { return "pol"; }
  };
  return std::visit(V{}, e);
}

}  // namespace biphoton
