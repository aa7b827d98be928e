#pragma once

// Random feed-forward-valid circuits for property tests: grammar-complete
// element mix, every live mode terminated, delays placed by try-apply so the
// generated circuit stays within the simulator's exact class.

#include <random>
#include <string>
#include <vector>

#include "biphoton/biphoton.hpp"

namespace biphoton::testgen {

class Rng {
 public:
  explicit Rng(uint64_t seed) : e_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(e_() >> 11) * 0x1.0p-53;
  }
  uint64_t below(uint64_t n) { return e_() % n; }
  bool chance(double p) { return uniform(0, 1) < p; }

 private:
  std::mt19937_64 e_;
};

inline Circuit random_circuit(uint64_t seed) {
  Rng rng(seed);
  Circuit c;

  const double delay1 = rng.chance(0.5) ? 0.0 : rng.uniform(-300, 300);
  const double delay2 = rng.chance(0.5) ? delay1 : rng.uniform(-300, 300);
  const double overlap = rng.chance(0.75) ? 1.0 : rng.uniform(0.2, 1.0);
  c.photons.push_back({"PS1", "p0", Pol::H, 702.2, 1.5, delay1, 1.0, 0});
  c.photons.push_back({"PS2", "p1", rng.chance(0.8) ? Pol::V : Pol::H, 702.2, 1.5, delay2,
                       overlap, 0});

  // generate against a live state so delay placements can be vetted
  TwoPhotonState state = initial_state(
      {PhotonInit{"p0", c.photons[0].pol, Wavepacket{702.2, 1.5, delay1}, 1.0},
       PhotonInit{"p1", c.photons[1].pol, Wavepacket{702.2, 1.5, delay2}, overlap}});

  std::vector<std::string> live{"p0", "p1"};
  int fresh = 0;
  int vac = 0;
  const int n_elements = 1 + static_cast<int>(rng.below(10));
  for (int k = 0; k < n_elements; ++k) {
    const std::string name = "E" + std::to_string(k);
    const std::string mode = live[rng.below(live.size())];
    switch (rng.below(6)) {
      case 0: {
        std::string other =
            live.size() > 1 && rng.chance(0.6) ? live[rng.below(live.size())] : std::string();
        if (other.empty() || other == mode) other = "vac" + std::to_string(++vac);
        const std::string o1 = "w" + std::to_string(fresh++);
        const std::string o2 = "w" + std::to_string(fresh++);
        const Beamsplitter bs{mode, other, o1, o2};
        state = apply_beamsplitter(state, bs);
        c.elements.push_back({name, bs, 0});
        std::erase(live, mode);
        std::erase(live, other);
        live.push_back(o1);
        live.push_back(o2);
        break;
      }
      case 1: {
        std::string other =
            live.size() > 1 && rng.chance(0.6) ? live[rng.below(live.size())] : std::string();
        if (other.empty() || other == mode) other = "vac" + std::to_string(++vac);
        const std::string o1 = "w" + std::to_string(fresh++);
        const std::string o2 = "w" + std::to_string(fresh++);
        const PolarizingBeamsplitter pbs{mode, other, o1, o2};
        state = apply_pbs(state, pbs);
        c.elements.push_back({name, pbs, 0});
        std::erase(live, mode);
        std::erase(live, other);
        live.push_back(o1);
        live.push_back(o2);
        break;
      }
      case 2: {
        const PhaseShift ps{mode, rng.uniform(-2 * kPi, 2 * kPi)};
        state = apply_phase(state, ps);
        c.elements.push_back({name, ps, 0});
        break;
      }
      case 3: {
        const double angle =
            rng.chance(0.3) ? 22.5 : (rng.chance(0.3) ? 45.0 : rng.uniform(-90, 90));
        const HalfWavePlate h{mode, angle};
        state = apply_hwp(state, h);
        c.elements.push_back({name, h, 0});
        break;
      }
      case 4: {
        const Polarizer po{mode, rng.uniform(-90, 90), 1.0 + rng.uniform(0, 1e4)};
        state = apply_polarizer(state, po);
        c.elements.push_back({name, po, 0});
        break;
      }
      case 5: {
        const DelayLine d{mode, rng.uniform(-500, 500)};
        try {
          state = apply_delay(state, d);
          c.elements.push_back({name, d, 0});
        } catch (const unsupported_circuit&) {
          // placement outside the exact class; drop the element
        }
        break;
      }
    }
  }

  int det = 0;
  for (const std::string& m : live) {
    if (rng.chance(0.2)) {
      c.discards.push_back({m, 0});
    } else {
      c.detectors.push_back({"D" + std::to_string(det++), m, Pol::H, 0});
      c.detectors.push_back({"D" + std::to_string(det++), m, Pol::V, 0});
    }
  }
  for (size_t i = 1; i < c.detectors.size(); i += 2)
    if (rng.chance(0.6))
      c.coincidences.push_back({c.detectors[i - 1].name, c.detectors[i].name, 0});
  return c;
}

}  // namespace biphoton::testgen
