#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biphoton/wavepacket.hpp"

namespace biphoton {

enum class Pol : uint8_t { H = 0, V = 1 };

inline char pol_char(Pol p) { return p == Pol::H ? 'H' : 'V'; }
inline int pol_index(Pol p) { return static_cast<int>(p); }

inline std::optional<Pol> parse_pol(std::string_view s) {
  if (s == "H") return Pol::H;
  if (s == "V") return Pol::V;
  return std::nullopt;
}

/// Basis index of the two-dimensional internal (temporal-mode) space carried
/// by each creation operator. `kRef` is the reference packet's state; `kPerp`
/// the orthogonal complement of the second packet within their common span.
/// The pair of packets the basis derives from lives in LabelBook.
enum class InternalLabel : uint8_t { kRef = 0, kPerp = 1 };

using ModeId = uint16_t;

/// Interned spatial labels. Ids are stable for the lifetime of a state.
class ModeTable {
 public:
  ModeId intern(std::string_view name) {
    for (ModeId i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    names_.emplace_back(name);
    return static_cast<ModeId>(names_.size() - 1);
  }
  std::optional<ModeId> find(std::string_view name) const {
    for (ModeId i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }
  const std::string& name(ModeId id) const { return names_[id]; }
  size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

/// One creation operator: spatial mode x polarization x internal label.
struct Op {
  ModeId mode = 0;
  Pol pol = Pol::H;
  InternalLabel label = InternalLabel::kRef;

  uint32_t key() const {
    return (static_cast<uint32_t>(mode) << 2) | (static_cast<uint32_t>(pol) << 1) |
           static_cast<uint32_t>(label);
  }
  friend bool operator==(const Op& a, const Op& b) { return a.key() == b.key(); }
  friend bool operator<(const Op& a, const Op& b) { return a.key() < b.key(); }
};

/// amp * a†(op1) a†(op2) acting on vacuum, with op1 <= op2. Creation
/// operators commute, so the fixed order loses nothing.
struct Monomial {
  Op op1, op2;
  std::complex<double> amp;

  uint64_t pair_key() const {
    return (static_cast<uint64_t>(op1.key()) << 32) | op2.key();
  }
};

inline Monomial make_monomial(Op a, Op b, std::complex<double> amp) {
  if (b < a) std::swap(a, b);
  return Monomial{a, b, amp};
}

inline constexpr double kAmplitudePruneThreshold = 1e-15;

/// Sort, merge like operator pairs, drop negligible amplitudes.
inline void canonicalize(std::vector<Monomial>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return a.pair_key() < b.pair_key(); });
  size_t w = 0;
  for (size_t r = 0; r < terms.size(); ++r) {
    if (w > 0 && terms[w - 1].pair_key() == terms[r].pair_key()) {
      terms[w - 1].amp += terms[r].amp;
    } else {
      terms[w++] = terms[r];
    }
  }
  terms.resize(w);
  std::erase_if(terms, [](const Monomial& m) {
    return std::abs(m.amp) < kAmplitudePruneThreshold;
  });
}

/// Structural record of which packet's amplitude flows through a
/// (mode, polarization) slot. kMixed means amplitudes from both packets were
/// combined there and per-packet attribution is gone.
enum class SlotTag : uint8_t { kDead = 0, kRef = 1, kOth = 2, kMixed = 3 };

inline SlotTag combine_tags(SlotTag a, SlotTag b) {
  if (a == SlotTag::kDead) return b;
  if (b == SlotTag::kDead) return a;
  if (a == b) return a;
  return SlotTag::kMixed;
}

/// Derivation record of the internal-label basis: the reference packet, the
/// current second packet, and a delay-independent spatio-spectral match
/// factor for the pair. gamma_eff() is the effective coupling used when the
/// second packet is expanded over {kRef, kPerp}.
struct LabelBook {
  double wavelength_nm = 702.2;
  double bandwidth_nm = 1.5;
  double ref_delay_fs = 0.0;
  double oth_delay_fs = 0.0;
  double mode_scale = 1.0;
  bool oth_active = false;

  std::complex<double> gamma_eff() const {
    if (!oth_active) return {1.0, 0.0};
    Wavepacket r{wavelength_nm, bandwidth_nm, ref_delay_fs};
    Wavepacket o{wavelength_nm, bandwidth_nm, oth_delay_fs};
    return mode_scale * wavepacket_overlap(r, o);
  }
};

/// Exactly two photons distributed over spatial/polarization/internal modes,
/// plus the probability already removed by lossy elements. Value type; all
/// element applications are pure functions producing a new state.
struct TwoPhotonState {
  ModeTable modes;
  std::vector<Monomial> terms;
  double accumulated_loss = 0.0;
  LabelBook book;
  std::vector<std::array<SlotTag, 2>> tags;  // indexed by ModeId, then Pol

  SlotTag tag(ModeId m, Pol p) const {
    return m < tags.size() ? tags[m][pol_index(p)] : SlotTag::kDead;
  }
  void set_tag(ModeId m, Pol p, SlotTag t) {
    if (m >= tags.size()) tags.resize(m + 1, {SlotTag::kDead, SlotTag::kDead});
    tags[m][pol_index(p)] = t;
  }
  void sync_tag_size() {
    if (tags.size() < modes.size())
      tags.resize(modes.size(), {SlotTag::kDead, SlotTag::kDead});
  }

  /// Squared norm. Internal labels are orthonormal, so distinct operator
  /// pairs contribute |c|^2 and doubly occupied modes 2|c|^2.
  double norm_squared() const {
    double n = 0.0;
    for (const Monomial& t : terms)
      n += (t.op1 == t.op2 ? 2.0 : 1.0) * std::norm(t.amp);
    return n;
  }
};

}  // namespace biphoton
