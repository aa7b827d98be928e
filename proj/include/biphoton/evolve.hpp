#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "biphoton/elements.hpp"
#include "biphoton/state.hpp"

namespace biphoton {

/// Raised when a circuit leaves the exactly representable class: the state
/// carries at most two distinct wavepackets, and a delay that would need a
/// third packet, or that lands on a mode where packet attribution was lost,
/// is rejected instead of approximated.
class unsupported_circuit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhotonInit {
  std::string mode;
  Pol pol = Pol::H;
  Wavepacket packet;
  double mode_overlap = 1.0;  // spatio-spectral match to the partner photon
};

namespace detail {

// angle below which a rotation is treated as exactly diagonal/antidiagonal
// for attribution bookkeeping (amplitudes always use the full value)
inline constexpr double kTagTol = 1e-12;

inline std::complex<double> branch_weight(const std::complex<double>& gamma, InternalLabel l) {
  if (l == InternalLabel::kRef) return gamma;
  return {std::sqrt(std::max(0.0, 1.0 - std::norm(gamma))), 0.0};
}

struct OpImage {
  Op op;
  std::complex<double> w;
};

template <typename F>
inline std::vector<Monomial> map_terms(const std::vector<Monomial>& terms, F&& image_of) {
  std::vector<Monomial> out;
  out.reserve(terms.size() * 2);
  std::vector<OpImage> ia, ib;
  for (const Monomial& t : terms) {
    ia.clear();
    ib.clear();
    image_of(t.op1, ia);
    image_of(t.op2, ib);
    for (const OpImage& x : ia)
      for (const OpImage& y : ib)
        out.push_back(make_monomial(x.op, y.op, t.amp * x.w * y.w));
  }
  canonicalize(out);
  return out;
}

inline void require_fresh_output(const TwoPhotonState& s, const std::string& label,
                                 const char* what) {
  auto id = s.modes.find(label);
  if (!id) return;
  if (s.tag(*id, Pol::H) != SlotTag::kDead || s.tag(*id, Pol::V) != SlotTag::kDead)
    throw std::invalid_argument(std::string(what) + ": output port '" + label +
                                "' is already a live mode");
}

inline void require_distinct_ports(const std::string& in1, const std::string& in2,
                                   const std::string& out1, const std::string& out2,
                                   const char* what) {
  const std::array<const std::string*, 4> p{&in1, &in2, &out1, &out2};
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = i + 1; j < 4; ++j)
      if (*p[i] == *p[j])
        throw std::invalid_argument(std::string(what) + ": ports must be four distinct labels");
}

/// Rewrite operators on kOth slots from the old branch pattern to the new
/// one. Collapsing is linear, so it can run term by term: each branch label
/// is projected back with the conjugate old weight and re-expanded with the
/// new weights; canonicalize() sums the pieces.
inline std::vector<Monomial> reexpress(const std::vector<Monomial>& terms,
                                       const TwoPhotonState& old_state,
                                       const TwoPhotonState& new_state,
                                       std::complex<double> gamma_old,
                                       std::complex<double> gamma_new) {
  std::vector<Monomial> out;
  out.reserve(terms.size() * 2);
  const std::array<InternalLabel, 2> both{InternalLabel::kRef, InternalLabel::kPerp};
  for (const Monomial& t : terms) {
    Op a = t.op1, b = t.op2;
    std::complex<double> base = t.amp;
    for (Op* o : {&a, &b}) {
      if (old_state.tag(o->mode, o->pol) == SlotTag::kOth) {
        base *= std::conj(branch_weight(gamma_old, o->label));
        o->label = InternalLabel::kRef;
      }
    }
    const bool ea = new_state.tag(a.mode, a.pol) == SlotTag::kOth;
    const bool eb = new_state.tag(b.mode, b.pol) == SlotTag::kOth;
    for (InternalLabel la : ea ? both : std::array<InternalLabel, 2>{a.label, a.label}) {
      for (InternalLabel lb : eb ? both : std::array<InternalLabel, 2>{b.label, b.label}) {
        std::complex<double> w = base;
        if (ea) w *= branch_weight(gamma_new, la);
        if (eb) w *= branch_weight(gamma_new, lb);
        out.push_back(make_monomial(Op{a.mode, a.pol, la}, Op{b.mode, b.pol, lb}, w));
        if (!eb) break;
      }
      if (!ea) break;
    }
  }
  canonicalize(out);
  return out;
}

}  // namespace detail

/// Build the two-photon input state. Internal labels are assigned by
/// Gram-Schmidt on the two wavepackets: photon 1 defines kRef, photon 2 is
/// expanded as gamma*kRef + sqrt(1-|gamma|^2)*kPerp.
inline TwoPhotonState initial_state(const std::vector<PhotonInit>& photons) {
  if (photons.size() != 2)
    throw std::invalid_argument("initial_state: exactly two photons required");
  const PhotonInit& p1 = photons[0];
  const PhotonInit& p2 = photons[1];
  if (p1.mode == p2.mode)
    throw std::invalid_argument("initial_state: photons must start on distinct modes");
  for (const PhotonInit* p : {&p1, &p2}) {
    check_wavepacket(p->packet);
    if (!(p->mode_overlap >= 0.0 && p->mode_overlap <= 1.0))
      throw std::invalid_argument("initial_state: mode_overlap must lie in [0, 1]");
  }

  TwoPhotonState s;
  s.book.wavelength_nm = p1.packet.center_wavelength_nm;
  s.book.bandwidth_nm = p1.packet.bandwidth_fwhm_nm;
  s.book.ref_delay_fs = p1.packet.delay_fs;
  s.book.oth_delay_fs = p2.packet.delay_fs;
  s.book.mode_scale = p1.mode_overlap * p2.mode_overlap;
  const std::complex<double> gamma =
      s.book.mode_scale * wavepacket_overlap(p1.packet, p2.packet);

  const ModeId m1 = s.modes.intern(p1.mode);
  const ModeId m2 = s.modes.intern(p2.mode);
  s.sync_tag_size();
  const Op ref1{m1, p1.pol, InternalLabel::kRef};
  if (gamma == std::complex<double>(1.0, 0.0)) {
    s.book.oth_active = false;
    s.set_tag(m1, p1.pol, SlotTag::kRef);
    s.set_tag(m2, p2.pol, SlotTag::kRef);
    s.terms.push_back(make_monomial(ref1, Op{m2, p2.pol, InternalLabel::kRef}, 1.0));
  } else {
    s.book.oth_active = true;
    s.set_tag(m1, p1.pol, SlotTag::kRef);
    s.set_tag(m2, p2.pol, SlotTag::kOth);
    s.terms.push_back(
        make_monomial(ref1, Op{m2, p2.pol, InternalLabel::kRef}, gamma));
    s.terms.push_back(make_monomial(
        ref1, Op{m2, p2.pol, InternalLabel::kPerp},
        detail::branch_weight(gamma, InternalLabel::kPerp)));
    canonicalize(s.terms);
  }
  return s;
}

/// in1 -> (i out1 + out2)/sqrt(2), in2 -> (out1 + i out2)/sqrt(2), for every
/// polarization and internal label.
inline TwoPhotonState apply_beamsplitter(const TwoPhotonState& s, const Beamsplitter& bs) {
  detail::require_distinct_ports(bs.in1, bs.in2, bs.out1, bs.out2, "beamsplitter");
  detail::require_fresh_output(s, bs.out1, "beamsplitter");
  detail::require_fresh_output(s, bs.out2, "beamsplitter");

  TwoPhotonState out = s;
  const ModeId a = out.modes.intern(bs.in1);
  const ModeId b = out.modes.intern(bs.in2);
  const ModeId o1 = out.modes.intern(bs.out1);
  const ModeId o2 = out.modes.intern(bs.out2);
  out.sync_tag_size();

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::complex<double> r(0.0, inv_sqrt2);  // reflection
  const std::complex<double> t(inv_sqrt2, 0.0);  // transmission
  out.terms = detail::map_terms(s.terms, [&](const Op& op, std::vector<detail::OpImage>& im) {
    if (op.mode == a) {
      im.push_back({Op{o1, op.pol, op.label}, r});
      im.push_back({Op{o2, op.pol, op.label}, t});
    } else if (op.mode == b) {
      im.push_back({Op{o1, op.pol, op.label}, t});
      im.push_back({Op{o2, op.pol, op.label}, r});
    } else {
      im.push_back({op, 1.0});
    }
  });

  for (Pol p : {Pol::H, Pol::V}) {
    const SlotTag merged = combine_tags(out.tag(a, p), out.tag(b, p));
    out.set_tag(o1, p, merged);
    out.set_tag(o2, p, merged);
    out.set_tag(a, p, SlotTag::kDead);
    out.set_tag(b, p, SlotTag::kDead);
  }
  return out;
}

/// H transmits (in1->out1, in2->out2); V reflects with a factor i
/// (in1->out2, in2->out1).
inline TwoPhotonState apply_pbs(const TwoPhotonState& s, const PolarizingBeamsplitter& pbs) {
  detail::require_distinct_ports(pbs.in1, pbs.in2, pbs.out1, pbs.out2, "pbs");
  detail::require_fresh_output(s, pbs.out1, "pbs");
  detail::require_fresh_output(s, pbs.out2, "pbs");

  TwoPhotonState out = s;
  const ModeId a = out.modes.intern(pbs.in1);
  const ModeId b = out.modes.intern(pbs.in2);
  const ModeId o1 = out.modes.intern(pbs.out1);
  const ModeId o2 = out.modes.intern(pbs.out2);
  out.sync_tag_size();

  const std::complex<double> i1(0.0, 1.0);
  out.terms = detail::map_terms(s.terms, [&](const Op& op, std::vector<detail::OpImage>& im) {
    if (op.mode == a) {
      if (op.pol == Pol::H)
        im.push_back({Op{o1, Pol::H, op.label}, 1.0});
      else
        im.push_back({Op{o2, Pol::V, op.label}, i1});
    } else if (op.mode == b) {
      if (op.pol == Pol::H)
        im.push_back({Op{o2, Pol::H, op.label}, 1.0});
      else
        im.push_back({Op{o1, Pol::V, op.label}, i1});
    } else {
      im.push_back({op, 1.0});
    }
  });

  out.set_tag(o1, Pol::H, out.tag(a, Pol::H));
  out.set_tag(o1, Pol::V, out.tag(b, Pol::V));
  out.set_tag(o2, Pol::H, out.tag(b, Pol::H));
  out.set_tag(o2, Pol::V, out.tag(a, Pol::V));
  for (Pol p : {Pol::H, Pol::V}) {
    out.set_tag(a, p, SlotTag::kDead);
    out.set_tag(b, p, SlotTag::kDead);
  }
  return out;
}

/// Multiply every creation operator on the mode by e^{i phi}. A label that
/// carries no amplitude is a no-op.
inline TwoPhotonState apply_phase(const TwoPhotonState& s, const PhaseShift& ps) {
  if (!std::isfinite(ps.phi_rad))
    throw std::invalid_argument("phase: phi must be finite");
  const auto m = s.modes.find(ps.mode);
  if (!m) return s;
  const std::complex<double> f = std::polar(1.0, ps.phi_rad);
  TwoPhotonState out = s;
  for (Monomial& t : out.terms) {
    if (t.op1.mode == *m) t.amp *= f;
    if (t.op2.mode == *m) t.amp *= f;
  }
  return out;
}

/// Jones action H -> cos(2t) H + sin(2t) V, V -> sin(2t) H - cos(2t) V.
inline TwoPhotonState apply_hwp(const TwoPhotonState& s, const HalfWavePlate& hwp) {
  if (!std::isfinite(hwp.angle_deg))
    throw std::invalid_argument("hwp: angle must be finite");
  const auto mo = s.modes.find(hwp.mode);
  if (!mo) return s;
  const ModeId m = *mo;
  const double c2 = std::cos(2.0 * deg2rad(hwp.angle_deg));
  const double s2 = std::sin(2.0 * deg2rad(hwp.angle_deg));

  TwoPhotonState out = s;
  out.terms = detail::map_terms(s.terms, [&](const Op& op, std::vector<detail::OpImage>& im) {
    if (op.mode != m) {
      im.push_back({op, 1.0});
    } else if (op.pol == Pol::H) {
      im.push_back({Op{m, Pol::H, op.label}, c2});
      im.push_back({Op{m, Pol::V, op.label}, s2});
    } else {
      im.push_back({Op{m, Pol::H, op.label}, s2});
      im.push_back({Op{m, Pol::V, op.label}, -c2});
    }
  });

  if (std::abs(s2) < detail::kTagTol) {
    // diagonal: tags unchanged
  } else if (std::abs(c2) < detail::kTagTol) {
    const SlotTag th = out.tag(m, Pol::H), tv = out.tag(m, Pol::V);
    out.set_tag(m, Pol::H, tv);
    out.set_tag(m, Pol::V, th);
  } else {
    const SlotTag t = combine_tags(out.tag(m, Pol::H), out.tag(m, Pol::V));
    out.set_tag(m, Pol::H, t);
    out.set_tag(m, Pol::V, t);
  }
  return out;
}

/// Attenuate the blocked axis by sqrt(1/extinction); the removed squared
/// norm is booked as loss.
inline TwoPhotonState apply_polarizer(const TwoPhotonState& s, const Polarizer& pol) {
  if (!(pol.extinction >= 1.0))
    throw std::invalid_argument("polarizer: extinction must be >= 1");
  if (!std::isfinite(pol.angle_deg))
    throw std::invalid_argument("polarizer: angle must be finite");
  const auto mo = s.modes.find(pol.mode);
  if (!mo) return s;
  const ModeId m = *mo;

  const double r = std::sqrt(1.0 / pol.extinction);
  const double c = std::cos(deg2rad(pol.angle_deg));
  const double sn = std::sin(deg2rad(pol.angle_deg));
  const double j00 = c * c + sn * sn * r;
  const double j01 = c * sn * (1.0 - r);
  const double j11 = sn * sn + c * c * r;

  TwoPhotonState out = s;
  out.terms = detail::map_terms(s.terms, [&](const Op& op, std::vector<detail::OpImage>& im) {
    if (op.mode != m) {
      im.push_back({op, 1.0});
    } else if (op.pol == Pol::H) {
      im.push_back({Op{m, Pol::H, op.label}, j00});
      im.push_back({Op{m, Pol::V, op.label}, j01});
    } else {
      im.push_back({Op{m, Pol::H, op.label}, j01});
      im.push_back({Op{m, Pol::V, op.label}, j11});
    }
  });
  const double removed = s.norm_squared() - out.norm_squared();
  out.accumulated_loss += std::max(0.0, removed);

  if (std::abs(j01) >= kAmplitudePruneThreshold) {
    const SlotTag t = combine_tags(out.tag(m, Pol::H), out.tag(m, Pol::V));
    out.set_tag(m, Pol::H, t);
    out.set_tag(m, Pol::V, t);
  }
  return out;
}

/// Time-shift the packet flowing through a mode. The shift moves the packet's
/// delay bookkeeping; the optical phase e^{i w0 tau} enters through the
/// overlap's phase when the shifted packet is re-expanded over the label
/// basis. Supported placements keep the state within two distinct packets;
/// anything else raises unsupported_circuit.
inline TwoPhotonState apply_delay(const TwoPhotonState& s, const DelayLine& d) {
  if (!std::isfinite(d.tau_fs))
    throw std::invalid_argument("delay: tau must be finite");
  const auto mo = s.modes.find(d.mode);
  if (!mo) throw std::invalid_argument("delay: unknown mode '" + d.mode + "'");
  const ModeId m = *mo;
  if (d.tau_fs == 0.0) return s;

  const SlotTag th = s.tag(m, Pol::H), tv = s.tag(m, Pol::V);
  if (th == SlotTag::kDead && tv == SlotTag::kDead) return s;
  if (th == SlotTag::kMixed || tv == SlotTag::kMixed)
    throw unsupported_circuit("delay on '" + d.mode +
                              "': packet attribution was lost by earlier mixing on this mode");

  const bool here_ref = th == SlotTag::kRef || tv == SlotTag::kRef;
  const bool here_oth = th == SlotTag::kOth || tv == SlotTag::kOth;
  bool ref_elsewhere = false, oth_elsewhere = false, mixed_elsewhere = false;
  for (ModeId k = 0; k < s.tags.size(); ++k) {
    if (k == m) continue;
    for (Pol p : {Pol::H, Pol::V}) {
      const SlotTag t = s.tag(k, p);
      ref_elsewhere |= t == SlotTag::kRef;
      oth_elsewhere |= t == SlotTag::kOth;
      mixed_elsewhere |= t == SlotTag::kMixed;
    }
  }

  TwoPhotonState out = s;
  if (here_ref && here_oth) {
    if (ref_elsewhere || oth_elsewhere || mixed_elsewhere)
      throw unsupported_circuit("delay on '" + d.mode +
                                "': mode carries both packets while others are live");
    // the whole state shifts together; relative overlap unchanged
    out.book.ref_delay_fs += d.tau_fs;
    out.book.oth_delay_fs += d.tau_fs;
    return out;
  }
  if (mixed_elsewhere)
    throw unsupported_circuit("delay on '" + d.mode +
                              "': mixed-packet modes are live elsewhere");

  const std::complex<double> gamma_old = s.book.gamma_eff();
  if (here_oth) {
    if (oth_elsewhere)
      throw unsupported_circuit("delay on '" + d.mode +
                                "': would split the displaced packet (third packet needed)");
    out.book.oth_delay_fs += d.tau_fs;
  } else if (!s.book.oth_active) {
    if (!ref_elsewhere) {
      out.book.ref_delay_fs += d.tau_fs;
      out.book.oth_delay_fs += d.tau_fs;
      return out;  // global time shift, unobservable
    }
    assert(s.book.mode_scale == 1.0);
    out.book.oth_active = true;
    out.book.oth_delay_fs = s.book.ref_delay_fs + d.tau_fs;
    if (th != SlotTag::kDead) out.set_tag(m, Pol::H, SlotTag::kOth);
    if (tv != SlotTag::kDead) out.set_tag(m, Pol::V, SlotTag::kOth);
  } else {
    if (ref_elsewhere)
      throw unsupported_circuit("delay on '" + d.mode +
                                "': would split the reference packet (third packet needed)");
    out.book.ref_delay_fs += d.tau_fs;
  }
  out.terms = detail::reexpress(s.terms, s, out, gamma_old, out.book.gamma_eff());
  return out;
}

inline TwoPhotonState apply_element(const TwoPhotonState& s, const Element& e) {
  struct V {
    const TwoPhotonState& s;
    TwoPhotonState operator()(const Beamsplitter& x) const { return apply_beamsplitter(s, x); }
    TwoPhotonState operator()(const PolarizingBeamsplitter& x) const { return apply_pbs(s, x); }
    TwoPhotonState operator()(const PhaseShift& x) const { return apply_phase(s, x); }
    TwoPhotonState operator()(const HalfWavePlate& x) const { return apply_hwp(s, x); }
    TwoPhotonState operator()(const DelayLine& x) const { return apply_delay(s, x); }
    TwoPhotonState operator()(const Polarizer& x) const { return apply_polarizer(s, x); }
  };
  return std::visit(V{s}, e);
}

}  // namespace biphoton
