#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "biphoton/units.hpp"

namespace biphoton {

/// Gaussian temporal/spectral mode of a single photon.
///
/// The spectral *intensity* is Gaussian with the given FWHM (the shape a
/// narrow interference filter imprints); `delay_fs` shifts the packet in
/// time. Two packets of equal shape overlap as
///
///   <w1|w2> = exp(i w0 dt) * exp(-dt^2 / (4 sigma^2)),  dt = delay2 - delay1,
///
/// with sigma given by overlap_sigma_fs().
struct Wavepacket {
  double center_wavelength_nm = 702.2;
  double bandwidth_fwhm_nm = 1.5;
  double delay_fs = 0.0;

  friend bool operator==(const Wavepacket&, const Wavepacket&) = default;
};

inline void check_wavepacket(const Wavepacket& w) {
  if (!(w.center_wavelength_nm > 0.0))
    throw std::invalid_argument("wavepacket: center wavelength must be > 0");
  if (!(w.bandwidth_fwhm_nm > 0.0))
    throw std::invalid_argument("wavepacket: bandwidth must be > 0");
  if (!std::isfinite(w.delay_fs))
    throw std::invalid_argument("wavepacket: delay must be finite");
}

/// Width (fs) of the overlap envelope exp(-dt^2/(4 sigma^2)).
inline double overlap_sigma_fs(const Wavepacket& w) {
  check_wavepacket(w);
  const double fwhm_omega = 2.0 * kPi * kSpeedOfLightNmPerFs * w.bandwidth_fwhm_nm /
                            (w.center_wavelength_nm * w.center_wavelength_nm);
  const double sigma_omega = fwhm_omega / (2.0 * std::sqrt(2.0 * std::log(2.0)));
  return 1.0 / (std::sqrt(2.0) * sigma_omega);
}

/// Complex overlap <w1|w2> of two packets of identical shape offset in time.
/// Packets with different center wavelength or bandwidth are rejected.
inline std::complex<double> wavepacket_overlap(const Wavepacket& w1, const Wavepacket& w2) {
  check_wavepacket(w1);
  check_wavepacket(w2);
  if (w1.center_wavelength_nm != w2.center_wavelength_nm)
    throw std::invalid_argument("wavepacket_overlap: center wavelengths differ");
  if (w1.bandwidth_fwhm_nm != w2.bandwidth_fwhm_nm)
    throw std::invalid_argument("wavepacket_overlap: bandwidths differ");
  const double dt = w2.delay_fs - w1.delay_fs;
  if (dt == 0.0) return {1.0, 0.0};
  const double sigma = overlap_sigma_fs(w1);
  const double envelope = std::exp(-dt * dt / (4.0 * sigma * sigma));
  const double phase = angular_frequency(w1.center_wavelength_nm) * dt;
  return std::polar(envelope, phase);
}

}  // namespace biphoton
