#pragma once

namespace biphoton {

// Internal unit system: lengths in nm, times in fs, angles in rad unless a
// name says otherwise.
inline constexpr double kSpeedOfLightNmPerFs = 299.792458;
inline constexpr double kPi = 3.141592653589793238462643383279502884;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Angular frequency (rad/fs) of light at the given vacuum wavelength.
inline double angular_frequency(double wavelength_nm) {
  return 2.0 * kPi * kSpeedOfLightNmPerFs / wavelength_nm;
}

}  // namespace biphoton
