#pragma once

namespace noonabs {

// Speed of light in vacuum, m/s.
inline constexpr double kSpeedOfLight = 2.99792458e8;

// FWHM Gaussian constant 4*ln2; every spectral envelope here is FWHM-parameterized.
inline constexpr double kFwhmFactor = 2.7725887222397812;

inline constexpr double kPi = 3.141592653589793;
inline constexpr double kSqrtPi = 1.7724538509055160;

// Default relative tolerance for every quadrature unless overridden.
inline constexpr double kDefaultRelTol = 1e-8;

} // namespace noonabs
