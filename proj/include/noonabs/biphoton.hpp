#pragma once
// Time-domain biphoton amplitudes for collinear type-II down-conversion:
// the pulsed closed form, its symmetrized sum, the unfiltered sharp-window
// limit, and the stationary cw form. Normalization constants live in the
// absorption layer; amplitudes here are shape-exact up to overall constants.

#include <cmath>
#include <complex>

#include "noonabs/complex_erf.hpp"
#include "noonabs/constants.hpp"
#include "noonabs/dispersion.hpp"
#include "noonabs/errors.hpp"

namespace noonabs {

struct SetupParams {
    double sigma_e = 0.0;     // extraordinary-arm filter bandwidth, Hz
    double sigma_o = 0.0;     // ordinary-arm filter bandwidth, Hz
    double sigma_p = 0.0;     // pump bandwidth, Hz
    double length = 0.0;      // crystal length, m
    double kappa_f = 0.0;     // final-state FWHM, Hz
    double lambda_pump = 0.4; // pump wavelength, um
    CrystalDispersion crystal = bbo_crystal();
};

inline void validate_amplitude_setup(const SetupParams& s) {
    if (!(s.sigma_e > 0.0 && s.sigma_o > 0.0 && s.sigma_p > 0.0))
        throw DomainError("bandwidths must be positive");
    if (!(s.length > 0.0))
        throw DomainError("crystal length must be positive");
}

inline void validate_cw_setup(const SetupParams& s) {
    if (!(s.sigma_e > 0.0 && s.sigma_o > 0.0))
        throw DomainError("filter bandwidths must be positive");
    if (!(s.length > 0.0))
        throw DomainError("crystal length must be positive");
}

// Degenerate daughter central frequency: half of 2*pi*c/lambda_pump.
inline double daughter_angular_frequency(const SetupParams& s) {
    return kPi * kSpeedOfLight / (s.lambda_pump * 1e-6);
}

struct AmplitudeKernelConstants {
    double P_U = 0.0; // U_p (U_e - U_o) sigma_e sigma_o
    double E_U = 0.0; // U_e (U_p - U_o) sigma_p sigma_o
    double O_U = 0.0; // U_o (U_e - U_p) sigma_e sigma_p
    double U = 0.0;   // sqrt(P_U^2 + E_U^2 + O_U^2)
    double l = 0.0;   // L U / (2 U_e U_o U_p sqrt(D (sum of sigma^2)))
    double prefactor = 0.0; // U_e U_o U_p sigma_e sigma_o sigma_p / (U sqrt(D))
    double sigma_e = 0.0, sigma_o = 0.0, sigma_p = 0.0;
    double omega = 0.0;     // daughter central frequency, rad/s
    double erf_denom = 0.0; // 2 U sqrt(D (sum of sigma^2))

    double script_t(double t1, double t2) const {
        return ((t1 - t2) * P_U * sigma_e * sigma_o + t1 * E_U * sigma_o * sigma_p -
                t2 * O_U * sigma_e * sigma_p) /
               erf_denom;
    }
    // Pump-envelope Gaussian exponent, always <= 0; vanishes on the line
    // t1 O_U sigma_o + t2 E_U sigma_e = 0.
    double gaussian_exponent(double t1, double t2) const {
        const double lin = t1 * O_U * sigma_o + t2 * E_U * sigma_e;
        return -lin * lin / (4.0 * kFwhmFactor * U * U);
    }
};

inline AmplitudeKernelConstants make_amplitude_constants(const SetupParams& s,
                                                         const VelocityBundle& b) {
    validate_amplitude_setup(s);
    if (b.U_e == b.U_o)
        throw DomainError("degenerate group velocities: U_e equals U_o");
    AmplitudeKernelConstants k;
    k.sigma_e = s.sigma_e;
    k.sigma_o = s.sigma_o;
    k.sigma_p = s.sigma_p;
    k.P_U = b.U_p * (b.U_e - b.U_o) * s.sigma_e * s.sigma_o;
    k.E_U = b.U_e * (b.U_p - b.U_o) * s.sigma_p * s.sigma_o;
    k.O_U = b.U_o * (b.U_e - b.U_p) * s.sigma_e * s.sigma_p;
    k.U = std::sqrt(k.P_U * k.P_U + k.E_U * k.E_U + k.O_U * k.O_U);
    const double band_root = std::sqrt(
        kFwhmFactor * (s.sigma_e * s.sigma_e + s.sigma_o * s.sigma_o + s.sigma_p * s.sigma_p));
    k.l = s.length * k.U / (2.0 * b.U_e * b.U_o * b.U_p * band_root);
    k.erf_denom = 2.0 * k.U * band_root;
    k.prefactor = b.U_e * b.U_o * b.U_p * s.sigma_e * s.sigma_o * s.sigma_p /
                  (k.U * std::sqrt(kFwhmFactor));
    k.omega = daughter_angular_frequency(s);
    return k;
}

// Down-conversion amplitude behind a polarizing beam splitter: detector 1 sees
// the ordinary photon, detector 2 the extraordinary one.
inline Complex amplitude_script_a(double t1, double t2, const AmplitudeKernelConstants& k) {
    const double T = k.script_t(t1, t2);
    const double bracket = std::erf(T) - std::erf(T + k.l);
    const double mag = std::exp(k.gaussian_exponent(t1, t2)) * k.prefactor * bracket;
    const double phase = -k.omega * (t1 + t2);
    return Complex(mag * std::cos(phase), mag * std::sin(phase));
}

inline Complex amplitude_script_a(double t1, double t2, const SetupParams& s) {
    const auto b = velocity_bundle(s.lambda_pump, s.crystal);
    return amplitude_script_a(t1, t2, make_amplitude_constants(s, b));
}

// Path-balanced interferometer amplitude: either detector may see either photon.
inline Complex amplitude_full(double t1, double t2, const AmplitudeKernelConstants& k) {
    return amplitude_script_a(t1, t2, k) + amplitude_script_a(t2, t1, k);
}

inline Complex amplitude_full(double t1, double t2, const SetupParams& s) {
    const auto b = velocity_bundle(s.lambda_pump, s.crystal);
    const auto k = make_amplitude_constants(s, b);
    return amplitude_full(t1, t2, k);
}

inline double rect_window(double x) {
    const double ax = std::fabs(x);
    if (ax > 0.5)
        return 0.0;
    if (ax == 0.5)
        return 0.5;
    return 1.0;
}

// sigma_e, sigma_o -> infinity limit: a sharp coincidence window of width
// L u on t1 - t2 under the residual pump envelope.
inline Complex amplitude_nofilter_limit(double t1, double t2, const SetupParams& s,
                                        const VelocityBundle& b) {
    if (!(s.length > 0.0))
        throw DomainError("crystal length must be positive");
    const double sqrt_d = std::sqrt(kFwhmFactor);
    const double a = ((t1 - t2) * b.U_e * b.U_o + 0.5 * s.length * (b.U_e - b.U_o)) /
                     (2.0 * b.U_e * b.U_o * sqrt_d);
    const double bb = s.length * (b.U_e - b.U_o) / (2.0 * b.U_e * b.U_o * sqrt_d);
    const double num = t1 * b.U_o * (b.U_e - b.U_p) + t2 * b.U_e * (b.U_p - b.U_o);
    const double j =
        num * num / (sqrt_d * (b.U_e - b.U_o) * (b.U_e - b.U_o) * b.U_p * b.U_p);
    const double value =
        -2.0 * std::exp(-s.sigma_p * s.sigma_p * j) * rect_window(a / bb);
    return Complex(value, 0.0);
}

inline Complex amplitude_nofilter_limit(double t1, double t2, const SetupParams& s) {
    return amplitude_nofilter_limit(t1, t2, s, velocity_bundle(s.lambda_pump, s.crystal));
}

// Stationary amplitude for a monochromatic pump; sigma_p is ignored and the
// value depends on t1, t2 only through t1 - t2 apart from the carrier phase.
inline Complex amplitude_cw(double t1, double t2, const SetupParams& s,
                            const VelocityBundle& b) {
    validate_cw_setup(s);
    if (b.U_e == b.U_o)
        throw DomainError("degenerate group velocities: U_e equals U_o");
    const double sigma = s.sigma_e * s.sigma_o /
                         std::sqrt(s.sigma_e * s.sigma_e + s.sigma_o * s.sigma_o);
    const double dt = t1 - t2;
    const double scale = 1.0 / (2.0 * std::sqrt(kFwhmFactor));
    const double bracket = std::erf(sigma * dt * scale) -
                           std::erf(sigma * (dt - s.length * b.u) * scale);
    const double mag = bracket / (b.U_e - b.U_o);
    const double phase = -daughter_angular_frequency(s) * (t1 + t2);
    return Complex(mag * std::cos(phase), mag * std::sin(phase));
}

inline Complex amplitude_cw(double t1, double t2, const SetupParams& s) {
    return amplitude_cw(t1, t2, s, velocity_bundle(s.lambda_pump, s.crystal));
}

} // namespace noonabs
