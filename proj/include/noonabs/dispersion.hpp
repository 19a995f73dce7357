#pragma once
// Uniaxial crystal optics: Sellmeier indices, the effective index at the
// phase-matching angle, analytic group velocities, and the inverse-velocity
// differences consumed by the downstream kernels.

#include <cmath>
#include <string>

#include "noonabs/constants.hpp"
#include "noonabs/errors.hpp"

namespace noonabs {

// n^2(lambda) = a + b/(lambda^2 - c) - d*lambda^2 + e*lambda^4, lambda in um.
struct SellmeierCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;
};

struct CrystalDispersion {
    SellmeierCoefficients sellmeier_o;
    SellmeierCoefficients sellmeier_e;
    double optic_axis_angle = 0.0; // radians
    std::string name;
};

// Fit band of the shipped coefficients; evaluations outside are rejected.
inline constexpr double kBandMinUm = 0.3;
inline constexpr double kBandMaxUm = 1.2;

inline CrystalDispersion bbo_crystal() {
    CrystalDispersion c;
    c.sellmeier_o = {2.7359, 0.01878, 0.01822, 0.0135, 0.0};
    c.sellmeier_e = {2.3753, 0.01224, 0.01667, 0.01516, 0.0};
    c.optic_axis_angle = 42.4 * kPi / 180.0;
    c.name = "BBO";
    return c;
}

namespace detail {

inline void check_band(double lambda_um) {
    if (!(lambda_um >= kBandMinUm && lambda_um <= kBandMaxUm))
        throw DomainError("wavelength outside supported band [0.3, 1.2] um");
}

inline double sellmeier_n2(const SellmeierCoefficients& s, double lambda_um) {
    const double q = lambda_um * lambda_um;
    return s.a + s.b / (q - s.c) - s.d * q + s.e * q * q;
}

// d(n^2)/dlambda in 1/um.
inline double sellmeier_n2_derivative(const SellmeierCoefficients& s, double lambda_um) {
    const double q = lambda_um * lambda_um;
    const double frac = q - s.c;
    return -2.0 * s.b * lambda_um / (frac * frac) - 2.0 * s.d * lambda_um +
           4.0 * s.e * q * lambda_um;
}

} // namespace detail

inline double sellmeier_index(const SellmeierCoefficients& s, double lambda_um) {
    detail::check_band(lambda_um);
    const double n2 = detail::sellmeier_n2(s, lambda_um);
    if (!(n2 > 0.0))
        throw DomainError("Sellmeier radicand is not positive");
    return std::sqrt(n2);
}

// dn/dlambda = d(n^2)/dlambda / (2n), 1/um.
inline double sellmeier_index_derivative(const SellmeierCoefficients& s, double lambda_um) {
    const double n = sellmeier_index(s, lambda_um);
    return detail::sellmeier_n2_derivative(s, lambda_um) / (2.0 * n);
}

inline double index_ordinary(const CrystalDispersion& crystal, double lambda_um) {
    return sellmeier_index(crystal.sellmeier_o, lambda_um);
}

inline double index_extraordinary(const CrystalDispersion& crystal, double lambda_um) {
    return sellmeier_index(crystal.sellmeier_e, lambda_um);
}

// n_eff = [cos^2(phi)/n_o^2 + sin^2(phi)/n_e^2]^{-1/2}; phi = 0 gives n_o,
// phi = pi/2 gives n_e.
inline double index_effective(const CrystalDispersion& crystal, double lambda_um, double phi) {
    const double no = index_ordinary(crystal, lambda_um);
    const double ne = index_extraordinary(crystal, lambda_um);
    const double cs = std::cos(phi);
    const double sn = std::sin(phi);
    const double s = cs * cs / (no * no) + sn * sn / (ne * ne);
    return 1.0 / std::sqrt(s);
}

inline double index_effective(const CrystalDispersion& crystal, double lambda_um) {
    return index_effective(crystal, lambda_um, crystal.optic_axis_angle);
}

inline double index_effective_derivative(const CrystalDispersion& crystal, double lambda_um,
                                         double phi) {
    const double no = index_ordinary(crystal, lambda_um);
    const double ne = index_extraordinary(crystal, lambda_um);
    const double dno = sellmeier_index_derivative(crystal.sellmeier_o, lambda_um);
    const double dne = sellmeier_index_derivative(crystal.sellmeier_e, lambda_um);
    const double cs2 = std::cos(phi) * std::cos(phi);
    const double sn2 = std::sin(phi) * std::sin(phi);
    const double s = cs2 / (no * no) + sn2 / (ne * ne);
    const double ds = -2.0 * cs2 * dno / (no * no * no) - 2.0 * sn2 * dne / (ne * ne * ne);
    return -0.5 * ds / (s * std::sqrt(s));
}

enum class Beam { ordinary, extraordinary, pump };

// U = c / (n - lambda * dn/dlambda). The pump and extraordinary beams see the
// effective index at the crystal's optic-axis angle; the ordinary beam sees n_o.
inline double group_velocity(Beam beam, double lambda_um, const CrystalDispersion& crystal) {
    double n, dn;
    if (beam == Beam::ordinary) {
        n = index_ordinary(crystal, lambda_um);
        dn = sellmeier_index_derivative(crystal.sellmeier_o, lambda_um);
    } else {
        n = index_effective(crystal, lambda_um);
        dn = index_effective_derivative(crystal, lambda_um, crystal.optic_axis_angle);
    }
    const double velocity = kSpeedOfLight / (n - lambda_um * dn);
    if (!(velocity > 0.0 && velocity < kSpeedOfLight))
        throw DomainError("group velocity outside (0, c)");
    return velocity;
}

struct VelocityBundle {
    double U_e = 0.0; // extraordinary group velocity, m/s
    double U_o = 0.0; // ordinary group velocity, m/s
    double U_p = 0.0; // pump group velocity, m/s
    double u_e = 0.0; // 1/U_p - 1/U_e, s/m
    double u_o = 0.0; // 1/U_p - 1/U_o, s/m
    double U2 = 0.0;  // 1/U_o - 1/U_e, s/m
    double u = 0.0;   // (U_e - U_o)/(U_e*U_o), algebraically equal to U2
};

// Degenerate collinear down-conversion: both daughters at twice the pump
// wavelength. The inverse-velocity differences are evaluated in product form,
// (x - y)/(x*y), which avoids cancelling two nearly equal reciprocals.
inline VelocityBundle velocity_bundle(double lambda_pump_um, const CrystalDispersion& crystal) {
    const double lambda_daughter_um = 2.0 * lambda_pump_um;
    VelocityBundle b;
    b.U_p = group_velocity(Beam::pump, lambda_pump_um, crystal);
    b.U_e = group_velocity(Beam::extraordinary, lambda_daughter_um, crystal);
    b.U_o = group_velocity(Beam::ordinary, lambda_daughter_um, crystal);
    b.u_e = (b.U_e - b.U_p) / (b.U_e * b.U_p);
    b.u_o = (b.U_o - b.U_p) / (b.U_o * b.U_p);
    b.U2 = (b.U_e - b.U_o) / (b.U_e * b.U_o);
    b.u = b.U2;
    return b;
}

} // namespace noonabs
