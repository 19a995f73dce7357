#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "noonabs/bessel.hpp"
#include "noonabs/biphoton.hpp"
#include "noonabs/complex_erf.hpp"
#include "noonabs/constants.hpp"
#include "noonabs/dispersion.hpp"
#include "noonabs/errors.hpp"
#include "noonabs/quadrature.hpp"

// Two-photon absorption rates for the down-converted |2::0> state: the pulsed
// frequency-domain integral, its no-filter closed form, the cw-pumped rate,
// and the spectrally matched coherent comparison.

namespace noonabs {

struct AbsorptionResult {
    double raw = 0.0;              // probability integral before state normalization
    double normalized = 0.0;       // raw times the squared normalization constant
    double quadrature_error = 0.0; // absolute error estimate on raw
    SetupParams params;
};

inline void validate_filtered_setup(const SetupParams& s) {
    validate_amplitude_setup(s);
    if (!(s.kappa_f > 0.0) || !std::isfinite(s.kappa_f))
        throw DomainError("absorber linewidth kappa_f must be positive");
}

// (8/U_2)(1+sqrt(pi))^2 sqrt(2 pi^7 D), the outer constant of the pulsed rate.
inline double two_photon_outer_constant(const VelocityBundle& v) {
    if (!(v.U2 > 0.0))
        throw DomainError("group-velocity ordering U_e > U_o required");
    const double q = 1.0 + kSqrtPi;
    return 8.0 / v.U2 * q * q * std::sqrt(2.0 * std::pow(kPi, 7) * kFwhmFactor);
}

// Frequency-domain integrand of the pulsed rate. The erf slope is imaginary,
// i*erf_slope with erf_slope real, so the raw bracket grows like
// e^{erf_slope^2 nu^2} against the Gaussian damping e^{-G nu^2}.
struct AbsorptionKernel {
    double erf_slope = 0.0;  // s
    double erf_offset = 0.0; // dimensionless, > 0 for L > 0
    double prefactor = 0.0;  // m/s
    double coef_e = 0.0;     // (u_e+U_2)^2/(sigma_e U_2)^2, s^2
    double coef_o = 0.0;     // u_e^2/(sigma_o U_2)^2, s^2
    double coef_p = 0.0;     // 1/sigma_p^2, s^2
    double kappa_f = 0.0;    // Hz

    double gaussian_coefficient() const {
        return 2.0 * kFwhmFactor * (coef_e + coef_o + coef_p);
    }
    double growth_coefficient() const { return 2.0 * erf_slope * erf_slope; }

    double lorentzian_weight(double nu) const {
        const double q = 2.0 * nu / kappa_f;
        return 1.0 + q * q;
    }

    // e^{-G nu^2} |erf(i s nu) - erf(i s nu - offset)|^2. Rewriting both erf
    // terms through the scaled Faddeeva function gives
    //   4 e^{-G nu^2} - 4 e^{(s^2-G) nu^2} Re b + e^{(2 s^2-G) nu^2} |b|^2,
    //   b = w(-s nu) + e^{-offset^2 + 2 i offset s nu} w(s nu + i offset),
    // where every exponent is nonpositive once the divergence guard passed.
    double integrand_unweighted(double nu) const {
        const double x = erf_slope * nu;
        const double g = gaussian_coefficient();
        const double s2 = erf_slope * erf_slope;
        const Complex b =
            faddeeva_scaled(Complex(-x, 0.0)) +
            std::exp(Complex(-erf_offset * erf_offset, 2.0 * erf_offset * x)) *
                faddeeva_scaled(Complex(x, erf_offset));
        const double nu2 = nu * nu;
        const double value = 4.0 * std::exp(-g * nu2) -
                             4.0 * std::exp((s2 - g) * nu2) * b.real() +
                             std::exp((2.0 * s2 - g) * nu2) * std::norm(b);
        return std::max(value, 0.0); // exact value is nonnegative; clip rounding residue
    }

    double integrand(double nu) const {
        return integrand_unweighted(nu) / lorentzian_weight(nu);
    }
};

inline AbsorptionKernel make_absorption_kernel(const SetupParams& s,
                                               const VelocityBundle& v) {
    validate_filtered_setup(s);
    if (v.U_e == v.U_o)
        throw DomainError("degenerate group velocities: U_e equals U_o");
    const double se2 = s.sigma_e * s.sigma_e;
    const double so2 = s.sigma_o * s.sigma_o;
    const double sum2 = se2 + so2;
    AbsorptionKernel k;
    k.erf_slope = std::sqrt(kFwhmFactor) * (v.U2 * so2 + v.u_e * sum2) /
                  (v.U2 * s.sigma_e * s.sigma_o * std::sqrt(sum2));
    k.erf_offset = s.length * v.U2 * s.sigma_e * s.sigma_o /
                   (2.0 * std::sqrt(kFwhmFactor * sum2));
    k.prefactor = two_photon_outer_constant(v);
    k.coef_e = (v.u_e + v.U2) * (v.u_e + v.U2) / (se2 * v.U2 * v.U2);
    k.coef_o = v.u_e * v.u_e / (so2 * v.U2 * v.U2);
    k.coef_p = 1.0 / (s.sigma_p * s.sigma_p);
    k.kappa_f = s.kappa_f;
    // Holds for every physical setup; kept as a hard refusal instead of garbage.
    if (!(k.gaussian_coefficient() > k.growth_coefficient()))
        throw DivergenceError("pulsed integrand: erf growth outruns the Gaussian decay",
                              k.gaussian_coefficient(), k.growth_coefficient());
    return k;
}

inline AbsorptionKernel make_absorption_kernel(const SetupParams& s) {
    return make_absorption_kernel(s, velocity_bundle(s.lambda_pump, s.crystal));
}

// Normalization constant C of the pulse-pumped two-photon state; observable
// rates carry C^2.
inline double normalization_pulsed(const SetupParams& s, const VelocityBundle& v) {
    if (!(s.length > 0.0) || !(s.sigma_p > 0.0))
        throw DomainError("normalization requires positive length and pump bandwidth");
    if (v.U_e == v.U_o)
        throw DomainError("degenerate group velocities: U_e equals U_o");
    if (!(v.U_e > v.U_o))
        throw DomainError("group-velocity ordering U_e > U_o required");
    return std::pow(0.5 * kFwhmFactor, 0.25) *
           std::sqrt(v.U_e * v.U_o * (v.U_e - v.U_o)) /
           (std::pow(kPi, 0.75) * std::sqrt(s.length * s.sigma_p));
}

inline double normalization_pulsed(const SetupParams& s) {
    return normalization_pulsed(s, velocity_bundle(s.lambda_pump, s.crystal));
}

// Pulse-pumped two-photon absorption probability by adaptive quadrature over
// the final-state frequency detuning.
inline AbsorptionResult p2_pulsed(const SetupParams& s,
                                  double rel_tol = kDefaultRelTol) {
    const VelocityBundle v = velocity_bundle(s.lambda_pump, s.crystal);
    const AbsorptionKernel k = make_absorption_kernel(s, v);
    // Truncate against the widest single Gaussian factor: at least as wide as
    // the surviving net decay, so the tail cut is always conservative.
    const double min_coef = std::min({k.coef_e, k.coef_o, k.coef_p});
    const double decay_scale = 1.0 / std::sqrt(2.0 * kFwhmFactor * min_coef);
    const QuadratureResult q = integrate_line(
        [&k](double nu) { return k.integrand(nu); }, decay_scale, rel_tol);
    const double outer = k.prefactor / (s.length * s.sigma_p);
    const double c = normalization_pulsed(s, v);
    AbsorptionResult r;
    r.raw = outer * q.value;
    r.normalized = r.raw * c * c;
    r.quadrature_error = outer * q.abs_error_estimate;
    r.params = s;
    return r;
}

// sigma_e, sigma_o -> infinity closed form C'' kf e^x K0(x) / (2 L sigma_p),
// x = D kf^2/(8 sigma_p^2), through the scaled Bessel function so that large
// x stays finite.
inline double p2_nofilter_limit(const SetupParams& s) {
    if (!(s.length > 0.0) || !std::isfinite(s.length))
        throw DomainError("crystal length must be positive");
    if (!(s.sigma_p > 0.0) || !std::isfinite(s.sigma_p))
        throw DomainError("pump bandwidth must be positive");
    if (!(s.kappa_f > 0.0) || !std::isfinite(s.kappa_f))
        throw DomainError("absorber linewidth kappa_f must be positive");
    const VelocityBundle v = velocity_bundle(s.lambda_pump, s.crystal);
    if (v.U_e == v.U_o)
        throw DomainError("degenerate group velocities: U_e equals U_o");
    const double x =
        kFwhmFactor * s.kappa_f * s.kappa_f / (8.0 * s.sigma_p * s.sigma_p);
    return two_photon_outer_constant(v) * s.kappa_f /
           (2.0 * s.length * s.sigma_p) * bessel_k0_scaled(x);
}

// cw-pumped rate: raw = erf(L u sigma/(2 sqrt(D)))^2 / L with sigma the
// harmonic mean width of the two filters; normalized carries
// C_cw^2 = U_e U_o (U_e - U_o)/(2 pi L).
inline AbsorptionResult w2_cw(const SetupParams& s) {
    validate_cw_setup(s);
    const VelocityBundle v = velocity_bundle(s.lambda_pump, s.crystal);
    if (v.U_e == v.U_o)
        throw DomainError("degenerate group velocities: U_e equals U_o");
    if (!(v.U_e > v.U_o))
        throw DomainError("group-velocity ordering U_e > U_o required");
    const double sigma = s.sigma_e * s.sigma_o /
                         std::sqrt(s.sigma_e * s.sigma_e + s.sigma_o * s.sigma_o);
    const double e =
        std::erf(s.length * v.u * sigma / (2.0 * std::sqrt(kFwhmFactor)));
    AbsorptionResult r;
    r.raw = e * e / s.length;
    r.normalized = r.raw * v.U_e * v.U_o * (v.U_e - v.U_o) / (2.0 * kPi * s.length);
    r.quadrature_error = 0.0;
    r.params = s;
    return r;
}

// Integrand of the spectrally matched coherent comparison. The printed
// Gaussian coefficient equals twice the squared erf slope identically, so the
// Gaussian is absorbed into the bracket before squaring:
//   e^{-2 s^2 nu^2} |bracket|^2 = |b|^2,
//   b = -2 e^{-s^2 nu^2} + w(-s nu) + e^{-offset^2 + 2 i offset s nu} w(s nu + i offset).
// No net Gaussian decay survives; convergence rests on the Lorentzian weight
// and the 1/nu^2 falloff of w.
struct CoherentKernel {
    double erf_slope = 0.0;  // s; the printed slope is -i*erf_slope
    double erf_offset = 0.0; // dimensionless, > 0 for L > 0
    double kappa_f = 0.0;    // Hz

    double lorentzian_weight(double nu) const {
        const double q = 2.0 * nu / kappa_f;
        return 1.0 + q * q;
    }

    double integrand_unweighted(double nu) const {
        const double x = erf_slope * nu;
        const Complex b =
            Complex(-2.0 * std::exp(-x * x), 0.0) +
            faddeeva_scaled(Complex(-x, 0.0)) +
            std::exp(Complex(-erf_offset * erf_offset, 2.0 * erf_offset * x)) *
                faddeeva_scaled(Complex(x, erf_offset));
        return std::norm(b);
    }

    double integrand(double nu) const {
        return integrand_unweighted(nu) / lorentzian_weight(nu);
    }
};

inline CoherentKernel make_coherent_kernel(const SetupParams& s,
                                           const VelocityBundle& v) {
    if (!(s.length > 0.0) || !std::isfinite(s.length))
        throw DomainError("crystal length must be positive");
    if (!(s.sigma_p > 0.0) || !std::isfinite(s.sigma_p))
        throw DomainError("pump bandwidth must be positive");
    if (!(s.kappa_f > 0.0) || !std::isfinite(s.kappa_f))
        throw DomainError("absorber linewidth kappa_f must be positive");
    if (v.U_e == v.U_o)
        throw DomainError("degenerate group velocities: U_e equals U_o");
    CoherentKernel k;
    k.erf_slope = std::sqrt(kFwhmFactor) * v.U2 / (std::sqrt(2.0) * v.u_o * s.sigma_p);
    k.erf_offset = s.length * v.u_o * s.sigma_p / std::sqrt(2.0 * kFwhmFactor);
    k.kappa_f = s.kappa_f;
    return k;
}

struct CoherentComparison {
    double intensity = 0.0;
    double gamma = 0.0;         // field normalization of the comparison state
    double p2_alpha = 0.0;
    double ratio_to_noon = 0.0; // p2_alpha over the no-filter |2::0> rate
};

// Two-photon absorption probability of coherent light filtered to the same
// spectral profile as the down-converted pair, at the given beam intensity.
inline CoherentComparison p2_coherent(const SetupParams& s, double intensity,
                                      double rel_tol = kDefaultRelTol) {
    if (!(intensity > 0.0) || !std::isfinite(intensity))
        throw DomainError("beam intensity must be positive");
    const VelocityBundle v = velocity_bundle(s.lambda_pump, s.crystal);
    const CoherentKernel k = make_coherent_kernel(s, v);
    const auto f = [&k](double nu) { return k.integrand(nu); };
    const auto pad = [](double tol) { return std::sqrt(-std::log(tol * 1e-2)); };

    // Two passes: a coarse integral over +-20 kappa_f sets the scale, then the
    // truncation radius is grown until the analytic tail bound
    //   tail(R) <= 4 kappa_f^2 / (3 pi s^2 R^3)
    // is negligible against that scale.
    const double s2 = k.erf_slope * k.erf_slope;
    const QuadratureResult coarse =
        integrate_line(f, 20.0 * k.kappa_f / pad(1e-4), 1e-4);
    const double scale = std::max(coarse.value, 1e-300);
    const double tail_budget = 0.3 * rel_tol * scale;
    double radius =
        std::cbrt(4.0 * k.kappa_f * k.kappa_f / (3.0 * kPi * s2 * tail_budget));
    radius = std::max({radius, 20.0 * k.kappa_f, 20.0 / k.erf_slope});
    // The Gaussian decay 2 s^2 exactly cancels the erf growth 2 s^2, so the
    // balance diagnostic reports the two equal coefficients.
    if (!(radius < 2e10 * k.kappa_f) || !std::isfinite(radius))
        throw DivergenceError("coherent integrand decays too slowly to truncate",
                              2.0 * s2, 2.0 * s2);
    const QuadratureResult q = integrate_line(f, radius / pad(rel_tol), rel_tol);

    const double erf_l = std::erf(k.erf_offset);
    const double front = 0.5 * kPi * intensity * intensity / (erf_l * erf_l);
    CoherentComparison out;
    out.intensity = intensity;
    out.gamma = std::pow(intensity * intensity * v.U2 * v.U2 * v.u_o * v.u_o *
                             s.sigma_p * s.sigma_p / (kFwhmFactor * kPi * kPi),
                         0.25) /
                std::sqrt(erf_l);
    out.p2_alpha = front * q.value;
    out.ratio_to_noon = out.p2_alpha / p2_nofilter_limit(s);
    return out;
}

} // namespace noonabs
