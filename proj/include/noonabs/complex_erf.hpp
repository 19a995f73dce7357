#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "noonabs/constants.hpp"
#include "noonabs/errors.hpp"

namespace noonabs {

using Complex = std::complex<double>;

namespace detail {

// Rational fit of the scaled complementary error function w(z) on Im z >= 0,
// built on the conformal map Z = (L+iz)/(L-iz). Coefficients are the cosine
// sums of exp(-t^2)(L^2+t^2) sampled at t = L tan(theta/2); degree 64 holds
// the fit below ~1e-13 absolute over the closed upper half-plane.
class FaddeevaFit {
public:
    static constexpr int kDegree = 64;

    FaddeevaFit() : scale_(std::sqrt(kDegree / std::sqrt(2.0))) {
        constexpr int m = 2 * kDegree;
        std::array<double, m> f{};
        f[0] = scale_ * scale_; // t(0) = 0
        for (int k = 1; k < m; ++k) {
            const double t = scale_ * std::tan(0.5 * k * kPi / m);
            f[k] = std::exp(-t * t) * (scale_ * scale_ + t * t);
        }
        for (int n = 1; n <= kDegree; ++n) {
            double sum = 0.5 * f[0];
            for (int k = 1; k < m; ++k)
                sum += f[k] * std::cos(n * k * kPi / m);
            coeff_[kDegree - n] = sum / m; // highest power first for Horner
        }
    }

    Complex eval(Complex z) const {
        const Complex denom = Complex(scale_, 0.0) - Complex(0.0, 1.0) * z;
        const Complex big_z = (Complex(scale_, 0.0) + Complex(0.0, 1.0) * z) / denom;
        Complex p = coeff_[0];
        for (int i = 1; i < kDegree; ++i)
            p = p * big_z + coeff_[i];
        return 2.0 * p / (denom * denom) + (1.0 / kSqrtPi) / denom;
    }

private:
    double scale_;
    std::array<double, kDegree> coeff_{};
};

inline const FaddeevaFit& faddeeva_fit() {
    static const FaddeevaFit fit;
    return fit;
}

// Laplace continued fraction for w(z), accurate for |z| >= 12 on Im z >= 0.
inline Complex faddeeva_continued_fraction(Complex z) {
    Complex r(0.0, 0.0);
    for (int k = 22; k >= 1; --k)
        r = (0.5 * k) / (z - r);
    return Complex(0.0, 1.0 / kSqrtPi) / (z - r);
}

} // namespace detail

// w(z) = exp(-z^2) erfc(-iz) on the closed upper half-plane; w(0) = 1, |w| <= 1 there.
// Callers with Im z < 0 must map by w(-z) = 2 exp(-z^2) - w(z) or conjugation themselves.
inline Complex faddeeva_scaled(Complex z) {
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
        throw DomainError("faddeeva_scaled: non-finite argument");
    if (z.imag() < 0.0)
        throw DomainError("faddeeva_scaled: argument below the real axis");
    if (std::norm(z) >= 144.0)
        return detail::faddeeva_continued_fraction(z);
    return detail::faddeeva_fit().eval(z);
}

namespace detail {

// Alternating Maclaurin series; safe for |z| <= 1 where terms decay immediately.
inline Complex erf_maclaurin(Complex z) {
    const Complex z2 = z * z;
    Complex u = z;       // z^(2k+1)/k! with sign
    Complex s = z;       // running sum of u/(2k+1)
    for (int k = 1; k < 40; ++k) {
        u *= -z2 / static_cast<double>(k);
        const Complex term = u / static_cast<double>(2 * k + 1);
        s += term;
        if (std::norm(term) <= 1e-36 * std::norm(s))
            break;
    }
    return s * (2.0 / kSqrtPi);
}

// erf(z) = (2z/sqrt(pi)) exp(-z^2) M(1,3/2,z^2); all-same-direction growth keeps
// this stable over the mid-plane box that contains erf's first complex zero.
inline Complex erf_confluent(Complex z) {
    const Complex w = z * z;
    Complex t(1.0, 0.0);
    Complex s(1.0, 0.0);
    for (int k = 0; k < 300; ++k) {
        t *= w / (k + 1.5);
        s += t;
        if (std::norm(t) <= 1e-36 * std::norm(s))
            break;
    }
    return (2.0 / kSqrtPi) * z * std::exp(-w) * s;
}

} // namespace detail

// Erf(z) = (2/sqrt(pi)) \int_0^z e^{-y^2} dy extended to complex arguments.
// Relative accuracy ~1e-13 except inside shrinking neighborhoods of erf's
// complex zeros (nearest 1.4507+1.8809i), where any fixed-precision evaluation
// of a difference of O(1) quantities loses digits.
inline Complex erf_complex(Complex z) {
    if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
        throw DomainError("erf_complex: non-finite argument");
    // Odd map onto Re z >= 0; the tie rule keeps erf(-z) = -erf(z) bitwise exact.
    const bool negate = (z.real() < 0.0) || (z.real() == 0.0 && z.imag() < 0.0);
    if (negate)
        z = -z;
    const double x = z.real();
    const double y = z.imag();
    if (y * y - x * x > 700.0)
        throw OverflowDomainError("erf_complex: result magnitude exceeds double range");

    Complex r;
    if (std::norm(z) <= 1.0) {
        r = detail::erf_maclaurin(z);
    } else if (x <= 3.5 && std::abs(y) <= 2.2) {
        r = detail::erf_confluent(z);
    } else {
        // erf(z) = 1 - exp(-z^2) w(iz); iz sits in the upper half-plane since x >= 0.
        const Complex w = faddeeva_scaled(Complex(-y, x));
        r = 1.0 - std::exp(-z * z) * w;
    }
    return negate ? -r : r;
}

} // namespace noonabs
