#pragma once

#include <cmath>

#include "noonabs/constants.hpp"
#include "noonabs/errors.hpp"

namespace noonabs {

namespace detail {

// Ascending series for x <= 2: K0 = -(ln(x/2)+gamma) I0(x) + sum (x^2/4)^k/(k!)^2 H_k.
inline double bessel_k0_series(double x) {
    constexpr double kEulerGamma = 0.5772156649015329;
    const double q = 0.25 * x * x;
    double term = 1.0;   // (x^2/4)^k / (k!)^2
    double i0 = 1.0;
    double hk = 0.0;
    double hsum = 0.0;
    for (int k = 1; k <= 30; ++k) {
        term *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        i0 += term;
        hsum += term * hk;
        if (term * (hk + 1.0) <= 1e-18 * (i0 + hsum))
            break;
    }
    return -(std::log(0.5 * x) + kEulerGamma) * i0 + hsum;
}

// Steed-style continued fraction for x > 2; returns e^x K0(x) near machine precision.
inline double bessel_k0_cf2_scaled(double x) {
    constexpr double kEps = 1e-16;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 8000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) <= kEps)
            break;
    }
    return std::sqrt(kPi / (2.0 * x)) / s;
}

} // namespace detail

// e^x K0(x); total for x > 0, the only safe form once x reaches a few hundred.
inline double bessel_k0_scaled(double x) {
    if (!(x > 0.0))
        throw DomainError("bessel_k0_scaled: requires x > 0");
    if (x <= 2.0)
        return std::exp(x) * detail::bessel_k0_series(x);
    return detail::bessel_k0_cf2_scaled(x);
}

// K0(x); underflows to 0 past x ~ 705 (use bessel_k0_scaled there).
inline double bessel_k0(double x) {
    if (!(x > 0.0))
        throw DomainError("bessel_k0: requires x > 0");
    if (x <= 2.0)
        return detail::bessel_k0_series(x);
    return detail::bessel_k0_cf2_scaled(x) * std::exp(-x);
}

} // namespace noonabs
