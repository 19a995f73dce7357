#pragma once

// Independent reference implementations used only as test oracles. Everything
// here is built from defining series/integrals with hand-rolled Gauss-Legendre
// panels so it shares no code path with the library under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kSqrtPi = 1.7724538509055160273;

// Deterministic uniform doubles built from raw generator bits; avoids the
// implementation-defined std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::mt19937_64 eng_;
};

// erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_k (2x^2)^k / (2k+1)!!; every term positive,
// so no cancellation up to |x| ~ 6 where the naive alternating series fails.
inline double erf_series(double x) {
    const double q = 2.0 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 400; ++k) {
        term *= q / (2.0 * k + 1.0);
        sum += term;
        if (term <= 1e-18 * sum)
            break;
    }
    return (2.0 / kSqrtPi) * x * std::exp(-x * x) * sum;
}

// erfi(x) = (2/sqrt(pi)) sum_k x^{2k+1} / (k! (2k+1)); all positive terms.
inline double erfi_series(double x) {
    const double q = x * x;
    double power = x; // x^{2k+1}/k!
    double sum = x;
    for (int k = 1; k < 500; ++k) {
        power *= q / k;
        const double term = power / (2.0 * k + 1.0);
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum))
            break;
    }
    return (2.0 / kSqrtPi) * sum;
}

// Gauss-Legendre rule on [-1,1] via Newton iteration on the recurrence.
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double xi = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = xi;
                for (int j = 2; j <= n; ++j) {
                    const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
                const double dx = p1 / dp;
                xi -= dx;
                if (std::fabs(dx) < 1e-15)
                    break;
            }
            x[i] = -xi;
            x[n - 1 - i] = xi;
            w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
        }
    }
};

inline const GaussLegendre& gl32() {
    static const GaussLegendre rule(32);
    return rule;
}

// erf(z) = (2z/sqrt(pi)) \int_0^1 exp(-(sz)^2) ds over composite panels.
inline std::complex<double> erf_path_integral(std::complex<double> z) {
    const auto& rule = gl32();
    const int panels = 10;
    std::complex<double> sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = static_cast<double>(p) / panels;
        const double b = static_cast<double>(p + 1) / panels;
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j < 32; ++j) {
            const std::complex<double> s = (c + h * rule.x[j]) * z;
            sum += h * rule.w[j] * std::exp(-s * s);
        }
    }
    return (2.0 / kSqrtPi) * z * sum;
}

// w(z) = (i/pi) \int e^{-t^2} / (z - t) dt for Im z >= 0.3 (panel width keeps
// the pole far enough for geometric Gauss-Legendre convergence).
inline std::complex<double> faddeeva_defining_integral(std::complex<double> z) {
    const auto& rule = gl32();
    std::complex<double> sum = 0.0;
    const double lo = -8.0, hi = 8.0;
    const int panels = 64;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + (hi - lo) * p / panels;
        const double b = lo + (hi - lo) * (p + 1) / panels;
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j < 32; ++j) {
            const double t = c + h * rule.x[j];
            sum += h * rule.w[j] * std::exp(-t * t) / (z - t);
        }
    }
    return std::complex<double>(0.0, 1.0 / M_PI) * sum;
}

// On the real axis w(x) = e^{-x^2} + i e^{-x^2} erfi(x), both parts from series.
inline std::complex<double> faddeeva_real_axis(double x) {
    const double g = std::exp(-x * x);
    return {g, g * erfi_series(x)};
}

// K0(x) = \int_0^inf exp(-x cosh t) dt truncated where the integrand underflows.
inline double k0_defining_integral(double x) {
    const auto& rule = gl32();
    const double upper = std::acosh(750.0 / x);
    const int panels = static_cast<int>(upper / 0.25) + 1;
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = upper * p / panels;
        const double b = upper * (p + 1) / panels;
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (int j = 0; j < 32; ++j)
            sum += h * rule.w[j] * std::exp(-x * std::cosh(c + h * rule.x[j]));
    }
    return sum;
}

// Fixed-grid midpoint rule, the deliberately dumb cross-check.
template <class F>
double riemann_midpoint(F&& f, double a, double b, long n) {
    const double h = (b - a) / n;
    double sum = 0.0;
    for (long i = 0; i < n; ++i)
        sum += f(a + (i + 0.5) * h);
    return sum * h;
}

inline double rel_diff(double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale > 0.0 ? std::fabs(a - b) / scale : 0.0;
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

} // namespace oracle
