#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "noonabs/constants.hpp"
#include "noonabs/errors.hpp"

namespace noonabs {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
};

namespace detail {

// 15-point Kronrod nodes and weights with the embedded 7-point Gauss rule;
// Gauss nodes sit at odd indices (plus the center).
inline constexpr double kXgk15[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk15[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kWg7[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
};

struct WorstPanelFirst {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.error != q.error)
            return p.error < q.error;
        return p.a > q.a; // deterministic tie-break: leftmost panel first
    }
};

template <class F>
Panel gk15_panel(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk15[7] * fc;
    double resg = kWg7[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk15[j];
        const double fsum = f(c - dx) + f(c + dx);
        resk += kWgk15[j] * fsum;
        if (j & 1)
            resg += kWg7[(j - 1) / 2] * fsum;
    }
    return Panel{a, b, resk * h, std::fabs(resk - resg) * h};
}

// Adaptive bisection over the given sorted boundaries, worst panel first.
template <class F>
QuadratureResult adaptive_gk15(F&& f, const std::vector<double>& boundaries,
                               double rel_tol, int max_panels) {
    constexpr double kAbsFloor = 1e-300;
    std::priority_queue<Panel, std::vector<Panel>, WorstPanelFirst> heap;
    double total_value = 0.0;
    double total_error = 0.0;
    long evals = 0;
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        Panel p = gk15_panel(f, boundaries[i], boundaries[i + 1]);
        total_value += p.value;
        total_error += p.error;
        evals += 15;
        heap.push(p);
    }

    int splits = 0;
    bool stalled = false;
    while (total_error > std::max(rel_tol * std::fabs(total_value), kAbsFloor)) {
        if (splits >= max_panels) {
            stalled = true;
            break;
        }
        Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            stalled = true; // interval no longer splittable in doubles
            break;
        }
        heap.pop();
        Panel left = gk15_panel(f, worst.a, mid);
        Panel right = gk15_panel(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        evals += 30;
        heap.push(left);
        heap.push(right);
        ++splits;
    }

    // Re-sum in spatial order: deterministic and free of heap-order rounding drift.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& p, const Panel& q) { return p.a < q.a; });
    QuadratureResult out;
    for (const Panel& p : panels) {
        out.value += p.value;
        out.abs_error_estimate += p.error;
    }
    out.evaluations = evals;
    if (stalled)
        throw QuadratureError("adaptive quadrature stalled before reaching tolerance",
                              out.value, out.abs_error_estimate, out.evaluations);
    return out;
}

} // namespace detail

// Integral of f over (-inf, inf) for integrands with a Gaussian-dominated tail of
// the given width. The interval is truncated where the envelope falls below
// rel_tol/100 of its peak, and pre-split geometrically toward the origin so a
// narrow centered core cannot hide inside one coarse panel.
template <class F>
QuadratureResult integrate_line(F&& f, double decay_scale, double rel_tol,
                                int max_panels = 2000) {
    if (!(decay_scale > 0.0) || !std::isfinite(decay_scale))
        throw DomainError("integrate_line: decay_scale must be positive and finite");
    if (!(rel_tol > 0.0) || rel_tol >= 1.0)
        throw DomainError("integrate_line: rel_tol must lie in (0, 1)");
    const double radius = decay_scale * std::sqrt(-std::log(rel_tol * 1e-2));
    std::vector<double> bounds;
    bounds.push_back(0.0);
    // 33 halvings reach a scale ratio of ~4e9 between the truncation radius and
    // the innermost panel, enough for any physical bandwidth combination.
    double r = radius;
    for (int k = 0; k <= 32; ++k) {
        bounds.push_back(r);
        bounds.push_back(-r);
        r *= 0.5;
    }
    std::sort(bounds.begin(), bounds.end());
    return detail::adaptive_gk15(f, bounds, rel_tol, max_panels);
}

// Integral of f over [a, b] with the same adaptive engine.
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, double rel_tol,
                                    int max_panels = 2000) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integrate_interval: requires finite a < b");
    if (!(rel_tol > 0.0) || rel_tol >= 1.0)
        throw DomainError("integrate_interval: rel_tol must lie in (0, 1)");
    const std::vector<double> bounds{a, 0.5 * (a + b), b};
    return detail::adaptive_gk15(f, bounds, rel_tol, max_panels);
}

} // namespace noonabs
