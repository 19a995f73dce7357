#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "noonabs/absorption.hpp"
#include "noonabs/errors.hpp"
#include "noonabs/parallel.hpp"

namespace noonabs {

// One sweep parameter: held fixed, or scanned over a log or linear grid.
struct AxisSpec {
    enum class Kind { fixed, log_range, linear_range };

    Kind kind = Kind::fixed;
    double value = 0.0; // fixed point
    double min = 0.0;   // range endpoints, min < max
    double max = 0.0;
    int count = 1;      // grid points for ranges, >= 2

    static AxisSpec fixed(double v) {
        AxisSpec a;
        a.kind = Kind::fixed;
        a.value = v;
        return a;
    }
    static AxisSpec log_range(double lo, double hi, int n) {
        AxisSpec a;
        a.kind = Kind::log_range;
        a.min = lo;
        a.max = hi;
        a.count = n;
        return a;
    }
    static AxisSpec linear_range(double lo, double hi, int n) {
        AxisSpec a;
        a.kind = Kind::linear_range;
        a.min = lo;
        a.max = hi;
        a.count = n;
        return a;
    }

    int size() const { return kind == Kind::fixed ? 1 : count; }
    bool is_fixed() const { return kind == Kind::fixed; }

    double at(int i) const {
        if (kind == Kind::fixed)
            return value;
        const double t = double(i) / double(count - 1);
        if (kind == Kind::log_range)
            return min * std::pow(max / min, t);
        return min + (max - min) * t;
    }

    void validate(const char* name) const {
        const std::string label(name);
        if (kind == Kind::fixed) {
            if (!(std::isfinite(value) && value > 0.0))
                throw DomainError("axis " + label + ": fixed value must be positive and finite");
            return;
        }
        if (!(std::isfinite(min) && std::isfinite(max) && min > 0.0 && min < max))
            throw DomainError("axis " + label + ": range needs 0 < min < max, both finite");
        if (count < 2)
            throw DomainError("axis " + label + ": range needs at least 2 points");
    }
};

enum class Objective { pulsed, cw, nofilter_limit };

inline const char* objective_name(Objective o) {
    switch (o) {
    case Objective::pulsed: return "pulsed";
    case Objective::cw: return "cw";
    case Objective::nofilter_limit: return "nofilter_limit";
    }
    return "unknown";
}

inline Objective parse_objective(const std::string& name) {
    if (name == "pulsed")
        return Objective::pulsed;
    if (name == "cw")
        return Objective::cw;
    if (name == "nofilter_limit")
        return Objective::nofilter_limit;
    throw DomainError("unknown objective '" + name +
                      "' (expected pulsed, cw, or nofilter_limit)");
}

inline AbsorptionResult evaluate_objective(Objective o, const SetupParams& p,
                                           double rel_tol) {
    switch (o) {
    case Objective::pulsed:
        return p2_pulsed(p, rel_tol);
    case Objective::cw:
        return w2_cw(p);
    case Objective::nofilter_limit: {
        AbsorptionResult r;
        r.raw = p2_nofilter_limit(p);
        const double c = normalization_pulsed(p);
        r.normalized = r.raw * c * c;
        r.quadrature_error = 0.0;
        r.params = p;
        return r;
    }
    }
    throw DomainError("unknown objective");
}

// Scaling anchor shared by all pulse-pumped outputs.
inline SetupParams default_reference_setup() {
    SetupParams s;
    s.sigma_e = 1e13;
    s.sigma_o = 1e13;
    s.sigma_p = 1e9;
    s.length = 2.3e-3;
    s.kappa_f = 1e14;
    return s;
}

// Cartesian sweep request. Axis order everywhere is
// (sigma_e, sigma_o, sigma_p, length, kappa_f).
struct SweepSpec {
    AxisSpec sigma_e = AxisSpec::fixed(1e13);
    AxisSpec sigma_o = AxisSpec::fixed(1e13);
    AxisSpec sigma_p = AxisSpec::fixed(1e9);
    AxisSpec length = AxisSpec::fixed(2.3e-3);
    AxisSpec kappa_f = AxisSpec::fixed(1e14);
    Objective objective = Objective::pulsed;
    SetupParams base;                              // pump wavelength and crystal for every point
    SetupParams reference = default_reference_setup(); // pulsed scaling anchor
    double rel_tol = kDefaultRelTol;

    const AxisSpec& axis(int a) const {
        switch (a) {
        case 0: return sigma_e;
        case 1: return sigma_o;
        case 2: return sigma_p;
        case 3: return length;
        default: return kappa_f;
        }
    }
    AxisSpec& axis(int a) {
        switch (a) {
        case 0: return sigma_e;
        case 1: return sigma_o;
        case 2: return sigma_p;
        case 3: return length;
        default: return kappa_f;
        }
    }

    void validate() const {
        sigma_e.validate("sigma_e");
        sigma_o.validate("sigma_o");
        sigma_p.validate("sigma_p");
        length.validate("length");
        kappa_f.validate("kappa_f");
        if (!(rel_tol > 0.0 && rel_tol < 1.0))
            throw DomainError("sweep rel_tol must lie in (0, 1)");
    }
};

inline const char* sweep_axis_name(int a) {
    static const char* const names[5] = {"sigma_e", "sigma_o", "sigma_p",
                                         "length", "kappa_f"};
    return names[a];
}

inline SetupParams sweep_point_params(const SweepSpec& spec,
                                      const std::array<int, 5>& idx) {
    SetupParams p = spec.base;
    p.sigma_e = spec.sigma_e.at(idx[0]);
    p.sigma_o = spec.sigma_o.at(idx[1]);
    p.sigma_p = spec.sigma_p.at(idx[2]);
    p.length = spec.length.at(idx[3]);
    p.kappa_f = spec.kappa_f.at(idx[4]);
    return p;
}

struct SweepPoint {
    SetupParams params;
    double raw = std::numeric_limits<double>::quiet_NaN();
    double normalized = std::numeric_limits<double>::quiet_NaN();
    double scaled = std::numeric_limits<double>::quiet_NaN();
    double quadrature_error = std::numeric_limits<double>::quiet_NaN();
    bool ok = false;
    std::string error_message; // empty when ok
};

struct SweepResult {
    std::vector<SweepPoint> points; // lexicographic over axis indices, kappa_f fastest
    std::array<int, 5> shape{};
    double reference_value = 0.0; // raw-rate denominator behind the scaled column
    Objective objective = Objective::pulsed;
};

// Evaluates the full Cartesian grid. Failed points are kept in place with
// their error message; the row order never depends on the thread count.
// Pulse-pumped objectives scale by the reference configuration, cw scales
// by its own grid maximum.
inline SweepResult sweep(const SweepSpec& spec, int threads = 0) {
    spec.validate();
    SweepResult out;
    out.objective = spec.objective;
    std::size_t n = 1;
    for (int a = 0; a < 5; ++a) {
        out.shape[a] = spec.axis(a).size();
        n *= std::size_t(out.shape[a]);
    }

    double ref = 0.0;
    if (spec.objective != Objective::cw)
        ref = p2_pulsed(spec.reference, spec.rel_tol).raw;

    out.points.resize(n);
    parallel_for(n, resolve_thread_count(threads), [&](std::size_t i) {
        SweepPoint& pt = out.points[i];
        std::array<int, 5> idx{};
        std::size_t rem = i;
        for (int a = 4; a >= 0; --a) {
            idx[a] = int(rem % std::size_t(out.shape[a]));
            rem /= std::size_t(out.shape[a]);
        }
        pt.params = sweep_point_params(spec, idx);
        try {
            const AbsorptionResult r =
                evaluate_objective(spec.objective, pt.params, spec.rel_tol);
            pt.raw = r.raw;
            pt.normalized = r.normalized;
            pt.quadrature_error = r.quadrature_error;
            pt.ok = true;
        } catch (const std::exception& e) {
            pt.ok = false;
            pt.error_message = e.what();
        }
    });

    if (spec.objective == Objective::cw) {
        for (const SweepPoint& pt : out.points)
            if (pt.ok && pt.raw > ref)
                ref = pt.raw;
    }
    out.reference_value = ref;
    if (ref > 0.0)
        for (SweepPoint& pt : out.points)
            if (pt.ok)
                pt.scaled = pt.raw / ref;
    return out;
}

struct TraceEntry {
    SetupParams params;
    double value = 0.0; // scaled objective; -inf marks a failed evaluation
};

struct OptimumReport {
    SetupParams best_params;
    double best_value = 0.0; // scaled to the reference
    double best_raw = 0.0;
    std::array<double, 5> sensitivity{}; // relative change under +-10%, -1 if a probe failed
    double reference_value = 0.0;
    Objective objective = Objective::pulsed;
    std::vector<TraceEntry> trace; // coarse grid first, then refinement, in evaluation order
};

namespace detail {

// Nelder-Mead maximization over the simplex in place. eval returns -inf for
// failed points and records every call; the caller keeps the running best.
template <class F>
inline void refine_simplex(F&& eval, std::vector<std::vector<double>>& xs,
                           std::vector<double>& fs, int budget, double rel_tol) {
    const std::size_t d = xs[0].size();
    const double kInf = std::numeric_limits<double>::infinity();
    int used = 0;

    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b,
                     double t) {
        std::vector<double> r(d);
        for (std::size_t j = 0; j < d; ++j)
            r[j] = a[j] + t * (b[j] - a[j]);
        return r;
    };

    while (used < budget) {
        std::size_t best = 0, worst = 0;
        for (std::size_t i = 1; i < xs.size(); ++i) {
            if (fs[i] > fs[best])
                best = i;
            if (fs[i] < fs[worst])
                worst = i;
        }
        if (std::isfinite(fs[worst]) &&
            fs[best] - fs[worst] <=
                rel_tol * std::max(std::fabs(fs[best]), 1e-300))
            break;

        double second_worst = fs[best];
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (i != worst && fs[i] < second_worst)
                second_worst = fs[i];

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i == worst)
                continue;
            for (std::size_t j = 0; j < d; ++j)
                centroid[j] += xs[i][j];
        }
        for (double& c : centroid)
            c /= double(xs.size() - 1);

        const std::vector<double> reflected = blend(centroid, xs[worst], -1.0);
        const double f_reflected = eval(reflected);
        ++used;

        if (f_reflected > fs[best]) {
            if (used < budget) {
                const std::vector<double> expanded = blend(centroid, xs[worst], -2.0);
                const double f_expanded = eval(expanded);
                ++used;
                if (f_expanded > f_reflected) {
                    xs[worst] = expanded;
                    fs[worst] = f_expanded;
                    continue;
                }
            }
            xs[worst] = reflected;
            fs[worst] = f_reflected;
            continue;
        }
        if (f_reflected > second_worst) {
            xs[worst] = reflected;
            fs[worst] = f_reflected;
            continue;
        }
        if (used >= budget)
            break;
        const bool outside = f_reflected > fs[worst];
        const std::vector<double> contracted =
            outside ? blend(centroid, reflected, 0.5) : blend(centroid, xs[worst], 0.5);
        const double f_contracted = eval(contracted);
        ++used;
        if (f_contracted > (outside ? f_reflected : fs[worst])) {
            xs[worst] = contracted;
            fs[worst] = f_contracted;
            continue;
        }
        // shrink toward the best vertex
        for (std::size_t i = 0; i < xs.size() && used < budget; ++i) {
            if (i == best)
                continue;
            xs[i] = blend(xs[best], xs[i], 0.5);
            fs[i] = eval(xs[i]);
            ++used;
        }
        if (fs[best] == -kInf)
            break; // nothing finite left to steer by
    }
}

} // namespace detail

// Coarse log-grid scan over the free axes followed by simplex refinement in
// log-parameter space from the best grid cell. The reported optimum is never
// below any evaluated sample; failed evaluations count as -inf and cannot win.
inline OptimumReport maximize(const SweepSpec& spec, double tolerance = 1e-4,
                              int threads = 0) {
    spec.validate();
    if (!(tolerance > 0.0 && tolerance < 1.0))
        throw DomainError("maximize tolerance must lie in (0, 1)");
    constexpr int kCoarsePerAxis = 12;
    constexpr int kRefineBudget = 200;
    const double kInf = std::numeric_limits<double>::infinity();

    SweepSpec coarse = spec;
    std::vector<int> free_axes;
    for (int a = 0; a < 5; ++a) {
        AxisSpec& ax = coarse.axis(a);
        if (ax.is_fixed())
            continue;
        free_axes.push_back(a);
        ax = AxisSpec::log_range(ax.min, ax.max, kCoarsePerAxis);
    }

    const SweepResult grid = sweep(coarse, threads);
    OptimumReport report;
    report.objective = spec.objective;
    report.reference_value = grid.reference_value;
    report.trace.reserve(grid.points.size() + kRefineBudget + 16);
    std::size_t start = grid.points.size();
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const SweepPoint& pt = grid.points[i];
        report.trace.push_back({pt.params, pt.ok ? pt.scaled : -kInf});
        if (pt.ok && (start == grid.points.size() || pt.raw > grid.points[start].raw))
            start = i;
    }
    if (start == grid.points.size())
        throw DivergenceError("maximize: every coarse grid evaluation failed, "
                              "no valid starting cell",
                              0.0, 0.0);

    report.best_params = grid.points[start].params;
    report.best_raw = grid.points[start].raw;

    const double ref = grid.reference_value;
    auto params_from_log = [&](const std::vector<double>& x) {
        SetupParams p = grid.points[start].params;
        for (std::size_t j = 0; j < free_axes.size(); ++j) {
            const AxisSpec& ax = spec.axis(free_axes[j]);
            const double lo = std::log10(ax.min), hi = std::log10(ax.max);
            const double v = std::pow(10.0, std::min(std::max(x[j], lo), hi));
            switch (free_axes[j]) {
            case 0: p.sigma_e = v; break;
            case 1: p.sigma_o = v; break;
            case 2: p.sigma_p = v; break;
            case 3: p.length = v; break;
            default: p.kappa_f = v; break;
            }
        }
        return p;
    };
    auto eval_logged = [&](const std::vector<double>& x) {
        const SetupParams p = params_from_log(x);
        double value = -kInf;
        try {
            const double raw = evaluate_objective(spec.objective, p, spec.rel_tol).raw;
            value = ref > 0.0 ? raw / ref : raw;
            if (raw > report.best_raw) {
                report.best_raw = raw;
                report.best_params = p;
            }
        } catch (const std::exception&) {
        }
        report.trace.push_back({p, value});
        return value;
    };

    if (!free_axes.empty()) {
        const std::size_t d = free_axes.size();
        std::vector<double> x0(d);
        for (std::size_t j = 0; j < d; ++j) {
            double v = 0.0;
            switch (free_axes[j]) {
            case 0: v = report.best_params.sigma_e; break;
            case 1: v = report.best_params.sigma_o; break;
            case 2: v = report.best_params.sigma_p; break;
            case 3: v = report.best_params.length; break;
            default: v = report.best_params.kappa_f; break;
            }
            x0[j] = std::log10(v);
        }
        std::vector<std::vector<double>> xs(d + 1, x0);
        std::vector<double> fs(d + 1);
        fs[0] = ref > 0.0 ? report.best_raw / ref : report.best_raw;
        for (std::size_t j = 0; j < d; ++j) {
            const AxisSpec& ax = spec.axis(free_axes[j]);
            const double cell =
                (std::log10(ax.max) - std::log10(ax.min)) / double(kCoarsePerAxis - 1);
            double step = 0.5 * cell;
            if (x0[j] + step > std::log10(ax.max))
                step = -step; // keep the start simplex inside the box
            xs[j + 1][j] += step;
            fs[j + 1] = eval_logged(xs[j + 1]);
        }
        detail::refine_simplex(eval_logged, xs, fs,
                               kRefineBudget - int(d), tolerance);
    }

    report.best_value = ref > 0.0 ? report.best_raw / ref : report.best_raw;

    // +-10% probes around the optimum; not part of the trace.
    for (int a = 0; a < 5; ++a) {
        double rel = 0.0;
        bool failed = false;
        for (const double factor : {1.1, 0.9}) {
            SetupParams p = report.best_params;
            switch (a) {
            case 0: p.sigma_e *= factor; break;
            case 1: p.sigma_o *= factor; break;
            case 2: p.sigma_p *= factor; break;
            case 3: p.length *= factor; break;
            default: p.kappa_f *= factor; break;
            }
            try {
                const double raw =
                    evaluate_objective(spec.objective, p, spec.rel_tol).raw;
                rel = std::max(rel, std::fabs(raw - report.best_raw) /
                                        report.best_raw);
            } catch (const std::exception&) {
                failed = true;
            }
        }
        report.sensitivity[std::size_t(a)] = failed ? -1.0 : rel;
    }
    return report;
}

} // namespace noonabs
