#pragma once
// Command line surface: flag/config resolution, JSON and CSV artifacts,
// figure-reproduction datasets, and the exit-code contract.
//
// Units at this boundary: bandwidths in Hz, lengths in mm, wavelengths in um,
// grid times in units of 1e-13 s. Exit codes: 0 success, 2 input or usage
// error, 3 divergence, 4 quadrature failure.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "noonabs/absorption.hpp"
#include "noonabs/biphoton.hpp"
#include "noonabs/dispersion.hpp"
#include "noonabs/ideal_states.hpp"
#include "noonabs/io.hpp"
#include "noonabs/optimize.hpp"
#include "noonabs/parallel.hpp"

namespace noonabs::cli {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitQuadrature = 4;

// Missing or malformed values; the dispatcher appends the command schema.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Per-command value store with flag > config file > default precedence.
// Config keys match the long flag names (length_mm for --length).
class CommandArgs {
public:
    explicit CommandArgs(CLI::App* cmd) : cmd_(cmd) {
        cmd_->add_option("--config", config_path_,
                         "key=value or JSON config file; flags override it");
        cmd_->add_option("--out", out_path_,
                         "write the artifact to this file instead of stdout");
    }

    CLI::App* command() const { return cmd_; }

    void add(const std::string& flag, const std::string& key,
             const std::string& help) {
        Slot& slot = slots_[key];
        slot.option = cmd_->add_option(flag, slot.value, help);
    }

    void add_positional(const std::string& name, const std::string& key,
                        const std::string& help) {
        Slot& slot = slots_[key];
        slot.option = cmd_->add_option(name, slot.value, help);
    }

    void load_config() {
        if (!config_path_.empty())
            cfg_ = load_config_file(config_path_);
    }

    std::optional<std::string> raw(const std::string& key) const {
        const auto it = slots_.find(key);
        if (it != slots_.end() && it->second.option->count() > 0)
            return it->second.value;
        if (const std::string* v = cfg_.find(key))
            return *v;
        return std::nullopt;
    }

    std::string require(const std::string& key) const {
        if (auto v = raw(key))
            return *v;
        throw UsageError("missing required value for " + key +
                         " (flag or config key)");
    }

    double number(const std::string& key) const {
        return parse_number(require(key), key);
    }
    double number_or(const std::string& key, double fallback) const {
        if (auto v = raw(key))
            return parse_number(*v, key);
        return fallback;
    }
    long integer_or(const std::string& key, long fallback) const {
        if (auto v = raw(key))
            return parse_integer(*v, key);
        return fallback;
    }
    std::string string_or(const std::string& key,
                          const std::string& fallback) const {
        if (auto v = raw(key))
            return *v;
        return fallback;
    }

    const std::string& out_path() const { return out_path_; }
    void default_out(const std::string& path) {
        if (out_path_.empty())
            out_path_ = path;
    }

private:
    struct Slot {
        CLI::Option* option = nullptr;
        std::string value;
    };
    CLI::App* cmd_;
    std::string config_path_;
    std::string out_path_;
    std::map<std::string, Slot> slots_;
    Config cfg_;
};

inline SetupParams pulsed_setup(const CommandArgs& a) {
    SetupParams s;
    s.sigma_e = a.number("sigma_e");
    s.sigma_o = a.number("sigma_o");
    s.sigma_p = a.number("sigma_p");
    s.length = a.number("length_mm") * 1e-3;
    s.kappa_f = a.number("kappa_f");
    s.lambda_pump = a.number_or("lambda_pump_um", 0.4);
    return s;
}

// Scaling anchor; overridable through config-only reference_* keys.
inline SetupParams reference_setup(const CommandArgs& a) {
    SetupParams r = default_reference_setup();
    r.sigma_e = a.number_or("reference_sigma_e", r.sigma_e);
    r.sigma_o = a.number_or("reference_sigma_o", r.sigma_o);
    r.sigma_p = a.number_or("reference_sigma_p", r.sigma_p);
    r.length = a.number_or("reference_length_mm", r.length * 1e3) * 1e-3;
    r.kappa_f = a.number_or("reference_kappa_f", r.kappa_f);
    r.lambda_pump = a.number_or("reference_lambda_pump_um", r.lambda_pump);
    return r;
}

inline std::string cmd_dispersion(CommandArgs& a) {
    const double lambda = a.number_or("lambda_pump_um", 0.4);
    const CrystalDispersion crystal = bbo_crystal();
    const VelocityBundle v = velocity_bundle(lambda, crystal);
    Json j;
    j["command"] = "dispersion";
    j["crystal"] = crystal.name;
    j["lambda_pump_um"] = lambda;
    j["lambda_daughters_um"] = 2.0 * lambda;
    j["optic_axis_angle_deg"] = crystal.optic_axis_angle * 180.0 / kPi;
    j["index_ordinary_daughter"] = index_ordinary(crystal, 2.0 * lambda);
    j["index_effective_daughter"] = index_effective(crystal, 2.0 * lambda);
    j["index_effective_pump"] = index_effective(crystal, lambda);
    j["group_velocity_ordinary_m_per_s"] = v.U_o;
    j["group_velocity_extraordinary_m_per_s"] = v.U_e;
    j["group_velocity_pump_m_per_s"] = v.U_p;
    j["walkoff_pump_vs_extraordinary_s_per_m"] = v.u_e;
    j["walkoff_pump_vs_ordinary_s_per_m"] = v.u_o;
    j["walkoff_ordinary_vs_extraordinary_s_per_m"] = v.U2;
    return j.dump(2) + "\n";
}

inline std::string ideal_rows_csv(int n_max, const std::string& head) {
    std::string text = head;
    text += csv_row({"n_photons", "thermal", "coherent", "noon", "fock"});
    for (const ScalingRow& row : scaling_table(n_max))
        text += csv_row({std::to_string(row.N), format_g17(row.thermal),
                         format_g17(row.coherent), format_g17(row.noon),
                         format_g17(row.fock)});
    return text;
}

inline std::string cmd_ideal_scan(CommandArgs& a) {
    const long n_max = a.integer_or("n_max", 10);
    if (n_max < 1 || n_max > 20)
        throw DomainError("n-max must lie in [1, 20]");
    const std::string format = a.string_or("format", "csv");
    if (format == "json") {
        Json j;
        j["command"] = "ideal-scan";
        j["n_max"] = n_max;
        Json rows = Json::array();
        for (const ScalingRow& row : scaling_table(int(n_max))) {
            Json r;
            r["n_photons"] = row.N;
            r["thermal"] = row.thermal;
            r["coherent"] = row.coherent;
            r["noon"] = row.noon;
            r["fock"] = row.fock;
            rows.push_back(r);
        }
        j["rows"] = rows;
        return j.dump(2) + "\n";
    }
    if (format != "csv")
        throw DomainError("format must be csv or json");
    return ideal_rows_csv(int(n_max),
                          "# n-photon absorption at order n, coherent source = 1\n");
}

inline std::string amplitude_grid_csv(const SetupParams& s, double t_min,
                                      double t_max, int points,
                                      const std::string& head) {
    if (!(std::isfinite(t_min) && std::isfinite(t_max) && t_min < t_max))
        throw DomainError("grid times need t_min < t_max, both finite");
    if (points < 2 || points > 4001)
        throw DomainError("grid points must lie in [2, 4001]");
    const VelocityBundle b = velocity_bundle(s.lambda_pump, s.crystal);
    const AmplitudeKernelConstants k = make_amplitude_constants(s, b);
    std::string text = head;
    text += "# sigma_e=" + format_g17(s.sigma_e) + "\n";
    text += "# sigma_o=" + format_g17(s.sigma_o) + "\n";
    text += "# sigma_p=" + format_g17(s.sigma_p) + "\n";
    text += "# length_mm=" + format_g17(s.length * 1e3) + "\n";
    text += "# lambda_pump_um=" + format_g17(s.lambda_pump) + "\n";
    text += csv_row({"t1_1e-13_s", "t2_1e-13_s", "amplitude_abs"});
    for (int i = 0; i < points; ++i) {
        const double t1 =
            t_min + (t_max - t_min) * double(i) / double(points - 1);
        for (int j = 0; j < points; ++j) {
            const double t2 =
                t_min + (t_max - t_min) * double(j) / double(points - 1);
            const double mag =
                std::abs(amplitude_full(t1 * 1e-13, t2 * 1e-13, k));
            text += csv_row({format_g17(t1), format_g17(t2), format_g17(mag)});
        }
    }
    return text;
}

inline std::string cmd_amplitude_grid(CommandArgs& a) {
    SetupParams s;
    s.sigma_e = a.number("sigma_e");
    s.sigma_o = a.number("sigma_o");
    s.sigma_p = a.number("sigma_p");
    s.length = a.number("length_mm") * 1e-3;
    s.lambda_pump = a.number_or("lambda_pump_um", 0.4);
    const double t_min = a.number_or("t_min", -6.0);
    const double t_max = a.number_or("t_max", 6.0);
    const int points = int(a.integer_or("points", 121));
    return amplitude_grid_csv(s, t_min, t_max, points, "");
}

inline std::string cmd_absorption(CommandArgs& a) {
    const SetupParams s = pulsed_setup(a);
    const double rel_tol = a.number_or("rel_tol", kDefaultRelTol);
    const AbsorptionResult r = p2_pulsed(s, rel_tol);
    const double ref_raw = p2_pulsed(reference_setup(a), rel_tol).raw;
    Json j;
    j["command"] = "absorption";
    j["params"] = setup_to_json(s);
    j["raw_probability"] = r.raw;
    j["normalized_probability"] = r.normalized;
    j["scaled_probability"] = r.raw / ref_raw;
    j["reference_raw"] = ref_raw;
    j["quadrature_error_abs"] = r.quadrature_error;
    j["rel_tol"] = rel_tol;
    return j.dump(2) + "\n";
}

inline std::string cmd_cw_rate(CommandArgs& a) {
    SetupParams s;
    s.sigma_e = a.number("sigma_e");
    s.sigma_o = a.number("sigma_o");
    s.length = a.number("length_mm") * 1e-3;
    s.lambda_pump = a.number_or("lambda_pump_um", 0.4);
    const AbsorptionResult r = w2_cw(s);
    Json j;
    j["command"] = "cw-rate";
    j["params"] = cw_setup_to_json(s);
    j["raw_rate"] = r.raw;
    j["normalized_rate"] = r.normalized;
    return j.dump(2) + "\n";
}

inline std::string cmd_coherent_compare(CommandArgs& a) {
    const SetupParams s = pulsed_setup(a);
    const double rel_tol = a.number_or("rel_tol", kDefaultRelTol);
    const double intensity = a.number_or("intensity", 1.0);
    const CoherentComparison c = p2_coherent(s, intensity, rel_tol);
    Json j;
    j["command"] = "coherent-compare";
    j["params"] = setup_to_json(s);
    j["intensity"] = c.intensity;
    j["matched_amplitude_gamma"] = c.gamma;
    j["coherent_probability"] = c.p2_alpha;
    j["noon_probability_nofilter"] = p2_nofilter_limit(s);
    j["ratio_coherent_to_noon"] = c.ratio_to_noon;
    j["ratio_per_intensity_squared"] =
        c.ratio_to_noon / (intensity * intensity);
    j["rel_tol"] = rel_tol;
    return j.dump(2) + "\n";
}

inline SweepSpec sweep_spec_from(const CommandArgs& a) {
    SweepSpec spec;
    spec.objective = parse_objective(a.string_or("objective", "pulsed"));
    if (auto v = a.raw("sigma_e"))
        spec.sigma_e = parse_axis(*v, 1.0, "sigma_e");
    if (auto v = a.raw("sigma_o"))
        spec.sigma_o = parse_axis(*v, 1.0, "sigma_o");
    if (auto v = a.raw("sigma_p"))
        spec.sigma_p = parse_axis(*v, 1.0, "sigma_p");
    if (auto v = a.raw("length_mm"))
        spec.length = parse_axis(*v, 1e-3, "length_mm");
    if (auto v = a.raw("kappa_f"))
        spec.kappa_f = parse_axis(*v, 1.0, "kappa_f");
    spec.base.lambda_pump = a.number_or("lambda_pump_um", 0.4);
    spec.reference = reference_setup(a);
    spec.rel_tol = a.number_or("rel_tol", kDefaultRelTol);
    return spec;
}

inline std::string cmd_sweep(CommandArgs& a) {
    const SweepSpec spec = sweep_spec_from(a);
    const int threads = int(a.integer_or("threads", 0));
    const std::string format = a.string_or("format", "csv");
    const SweepResult res = sweep(spec, threads);
    if (format == "json") {
        Json j;
        j["command"] = "sweep";
        j["objective"] = objective_name(res.objective);
        j["reference_raw"] = res.reference_value;
        j["shape"] = res.shape;
        Json pts = Json::array();
        for (const SweepPoint& pt : res.points) {
            Json p;
            p["params"] = setup_to_json(pt.params);
            p["raw"] = pt.raw;
            p["normalized"] = pt.normalized;
            p["scaled"] = pt.scaled;
            p["quadrature_error"] = pt.quadrature_error;
            p["ok"] = pt.ok;
            p["error"] = pt.error_message;
            pts.push_back(p);
        }
        j["points"] = pts;
        return j.dump(2) + "\n";
    }
    if (format != "csv")
        throw DomainError("format must be csv or json");
    std::string text;
    text += "# objective=" + std::string(objective_name(res.objective)) + "\n";
    text += "# reference_raw=" + format_g17(res.reference_value) + "\n";
    text += csv_row({"sigma_e_hz", "sigma_o_hz", "sigma_p_hz", "length_mm",
                     "kappa_f_hz", "raw", "normalized", "scaled",
                     "quadrature_error", "status", "error"});
    for (const SweepPoint& pt : res.points)
        text += csv_row({format_g17(pt.params.sigma_e),
                         format_g17(pt.params.sigma_o),
                         format_g17(pt.params.sigma_p),
                         format_g17(pt.params.length * 1e3),
                         format_g17(pt.params.kappa_f), format_g17(pt.raw),
                         format_g17(pt.normalized), format_g17(pt.scaled),
                         format_g17(pt.quadrature_error),
                         pt.ok ? "ok" : "failed", pt.error_message});
    return text;
}

inline std::string cmd_optimize(CommandArgs& a) {
    const SweepSpec spec = sweep_spec_from(a);
    const double tolerance = a.number_or("tolerance", 1e-4);
    const int threads = int(a.integer_or("threads", 0));
    const std::string format = a.string_or("format", "json");
    if (format != "json")
        throw DomainError("optimize emits json only");
    const OptimumReport rep = maximize(spec, tolerance, threads);
    Json j;
    j["command"] = "optimize";
    j["objective"] = objective_name(rep.objective);
    j["reference_raw"] = rep.reference_value;
    j["best_params"] = setup_to_json(rep.best_params);
    j["best_value_scaled"] = rep.best_value;
    j["best_raw"] = rep.best_raw;
    Json sens;
    for (int ax = 0; ax < 5; ++ax)
        sens[sweep_axis_name(ax)] = rep.sensitivity[std::size_t(ax)];
    j["sensitivity"] = sens;
    j["evaluations"] = rep.trace.size();
    Json trace = Json::array();
    for (const TraceEntry& entry : rep.trace) {
        Json t;
        t["params"] = setup_to_json(entry.params);
        t["value"] = entry.value;
        trace.push_back(t);
    }
    j["trace"] = trace;
    return j.dump(2) + "\n";
}

namespace detail {

inline double lin_at(double lo, double hi, int i, int n) {
    return lo + (hi - lo) * double(i) / double(n - 1);
}
inline double log_at(double lo, double hi, int i, int n) {
    return lo * std::pow(hi / lo, double(i) / double(n - 1));
}

} // namespace detail

// Pulse-pumped surface over both filter bandwidths.
inline std::string figure_filters_csv(double rel_tol, int threads) {
    constexpr int n = 25;
    SetupParams base;
    base.sigma_p = 1e12;
    base.length = 2.3e-3;
    base.kappa_f = 1e14;
    const double ref_raw = p2_pulsed(default_reference_setup(), rel_tol).raw;
    std::vector<double> raw(std::size_t(n) * n);
    parallel_for(raw.size(), resolve_thread_count(threads), [&](std::size_t idx) {
        SetupParams s = base;
        s.sigma_e = detail::log_at(1e11, 3.1622776601683795e13, int(idx) / n, n);
        s.sigma_o = detail::log_at(1e11, 3.1622776601683795e13, int(idx) % n, n);
        raw[idx] = p2_pulsed(s, rel_tol).raw;
    });
    std::string text = "# figure=4\n# sigma_p=1e+12\n# length_mm=2.3\n# kappa_f=1e+14\n";
    text += "# reference_raw=" + format_g17(ref_raw) + "\n";
    text += csv_row({"sigma_e_hz", "sigma_o_hz", "raw", "scaled"});
    for (std::size_t idx = 0; idx < raw.size(); ++idx) {
        const double se = detail::log_at(1e11, 3.1622776601683795e13, int(idx) / n, n);
        const double so = detail::log_at(1e11, 3.1622776601683795e13, int(idx) % n, n);
        text += csv_row({format_g17(se), format_g17(so), format_g17(raw[idx]),
                         format_g17(raw[idx] / ref_raw)});
    }
    return text;
}

// Pump-bandwidth curves, one per final-state width.
inline std::string figure_pump_csv(double rel_tol, int threads) {
    constexpr int n = 25;
    const double kf_values[3] = {1e11, 1e12, 1e14};
    SetupParams base;
    base.sigma_e = 1e13;
    base.sigma_o = 1e13;
    base.length = 2.3e-3;
    const double ref_raw = p2_pulsed(default_reference_setup(), rel_tol).raw;
    std::vector<double> raw(3 * n);
    parallel_for(raw.size(), resolve_thread_count(threads), [&](std::size_t idx) {
        SetupParams s = base;
        s.kappa_f = kf_values[idx / n];
        s.sigma_p = detail::log_at(1e9, 1e13, int(idx % n), n);
        raw[idx] = p2_pulsed(s, rel_tol).raw;
    });
    std::string text = "# figure=5\n# sigma_e=1e+13\n# sigma_o=1e+13\n# length_mm=2.3\n";
    text += "# reference_raw=" + format_g17(ref_raw) + "\n";
    text += csv_row({"kappa_f_hz", "sigma_p_hz", "raw", "scaled"});
    for (std::size_t idx = 0; idx < raw.size(); ++idx)
        text += csv_row({format_g17(kf_values[idx / n]),
                         format_g17(detail::log_at(1e9, 1e13, int(idx % n), n)),
                         format_g17(raw[idx]), format_g17(raw[idx] / ref_raw)});
    return text;
}

// Crystal-length curves for a broad and a narrow filter pair.
inline std::string figure_length_csv(double rel_tol, int threads) {
    constexpr int n = 40;
    const double filters[2] = {1e13, 4e12};
    SetupParams base;
    base.sigma_p = 1e12;
    base.kappa_f = 1e14;
    const double ref_raw = p2_pulsed(default_reference_setup(), rel_tol).raw;
    std::vector<double> raw(2 * n);
    parallel_for(raw.size(), resolve_thread_count(threads), [&](std::size_t idx) {
        SetupParams s = base;
        s.sigma_e = filters[idx / n];
        s.sigma_o = filters[idx / n];
        s.length = detail::lin_at(0.5e-3, 20e-3, int(idx % n), n);
        raw[idx] = p2_pulsed(s, rel_tol).raw;
    });
    std::string text = "# figure=6\n# sigma_p=1e+12\n# kappa_f=1e+14\n";
    text += "# reference_raw=" + format_g17(ref_raw) + "\n";
    text += csv_row({"sigma_filter_hz", "length_mm", "raw", "scaled"});
    for (std::size_t idx = 0; idx < raw.size(); ++idx)
        text += csv_row({format_g17(filters[idx / n]),
                         format_g17(detail::lin_at(0.5, 20.0, int(idx % n), n)),
                         format_g17(raw[idx]), format_g17(raw[idx] / ref_raw)});
    return text;
}

// cw rate against crystal length, four filter settings, dataset-max scaling.
inline std::string figure_cw_length_csv() {
    constexpr int n = 40;
    const double filters[4] = {1e13, 7.5e12, 5e12, 2.5e12};
    std::vector<double> raw(4 * n);
    double top = 0.0;
    for (std::size_t idx = 0; idx < raw.size(); ++idx) {
        SetupParams s;
        s.sigma_e = filters[idx / n];
        s.sigma_o = filters[idx / n];
        s.length = detail::lin_at(0.5e-3, 20e-3, int(idx % n), n);
        raw[idx] = w2_cw(s).raw;
        top = std::max(top, raw[idx]);
    }
    std::string text = "# figure=7\n# scaling=dataset_max\n";
    text += "# dataset_max_raw=" + format_g17(top) + "\n";
    text += csv_row({"sigma_filter_hz", "length_mm", "raw", "scaled"});
    for (std::size_t idx = 0; idx < raw.size(); ++idx)
        text += csv_row({format_g17(filters[idx / n]),
                         format_g17(detail::lin_at(0.5, 20.0, int(idx % n), n)),
                         format_g17(raw[idx]), format_g17(raw[idx] / top)});
    return text;
}

// cw rate over both filter axes at fixed length, dataset-max scaling.
inline std::string figure_cw_filters_csv() {
    constexpr int n = 25;
    std::vector<double> raw(std::size_t(n) * n);
    double top = 0.0;
    for (std::size_t idx = 0; idx < raw.size(); ++idx) {
        SetupParams s;
        s.sigma_e = detail::lin_at(2.5e11, 1e13, int(idx) / n, n);
        s.sigma_o = detail::lin_at(2.5e11, 1e13, int(idx) % n, n);
        s.length = 6e-3;
        raw[idx] = w2_cw(s).raw;
        top = std::max(top, raw[idx]);
    }
    std::string text = "# figure=8\n# length_mm=6\n# scaling=dataset_max\n";
    text += "# dataset_max_raw=" + format_g17(top) + "\n";
    text += csv_row({"sigma_e_hz", "sigma_o_hz", "raw", "scaled"});
    for (std::size_t idx = 0; idx < raw.size(); ++idx)
        text += csv_row({format_g17(detail::lin_at(2.5e11, 1e13, int(idx) / n, n)),
                         format_g17(detail::lin_at(2.5e11, 1e13, int(idx) % n, n)),
                         format_g17(raw[idx]), format_g17(raw[idx] / top)});
    return text;
}

inline std::string figure_dataset(int id, double rel_tol, int threads) {
    switch (id) {
    case 1:
        return ideal_rows_csv(
            10, "# figure=1\n# n-photon absorption at order n, coherent source = 1\n");
    case 3: {
        SetupParams s;
        s.sigma_e = 1e13;
        s.sigma_o = 1e13;
        s.sigma_p = 1e13;
        s.length = 1.5e-2;
        return amplitude_grid_csv(s, -6.0, 6.0, 121, "# figure=3\n");
    }
    case 4:
        return figure_filters_csv(rel_tol, threads);
    case 5:
        return figure_pump_csv(rel_tol, threads);
    case 6:
        return figure_length_csv(rel_tol, threads);
    case 7:
        return figure_cw_length_csv();
    case 8:
        return figure_cw_filters_csv();
    default:
        throw DomainError("figure id must be one of 1, 3, 4, 5, 6, 7, 8");
    }
}

inline std::string cmd_reproduce_figure(CommandArgs& a) {
    const long id = parse_integer(a.require("id"), "figure id");
    const double rel_tol = a.number_or("rel_tol", kDefaultRelTol);
    const int threads = int(a.integer_or("threads", 0));
    const std::string content = figure_dataset(int(id), rel_tol, threads);
    a.default_out("figure" + std::to_string(id) + ".csv");
    return content;
}

using Handler = std::string (*)(CommandArgs&);

inline int run_cli(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err) {
    CLI::App app{"Two-photon absorption of down-converted light: dispersion, "
                 "rates, sweeps, optimization, and figure datasets.",
                 "noonabs"};
    app.require_subcommand(0, 1);

    std::vector<std::unique_ptr<CommandArgs>> bags;
    std::vector<std::pair<CommandArgs*, Handler>> table;
    auto make = [&](const char* name, const char* help,
                    Handler handler) -> CommandArgs& {
        CLI::App* cmd = app.add_subcommand(name, help);
        bags.push_back(std::make_unique<CommandArgs>(cmd));
        table.emplace_back(bags.back().get(), handler);
        return *bags.back();
    };

    {
        CommandArgs& a = make("dispersion",
                              "Indices and group velocities at the pump wavelength",
                              cmd_dispersion);
        a.add("--lambda-pump", "lambda_pump_um", "pump wavelength, um (default 0.4)");
    }
    {
        CommandArgs& a = make("ideal-scan",
                              "Ideal-state n-photon absorption scaling table",
                              cmd_ideal_scan);
        a.add("--n-max", "n_max", "largest photon number (default 10)");
        a.add("--format", "format", "csv or json (default csv)");
    }
    {
        CommandArgs& a = make("amplitude-grid",
                              "Biphoton amplitude magnitude over a detection-time grid",
                              cmd_amplitude_grid);
        a.add("--sigma-e", "sigma_e", "extraordinary filter bandwidth, Hz");
        a.add("--sigma-o", "sigma_o", "ordinary filter bandwidth, Hz");
        a.add("--sigma-p", "sigma_p", "pump bandwidth, Hz");
        a.add("--length", "length_mm", "crystal length, mm");
        a.add("--lambda-pump", "lambda_pump_um", "pump wavelength, um (default 0.4)");
        a.add("--t-min", "t_min", "grid start, 1e-13 s (default -6)");
        a.add("--t-max", "t_max", "grid end, 1e-13 s (default 6)");
        a.add("--points", "points", "points per axis (default 121)");
    }
    {
        CommandArgs& a = make("absorption",
                              "Two-photon absorption probability for one pulsed setup",
                              cmd_absorption);
        a.add("--sigma-e", "sigma_e", "extraordinary filter bandwidth, Hz");
        a.add("--sigma-o", "sigma_o", "ordinary filter bandwidth, Hz");
        a.add("--sigma-p", "sigma_p", "pump bandwidth, Hz");
        a.add("--length", "length_mm", "crystal length, mm");
        a.add("--kf", "kappa_f", "final-state width, Hz");
        a.add("--lambda-pump", "lambda_pump_um", "pump wavelength, um (default 0.4)");
        a.add("--rel-tol", "rel_tol", "quadrature relative tolerance");
    }
    {
        CommandArgs& a = make("cw-rate",
                              "Two-photon absorption rate for a cw-pumped setup",
                              cmd_cw_rate);
        a.add("--sigma-e", "sigma_e", "extraordinary filter bandwidth, Hz");
        a.add("--sigma-o", "sigma_o", "ordinary filter bandwidth, Hz");
        a.add("--length", "length_mm", "crystal length, mm");
        a.add("--lambda-pump", "lambda_pump_um", "pump wavelength, um (default 0.4)");
    }
    {
        CommandArgs& a = make("coherent-compare",
                              "Matched coherent pulse versus the entangled pair",
                              cmd_coherent_compare);
        a.add("--sigma-e", "sigma_e", "extraordinary filter bandwidth, Hz");
        a.add("--sigma-o", "sigma_o", "ordinary filter bandwidth, Hz");
        a.add("--sigma-p", "sigma_p", "pump bandwidth, Hz");
        a.add("--length", "length_mm", "crystal length, mm");
        a.add("--kf", "kappa_f", "final-state width, Hz");
        a.add("--intensity", "intensity", "mean photon pairs per pulse (default 1)");
        a.add("--lambda-pump", "lambda_pump_um", "pump wavelength, um (default 0.4)");
        a.add("--rel-tol", "rel_tol", "quadrature relative tolerance");
    }
    {
        CommandArgs& a = make("sweep",
                              "Cartesian grid over any of the five setup parameters",
                              cmd_sweep);
        a.add("--objective", "objective", "pulsed, cw, or nofilter_limit (default pulsed)");
        a.add("--sigma-e", "sigma_e", "Hz; number, log:MIN:MAX:N, or lin:MIN:MAX:N");
        a.add("--sigma-o", "sigma_o", "Hz; number or range");
        a.add("--sigma-p", "sigma_p", "Hz; number or range");
        a.add("--length", "length_mm", "mm; number or range");
        a.add("--kf", "kappa_f", "Hz; number or range");
        a.add("--lambda-pump", "lambda_pump_um", "pump wavelength, um (default 0.4)");
        a.add("--rel-tol", "rel_tol", "quadrature relative tolerance");
        a.add("--threads", "threads", "worker threads (default NOONABS_THREADS or 1)");
        a.add("--format", "format", "csv or json (default csv)");
    }
    {
        CommandArgs& a = make("optimize",
                              "Coarse scan plus simplex refinement of the objective",
                              cmd_optimize);
        a.add("--objective", "objective", "pulsed, cw, or nofilter_limit (default pulsed)");
        a.add("--sigma-e", "sigma_e", "Hz; number, log:MIN:MAX:N, or lin:MIN:MAX:N");
        a.add("--sigma-o", "sigma_o", "Hz; number or range");
        a.add("--sigma-p", "sigma_p", "Hz; number or range");
        a.add("--length", "length_mm", "mm; number or range");
        a.add("--kf", "kappa_f", "Hz; number or range");
        a.add("--lambda-pump", "lambda_pump_um", "pump wavelength, um (default 0.4)");
        a.add("--rel-tol", "rel_tol", "quadrature relative tolerance");
        a.add("--threads", "threads", "worker threads for the coarse scan");
        a.add("--tolerance", "tolerance", "refinement convergence tolerance (default 1e-4)");
        a.add("--format", "format", "json");
    }
    {
        CommandArgs& a = make("reproduce-figure",
                              "Plot-ready dataset for figure id 1, 3, 4, 5, 6, 7, or 8",
                              cmd_reproduce_figure);
        a.add_positional("id", "id", "figure id");
        a.add("--rel-tol", "rel_tol", "quadrature relative tolerance");
        a.add("--threads", "threads", "worker threads for grid figures");
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("noonabs");
    for (const std::string& s : args)
        argv.push_back(s.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n"
            << app.help("", CLI::AppFormatMode::All);
        return kExitInput;
    }

    for (auto& [bag, handler] : table) {
        if (!bag->command()->parsed())
            continue;
        try {
            bag->load_config();
            const std::string content = handler(*bag);
            if (bag->out_path().empty()) {
                out << content;
            } else {
                std::ofstream file(bag->out_path(), std::ios::binary);
                if (!file)
                    throw DomainError("cannot open output file: " + bag->out_path());
                file << content;
            }
            return kExitOk;
        } catch (const QuadratureError& e) {
            err << "quadrature failure: " << e.what() << "\n";
            return kExitQuadrature;
        } catch (const DivergenceError& e) {
            err << "divergence: " << e.what() << "\n";
            return kExitDivergence;
        } catch (const UsageError& e) {
            err << "usage error: " << e.what() << "\n\n" << bag->command()->help();
            return kExitInput;
        } catch (const std::exception& e) {
            err << "input error: " << e.what() << "\n";
            return kExitInput;
        }
    }
    err << "usage error: expected a command\n\n"
        << app.help("", CLI::AppFormatMode::All);
    return kExitInput;
}

inline int run_cli(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

} // namespace noonabs::cli
