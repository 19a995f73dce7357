#pragma once
// N-photon absorption scaling of ideal single-mode states (thermal, coherent,
// Fock) and two-mode path-entangled |N::0> states. Probabilities are relative:
// P_n = <a^dag^n a^n> / <a^dag a>^n with the overall rate constant set to one.

#include <cmath>
#include <vector>

#include "noonabs/errors.hpp"

namespace noonabs {

struct IdealState {
    enum class Kind { thermal, coherent, fock, noon };
    Kind kind = Kind::thermal;
    double mean_photons = 0.0; // thermal/coherent
    int photons = 0;           // fock/noon

    static IdealState thermal(double nbar) {
        if (!(nbar > 0.0))
            throw DomainError("thermal mean photon number must be positive");
        IdealState s;
        s.kind = Kind::thermal;
        s.mean_photons = nbar;
        return s;
    }
    static IdealState coherent(double nbar) {
        if (!(nbar > 0.0))
            throw DomainError("coherent mean photon number must be positive");
        IdealState s;
        s.kind = Kind::coherent;
        s.mean_photons = nbar;
        return s;
    }
    static IdealState fock(int n_photons) {
        if (n_photons < 1)
            throw DomainError("Fock photon number must be at least 1");
        IdealState s;
        s.kind = Kind::fock;
        s.photons = n_photons;
        return s;
    }
    static IdealState noon(int n_photons) {
        if (n_photons < 1)
            throw DomainError("N00N photon number must be at least 1");
        IdealState s;
        s.kind = Kind::noon;
        s.photons = n_photons;
        return s;
    }
};

struct MomentReport {
    int n = 0;
    double normally_ordered_moment = 0.0;
    double mean = 0.0;
    double probability = 0.0; // normally_ordered_moment / mean^n
};

namespace detail {

// Exact through 12!, log-gamma above (overflow-safe before ratios are formed).
inline double factorial(int k) {
    static constexpr double kExact[13] = {1.0,     1.0,      2.0,       6.0,      24.0,
                                          120.0,   720.0,    5040.0,    40320.0,  362880.0,
                                          3628800.0, 39916800.0, 479001600.0};
    if (k <= 12)
        return kExact[k];
    return std::exp(std::lgamma(k + 1.0));
}

// N!/(N-n)!
inline double falling_factorial(int N, int n) {
    if (N <= 12)
        return factorial(N) / factorial(N - n);
    return std::exp(std::lgamma(N + 1.0) - std::lgamma(N - n + 1.0));
}

// c'_j = sqrt(j+1) c_{j+1}
inline void apply_annihilation(std::vector<double>& c) {
    for (std::size_t j = 0; j + 1 < c.size(); ++j)
        c[j] = std::sqrt(static_cast<double>(j + 1)) * c[j + 1];
    c.back() = 0.0;
}

// Two-mode a = a1 + a2 acting on coefficients c[j][k] over |j,k>.
inline void apply_annihilation_two_mode(std::vector<std::vector<double>>& c) {
    const std::size_t dim = c.size();
    std::vector<std::vector<double>> out(dim, std::vector<double>(dim, 0.0));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) {
            double v = 0.0;
            if (j + 1 < dim)
                v += std::sqrt(static_cast<double>(j + 1)) * c[j + 1][k];
            if (k + 1 < dim)
                v += std::sqrt(static_cast<double>(k + 1)) * c[j][k + 1];
            out[j][k] = v;
        }
    c.swap(out);
}

inline double squared_norm(const std::vector<double>& c) {
    double s = 0.0;
    for (double v : c)
        s += v * v;
    return s;
}

} // namespace detail

// Closed-form normally ordered moment, mean, and relative probability.
inline MomentReport absorption_probability(const IdealState& state, int n) {
    if (n < 1)
        throw DomainError("absorption order must be at least 1");
    MomentReport r;
    r.n = n;
    switch (state.kind) {
    case IdealState::Kind::thermal:
        r.normally_ordered_moment =
            detail::factorial(n) * std::pow(state.mean_photons, n);
        r.mean = state.mean_photons;
        break;
    case IdealState::Kind::coherent:
        r.normally_ordered_moment = std::pow(state.mean_photons, n);
        r.mean = state.mean_photons;
        break;
    case IdealState::Kind::fock:
        if (n > state.photons)
            throw DomainError("absorption order exceeds Fock photon number");
        r.normally_ordered_moment = detail::falling_factorial(state.photons, n);
        r.mean = state.photons;
        break;
    case IdealState::Kind::noon:
        if (n > state.photons)
            throw DomainError("absorption order exceeds N00N photon number");
        // a^N annihilates both branches into the same vacuum, doubling the
        // moment; for n < N the branches stay orthogonal. The N = 1 state has
        // nonvanishing cross terms <a1^dag a2>, raising the mean to 2.
        r.normally_ordered_moment = (n == state.photons)
                                        ? 2.0 * detail::factorial(state.photons)
                                        : detail::falling_factorial(state.photons, n);
        r.mean = (state.photons == 1) ? 2.0 : static_cast<double>(state.photons);
        break;
    }
    r.probability = r.normally_ordered_moment / std::pow(r.mean, n);
    return r;
}

// <a^dag^n a^n> by explicit ladder action in a Fock basis truncated at
// `truncation` photons per mode. Mixture tails outside the basis must carry
// less than 1e-10 probability mass.
inline double brute_force_moment(const IdealState& state, int n, int truncation) {
    if (n < 1)
        throw DomainError("absorption order must be at least 1");
    if (truncation < 1)
        throw DomainError("truncation must be at least 1");
    constexpr double kTailBound = 1e-10;
    const std::size_t dim = static_cast<std::size_t>(truncation) + 1;

    switch (state.kind) {
    case IdealState::Kind::fock: {
        if (state.photons > truncation)
            throw TruncationError("Fock component lies outside the truncated basis");
        if (n > state.photons)
            throw DomainError("absorption order exceeds Fock photon number");
        std::vector<double> c(dim, 0.0);
        c[static_cast<std::size_t>(state.photons)] = 1.0;
        for (int k = 0; k < n; ++k)
            detail::apply_annihilation(c);
        return detail::squared_norm(c);
    }
    case IdealState::Kind::noon: {
        if (state.photons > truncation)
            throw TruncationError("N00N component lies outside the truncated basis");
        if (n > state.photons)
            throw DomainError("absorption order exceeds N00N photon number");
        std::vector<std::vector<double>> c(dim, std::vector<double>(dim, 0.0));
        const double amp = 1.0 / std::sqrt(2.0);
        c[static_cast<std::size_t>(state.photons)][0] = amp;
        c[0][static_cast<std::size_t>(state.photons)] = amp;
        for (int k = 0; k < n; ++k)
            detail::apply_annihilation_two_mode(c);
        double s = 0.0;
        for (const auto& row : c)
            s += detail::squared_norm(row);
        return s;
    }
    case IdealState::Kind::thermal: {
        // Bose-Einstein weights p_j = nbar^j / (1+nbar)^{j+1}; geometric tail.
        const double nbar = state.mean_photons;
        const double ratio = nbar / (1.0 + nbar);
        const double tail = std::pow(ratio, truncation + 1);
        if (!(tail < kTailBound))
            throw TruncationError("thermal tail mass exceeds 1e-10 at this truncation");
        double moment = 0.0;
        double weight = 1.0 / (1.0 + nbar);
        std::vector<double> c(dim, 0.0);
        for (std::size_t j = 0; j < dim; ++j) {
            if (j > 0)
                weight *= ratio;
            if (static_cast<int>(j) >= n) {
                std::fill(c.begin(), c.end(), 0.0);
                c[j] = 1.0;
                for (int k = 0; k < n; ++k)
                    detail::apply_annihilation(c);
                moment += weight * detail::squared_norm(c);
            }
        }
        return moment;
    }
    case IdealState::Kind::coherent: {
        const double nbar = state.mean_photons;
        std::vector<double> c(dim, 0.0);
        c[0] = std::exp(-0.5 * nbar);
        for (std::size_t j = 1; j < dim; ++j)
            c[j] = c[j - 1] * std::sqrt(nbar / static_cast<double>(j));
        const double tail = std::max(0.0, 1.0 - detail::squared_norm(c));
        if (!(tail < kTailBound))
            throw TruncationError("coherent tail mass exceeds 1e-10 at this truncation");
        for (int k = 0; k < n; ++k)
            detail::apply_annihilation(c);
        return detail::squared_norm(c);
    }
    }
    throw DomainError("unknown state kind");
}

struct ScalingRow {
    int N = 0;
    double thermal = 0.0;
    double coherent = 0.0;
    double fock = 0.0;
    double noon = 0.0;
};

// P_N at order N for each source, normalized so coherent = 1 at every row.
inline std::vector<ScalingRow> scaling_table(int max_N) {
    if (max_N < 1 || max_N > 20)
        throw DomainError("scaling table supports 1 <= max_N <= 20");
    std::vector<ScalingRow> rows;
    rows.reserve(static_cast<std::size_t>(max_N));
    for (int N = 1; N <= max_N; ++N) {
        ScalingRow row;
        row.N = N;
        row.thermal = absorption_probability(IdealState::thermal(1.0), N).probability;
        row.coherent = absorption_probability(IdealState::coherent(1.0), N).probability;
        row.fock = absorption_probability(IdealState::fock(N), N).probability;
        row.noon = absorption_probability(IdealState::noon(N), N).probability;
        rows.push_back(row);
    }
    return rows;
}

} // namespace noonabs
