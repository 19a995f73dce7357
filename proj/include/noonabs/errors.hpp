#pragma once

#include <stdexcept>
#include <string>

namespace noonabs {

// Input outside a function's documented domain (wavelength band, sign, range).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Result would exceed the representable range; caller must switch to a scaled form.
class OverflowDomainError : public std::range_error {
public:
    explicit OverflowDomainError(const std::string& what) : std::range_error(what) {}
};

// An integrand whose growth is not dominated by its decay; carries the exponent balance.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double decay, double growth)
        : std::runtime_error(what), decay_coefficient(decay), growth_coefficient(growth) {}
    double decay_coefficient;
    double growth_coefficient;
};

// Adaptive refinement stalled before the tolerance; best estimate still available.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double err, long evals)
        : std::runtime_error(what), best_estimate(estimate), abs_error_estimate(err),
          evaluations(evals) {}
    double best_estimate;
    double abs_error_estimate;
    long evaluations;
};

// Brute-force basis too small for the requested tail mass.
class TruncationError : public std::invalid_argument {
public:
    explicit TruncationError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace noonabs
