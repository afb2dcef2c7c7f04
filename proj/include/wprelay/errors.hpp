#pragma once
// Error types shared across the library. Numerical routines throw instead of
// returning sentinels: a truncated series or an unmet quadrature tolerance is
// a bug in the caller's parameters, not a value.

#include <stdexcept>
#include <string>

namespace wpr {

// Series exceeded its iteration cap before reaching tolerance.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best, int iterations)
        : std::runtime_error(what), best_estimate(best), iterations_used(iterations) {}
    double best_estimate;
    int iterations_used;
};

// Adaptive quadrature ran out of subdivisions before meeting tolerance.
class tolerance_error : public std::runtime_error {
public:
    tolerance_error(const std::string& what, double best, double achieved)
        : std::runtime_error(what), best_estimate(best), achieved_error(achieved) {}
    double best_estimate;
    double achieved_error;
};

// Parameter regime where the model has no defined value (e.g. battery-starved
// RRSB steady state, RCS moderate asymptote with alpha != 2).
class model_domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace wpr
