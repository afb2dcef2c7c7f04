#pragma once
// Adaptive Gauss-Kronrod (7-15) quadrature: 1D, polar-disc 2D, and a nested
// 3D form for the triple integral in the closest-relay outage expression.
// Integrands are passed with their Jacobian already applied.

#include "wprelay/errors.hpp"

#include <type_traits>
#include <utility>

namespace wpr::numerics {

struct QuadratureSpec {
    double relative_tolerance = 1e-8;
    double absolute_tolerance = 1e-14;
    int max_subdivisions = 4000;
};

inline QuadratureSpec default_spec_1d() { return {1e-8, 1e-14, 4000}; }
inline QuadratureSpec default_spec_2d() { return {1e-8, 1e-14, 4000}; }
inline QuadratureSpec default_spec_3d() { return {1e-6, 1e-13, 4000}; }

struct Bounds3 {
    double r_lo, r_hi;
    double x_lo, x_hi;
    double theta_lo, theta_hi;
};

namespace detail {
using erased_fn1 = double (*)(void*, double);
// Throws tolerance_error when max_subdivisions is exhausted above tolerance.
double adaptive_gk15(erased_fn1 f, void* ctx, double lo, double hi,
                     const QuadratureSpec& spec);
} // namespace detail

template <class F>
double integrate_1d(F&& f, double lo, double hi,
                    const QuadratureSpec& spec = default_spec_1d()) {
    using Fn = std::remove_reference_t<F>;
    auto thunk = [](void* ctx, double x) -> double {
        return (*static_cast<Fn*>(ctx))(x);
    };
    return detail::adaptive_gk15(+thunk, const_cast<Fn*>(&f), lo, hi, spec);
}

// integral over theta in [0,2pi), r in [0,rho] of f(r, theta); the caller's f
// carries the polar Jacobian r if it wants one.
template <class F>
double integrate_polar_disc(F&& f, double rho,
                            const QuadratureSpec& spec = default_spec_2d()) {
    QuadratureSpec inner = spec;
    inner.relative_tolerance *= 0.1;
    inner.absolute_tolerance *= 0.1;
    auto outer = [&](double theta) {
        auto g = [&](double r) { return f(r, theta); };
        return integrate_1d(g, 0.0, rho, inner);
    };
    constexpr double two_pi = 6.283185307179586476925287;
    return integrate_1d(outer, 0.0, two_pi, spec);
}

// Nested 3D integral of f(r, x, theta) over a box; evaluation order is
// theta-outer, r-middle, x-inner.
template <class F>
double integrate_3d(F&& f, const Bounds3& b,
                    const QuadratureSpec& spec = default_spec_3d()) {
    QuadratureSpec mid = spec;
    mid.relative_tolerance *= 0.2;
    mid.absolute_tolerance *= 0.1;
    QuadratureSpec inner = mid;
    inner.relative_tolerance *= 0.2;
    inner.absolute_tolerance *= 0.1;
    auto outer = [&](double theta) {
        auto over_r = [&](double r) {
            auto over_x = [&](double x) { return f(r, x, theta); };
            return integrate_1d(over_x, b.x_lo, b.x_hi, inner);
        };
        return integrate_1d(over_r, b.r_lo, b.r_hi, mid);
    };
    return integrate_1d(outer, b.theta_lo, b.theta_hi, spec);
}

} // namespace wpr::numerics
