#include "wprelay/outage/multicell.hpp"

#include "wprelay/battery/steady_state.hpp"
#include "wprelay/errors.hpp"
#include "wprelay/model/kernels.hpp"
#include "wprelay/numerics/special.hpp"

#include <cmath>
#include <stdexcept>

namespace wpr::outage {
namespace {
constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

struct McParts {
    double q1; // first hop, under interference
    double w;  // second hop, interference free
};

// Success factors at an arbitrary threshold so the xi -> 0 floors reuse the
// same code path.
McParts parts_uniform(const model::MultiCellConfig& mc, double xi) {
    return {q1_uniform(mc, xi), w_uniform(mc, xi)};
}

McParts parts_nearest(const model::MultiCellConfig& mc, double lambda_eff, double xi) {
    return {q1_nearest(mc, lambda_eff, xi), w_nearest(mc, lambda_eff, xi)};
}

OutageEstimate compose(model::SchemeId scheme, double mean_eligible,
                       const McParts& parts, double eta_weight, EstimateMode mode) {
    const double p_void = std::exp(-mean_eligible);
    OutageEstimate e;
    e.value = clamp01(p_void + (1.0 - p_void) * (1.0 - eta_weight * parts.q1 * parts.w));
    e.mode = mode;
    e.scheme = scheme;
    return e;
}

OutageEstimate evaluate(model::SchemeId scheme, const model::MultiCellConfig& mc,
                        double xi, EstimateMode mode) {
    model::validate(mc);
    const model::NetworkConfig& base = mc.base;
    const double m = model::derive(base).mean_count;
    switch (scheme) {
    case model::SchemeId::RRS: {
        const double eta1 = battery::steady_state(model::SchemeId::RRS, base).eta1;
        return compose(scheme, m, parts_uniform(mc, xi), eta1, mode);
    }
    case model::SchemeId::RCS: {
        const double eta1 = battery::steady_state(model::SchemeId::RCS, base).eta1;
        return compose(scheme, m, parts_nearest(mc, base.lambda, xi), eta1, mode);
    }
    case model::SchemeId::RRSB: {
        const double eta1 = battery::steady_state(model::SchemeId::RRSB, base).eta1;
        const double m_charged = m * eta1;
        return compose(scheme, m_charged, parts_uniform(mc, xi), 1.0, mode);
    }
    case model::SchemeId::RCSB: {
        const double eta1 = battery::steady_state(model::SchemeId::RCSB, base).eta1;
        const double lambda_charged = base.lambda * eta1;
        return compose(scheme, m * eta1, parts_nearest(mc, lambda_charged, xi), 1.0, mode);
    }
    case model::SchemeId::DB:
        throw model_domain_error("outage_multicell: DB is not defined in the multi-cell model");
    }
    throw std::invalid_argument("unknown scheme id");
}

} // namespace

InterferenceSpec interference_spec(const model::MultiCellConfig& config) {
    return {config.mu, config.base.rho, config.base.alpha};
}

double laplace_interference(double s, const InterferenceSpec& spec) {
    if (s < 0.0) throw model_domain_error("laplace_interference: s must be >= 0");
    if (!(spec.mu > 0.0) || !(spec.exclusion_radius > 0.0))
        throw model_domain_error("laplace_interference: mu and exclusion_radius must be > 0");
    if (!(spec.alpha > 2.0))
        throw model_domain_error("laplace_interference: requires alpha > 2");
    if (s == 0.0) return 1.0;
    const double delta = 2.0 / spec.alpha;
    const double rho2 = spec.exclusion_radius * spec.exclusion_radius;
    const double y = s / std::pow(spec.exclusion_radius, spec.alpha);
    const double yp1 = y + 1.0;
    const double hyp = numerics::gauss_2f1(1.0, 2.0, 2.0 - delta, y / yp1);
    const double bracket = y * hyp / ((1.0 - delta) * yp1 * yp1) - y / yp1;
    return std::exp(-kPi * spec.mu * rho2 * bracket);
}

double q1_uniform(const model::MultiCellConfig& mc, double xi,
                  const numerics::QuadratureSpec& spec) {
    const InterferenceSpec isp = interference_spec(mc);
    const double eps = model::derive(mc.base).epsilon;
    const double alpha = mc.base.alpha;
    const double rho = mc.base.rho;
    auto integrand = [&](double x) {
        const double xa = std::pow(x, alpha);
        return std::exp(-xi * xa) * laplace_interference(eps * xa, isp) * x;
    };
    return clamp01(2.0 / (rho * rho) * numerics::integrate_1d(integrand, 0.0, rho, spec));
}

double q1_nearest(const model::MultiCellConfig& mc, double lambda_eff, double xi,
                  const numerics::QuadratureSpec& spec) {
    if (!(lambda_eff > 0.0))
        throw model_domain_error("q1_nearest: lambda_eff must be > 0");
    const InterferenceSpec isp = interference_spec(mc);
    const double eps = model::derive(mc.base).epsilon;
    const double alpha = mc.base.alpha;
    const double rho = mc.base.rho;
    const double lp = lambda_eff * kPi;
    const double norm = -std::expm1(-lp * rho * rho);
    auto integrand = [&](double x) {
        const double xa = std::pow(x, alpha);
        return std::exp(-xi * xa - lp * x * x) * laplace_interference(eps * xa, isp) * x;
    };
    return clamp01(2.0 * lp / norm * numerics::integrate_1d(integrand, 0.0, rho, spec));
}

double w_uniform(const model::MultiCellConfig& mc, double xi,
                 const numerics::QuadratureSpec& spec) {
    const double alpha = mc.base.alpha;
    const double rho = mc.base.rho;
    const double xi_psi = xi / mc.base.psi;
    auto integrand = [&](double r, double theta) {
        const double c = model::relay_dest_distance(r, theta, mc.base.d0);
        return std::exp(-xi_psi * std::pow(c, alpha)) * r;
    };
    const double area = numerics::integrate_polar_disc(integrand, rho, spec);
    return clamp01(std::exp(-xi_psi) * area / (kPi * rho * rho));
}

double w_nearest(const model::MultiCellConfig& mc, double lambda_eff, double xi,
                 const numerics::QuadratureSpec& spec) {
    if (!(lambda_eff > 0.0))
        throw model_domain_error("w_nearest: lambda_eff must be > 0");
    const double alpha = mc.base.alpha;
    const double rho = mc.base.rho;
    const double xi_psi = xi / mc.base.psi;
    const double lp = lambda_eff * kPi;
    const double norm = -std::expm1(-lp * rho * rho);
    auto integrand = [&](double r, double theta) {
        const double c = model::relay_dest_distance(r, theta, mc.base.d0);
        return std::exp(-xi_psi * std::pow(c, alpha) - lp * r * r) * r;
    };
    const double area = numerics::integrate_polar_disc(integrand, rho, spec);
    return clamp01(std::exp(-xi_psi) * lambda_eff / norm * area);
}

double decode_success_rrs_mc(const model::MultiCellConfig& config) {
    model::validate(config);
    return q1_uniform(config, model::derive(config.base).xi);
}

OutageEstimate outage_multicell(model::SchemeId scheme, const model::MultiCellConfig& config) {
    return evaluate(scheme, config, model::derive(config.base).xi, EstimateMode::analytic);
}

OutageEstimate outage_multicell_floor(model::SchemeId scheme, const model::MultiCellConfig& config) {
    return evaluate(scheme, config, 0.0, EstimateMode::asymptotic);
}

} // namespace wpr::outage
