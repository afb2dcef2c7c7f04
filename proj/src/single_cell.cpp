#include "wprelay/outage/single_cell.hpp"

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

OutageEstimate analytic(double value, model::SchemeId scheme) {
    OutageEstimate e;
    e.value = clamp01(value);
    e.mode = EstimateMode::analytic;
    e.scheme = scheme;
    return e;
}

OutageEstimate asymptotic(double value, model::SchemeId scheme) {
    OutageEstimate e;
    e.value = clamp01(value);
    e.mode = EstimateMode::asymptotic;
    e.scheme = scheme;
    return e;
}

// void + success composition shared by all single-selection schemes.
double compose(double mean_eligible, double weighted_success) {
    const double p_void = std::exp(-mean_eligible);
    return p_void + (1.0 - p_void) * (1.0 - weighted_success);
}

} // namespace

const char* mode_name(EstimateMode mode) {
    switch (mode) {
    case EstimateMode::analytic: return "analytic";
    case EstimateMode::asymptotic: return "asymptotic";
    case EstimateMode::simulated: return "simulated";
    }
    throw std::invalid_argument("unknown estimate mode");
}

EstimateMode mode_from_name(std::string_view name) {
    if (name == "analytic") return EstimateMode::analytic;
    if (name == "asymptotic") return EstimateMode::asymptotic;
    if (name == "simulated") return EstimateMode::simulated;
    throw std::invalid_argument("unknown estimate mode: " + std::string(name));
}

HopFactors hop_factors_uniform(const model::NetworkConfig& config,
                               const numerics::QuadratureSpec& spec) {
    const model::DerivedParams d = model::derive(config);
    const double xi_psi = d.xi / config.psi;
    const double first = 1.0 - model::cdf_u(d.xi, config);
    auto integrand = [&](double x, double theta) {
        const double c = model::relay_dest_distance(x, theta, config.d0);
        return std::exp(-xi_psi * std::pow(c, config.alpha)) * x;
    };
    const double area_integral = numerics::integrate_polar_disc(integrand, config.rho, spec);
    const double second = std::exp(-xi_psi) * area_integral / (kPi * config.rho * config.rho);
    return {clamp01(first), clamp01(second)};
}

double success_uniform(const model::NetworkConfig& config) {
    const HopFactors h = hop_factors_uniform(config);
    return h.first_hop * h.second_hop;
}

HopFactors hop_factors_nearest(const model::NetworkConfig& config, double lambda_eff,
                               const numerics::QuadratureSpec& spec) {
    if (!(lambda_eff > 0.0))
        throw model_domain_error("hop_factors_nearest: lambda_eff must be > 0");
    const model::DerivedParams d = model::derive(config);
    const double xi_psi = d.xi / config.psi;
    const double lp = lambda_eff * kPi;
    const double m_eff = lp * config.rho * config.rho;
    const double norm = -std::expm1(-m_eff); // 1 - e^(-m_eff)

    auto first_integrand = [&](double x) {
        return std::exp(-d.xi * std::pow(x, config.alpha) - lp * x * x) * x;
    };
    const double first = 2.0 * lp * std::exp(-d.xi) / norm
                         * numerics::integrate_1d(first_integrand, 0.0, config.rho, spec);

    auto second_integrand = [&](double r, double theta) {
        const double c = model::relay_dest_distance(r, theta, config.d0);
        return std::exp(-xi_psi * std::pow(c, config.alpha) - lp * r * r) * r;
    };
    const double second = std::exp(-xi_psi) * (lambda_eff / norm)
                          * numerics::integrate_polar_disc(second_integrand, config.rho, spec);
    return {clamp01(first), clamp01(second)};
}

double success_nearest(const model::NetworkConfig& config, double lambda_eff,
                       const numerics::QuadratureSpec& spec) {
    if (!(lambda_eff > 0.0))
        throw model_domain_error("success_nearest: lambda_eff must be > 0");
    const model::DerivedParams d = model::derive(config);
    const double xi_psi = d.xi / config.psi;
    const double lp = lambda_eff * kPi;
    const double m_eff = lp * config.rho * config.rho;
    const double norm = -std::expm1(-m_eff);

    auto integrand = [&](double r, double x, double theta) {
        const double c = model::relay_dest_distance(r, theta, config.d0);
        return std::exp(-xi_psi * std::pow(c, config.alpha) - lp * r * r
                        - d.xi * std::pow(x, config.alpha) - lp * x * x)
               * r * x;
    };
    const numerics::Bounds3 bounds{0.0, config.rho, 0.0, config.rho, 0.0, 2.0 * kPi};
    const double triple = numerics::integrate_3d(integrand, bounds, spec);
    const double prefactor = 2.0 * kPi * lambda_eff * lambda_eff
                             * std::exp(-d.xi * (1.0 + 1.0 / config.psi)) / (norm * norm);
    return clamp01(prefactor * triple);
}

OutageEstimate outage_rrs(const model::NetworkConfig& config) {
    const model::DerivedParams d = model::derive(config);
    const double eta1 = battery::steady_state(model::SchemeId::RRS, config).eta1;
    const double q = success_uniform(config);
    return analytic(compose(d.mean_count, eta1 * q), model::SchemeId::RRS);
}

OutageEstimate outage_rcs(const model::NetworkConfig& config) {
    const model::DerivedParams d = model::derive(config);
    const double eta1 = battery::steady_state(model::SchemeId::RCS, config).eta1;
    const double qp = success_nearest(config, config.lambda);
    return analytic(compose(d.mean_count, eta1 * qp), model::SchemeId::RCS);
}

OutageEstimate outage_rrsb(const model::NetworkConfig& config) {
    const double eta1 = battery::steady_state(model::SchemeId::RRSB, config).eta1;
    const double mean_charged = config.lambda * eta1 * kPi * config.rho * config.rho;
    const double q = success_uniform(config);
    return analytic(compose(mean_charged, q), model::SchemeId::RRSB);
}

OutageEstimate outage_rcsb(const model::NetworkConfig& config) {
    const double eta1 = battery::steady_state(model::SchemeId::RCSB, config).eta1;
    const double lambda_charged = config.lambda * eta1;
    const double mean_charged = lambda_charged * kPi * config.rho * config.rho;
    const double qp = success_nearest(config, lambda_charged);
    return analytic(compose(mean_charged, qp), model::SchemeId::RCSB);
}

OutageEstimate outage_db(const model::NetworkConfig& config, int k_max, double term_tol) {
    if (k_max < 1) throw std::invalid_argument("outage_db: k_max must be >= 1");
    const model::DerivedParams d = model::derive(config);
    const double eta1 = battery::steady_state(model::SchemeId::DB, config).eta1;
    // Participating relays: present, charged, and first-hop successful; an
    // independent thinning of the PPP.
    const double lambda_part = config.lambda * eta1 * (1.0 - model::cdf_u(d.xi, config));
    const double mp = lambda_part * kPi * config.rho * config.rho;
    const double z0 = d.xi * (1.0 + std::pow(config.d0, config.alpha)) / config.psi;

    double pmf = std::exp(-mp); // Poisson pmf at k, starting at k = 0
    double sum = pmf;           // k = 0: zero participants, certain outage
    for (int k = 1; k <= k_max; ++k) {
        pmf *= mp / k;
        const double term = numerics::gamma_lower_regularized(k, z0) * pmf;
        sum += term;
        // Terms rise until k ~ mp, so the tolerance cut only applies past the mode.
        if (k >= mp && term < term_tol) {
            OutageEstimate e = analytic(sum, model::SchemeId::DB);
            return e;
        }
    }
    throw convergence_error("outage_db: series not converged within k_max terms",
                            clamp01(sum), k_max);
}

OutageEstimate outage(model::SchemeId scheme, const model::NetworkConfig& config) {
    switch (scheme) {
    case model::SchemeId::RRS: return outage_rrs(config);
    case model::SchemeId::RCS: return outage_rcs(config);
    case model::SchemeId::RRSB: return outage_rrsb(config);
    case model::SchemeId::RCSB: return outage_rcsb(config);
    case model::SchemeId::DB: return outage_db(config);
    }
    throw std::invalid_argument("unknown scheme id");
}

OutageEstimate outage_floor(model::SchemeId scheme, const model::NetworkConfig& config) {
    const double eta1 = battery::steady_state(scheme, config).eta1;
    const double disc = kPi * config.rho * config.rho;
    switch (scheme) {
    case model::SchemeId::RRS:
    case model::SchemeId::RCS:
        return asymptotic(1.0 - eta1, scheme);
    case model::SchemeId::RRSB:
    case model::SchemeId::RCSB:
    case model::SchemeId::DB:
        return asymptotic(std::exp(-config.lambda * eta1 * disc), scheme);
    }
    throw std::invalid_argument("unknown scheme id");
}

OutageEstimate outage_asymptote_moderate(model::SchemeId scheme,
                                         const model::NetworkConfig& config) {
    const model::DerivedParams d = model::derive(config);
    const double eta1 = battery::steady_state(scheme, config).eta1;
    switch (scheme) {
    case model::SchemeId::RRS: {
        const double bracket =
            1.0 - d.xi * ((1.0 + std::pow(config.d0, config.alpha)) / config.psi + 1.0);
        return asymptotic(1.0 - eta1 * bracket, scheme);
    }
    case model::SchemeId::RCS: {
        if (config.alpha != 2.0)
            throw model_domain_error(
                "outage_asymptote_moderate: RCS expansion only holds for alpha = 2");
        const double lp = config.lambda * kPi;
        const double m = lp * config.rho * config.rho;
        const double first = lp / (lp + d.xi)
                             * (1.0 + d.xi * config.rho * config.rho * std::exp(-m)
                                          / (-std::expm1(-m)));
        const double bracket =
            1.0 - d.xi * ((1.0 + config.d0 * config.d0) / config.psi + 1.0);
        return asymptotic(1.0 - eta1 * first * bracket, scheme);
    }
    case model::SchemeId::DB: {
        const double lambda_part = config.lambda * eta1 * (1.0 - model::cdf_u(d.xi, config));
        const double mp = lambda_part * kPi * config.rho * config.rho;
        const double z0 = d.xi * (1.0 + std::pow(config.d0, config.alpha)) / config.psi;
        return asymptotic(std::exp(-mp) * numerics::bessel_i0(2.0 * std::sqrt(z0 * mp)),
                          scheme);
    }
    case model::SchemeId::RRSB:
    case model::SchemeId::RCSB:
        throw model_domain_error(
            "outage_asymptote_moderate: no moderate-SNR expansion for battery-aware selection");
    }
    throw std::invalid_argument("unknown scheme id");
}

} // namespace wpr::outage
