#pragma once
// Closed-form single-cell outage probabilities for the five selection
// schemes, their high-SNR floors, and the moderate-SNR first-order
// expansions. The two per-hop success factors are exposed so each hop can be
// validated independently against conditional Monte Carlo estimates.

#include "wprelay/model/config.hpp"
#include "wprelay/numerics/quadrature.hpp"
#include "wprelay/outage/estimate.hpp"

namespace wpr::outage {

struct HopFactors {
    double first_hop;  // P(selected relay decodes the AP signal)
    double second_hop; // P(destination decodes the relayed signal)
};

// Uniform-position selected relay (random selection). first_hop = 1-F_u(xi);
// second_hop = e^(-xi/psi) (1/pi rho^2) . integral over the disc of
// e^(-(xi/psi) c(x,theta)^alpha) x dx dtheta.
HopFactors hop_factors_uniform(
    const model::NetworkConfig& config,
    const numerics::QuadratureSpec& spec = numerics::default_spec_2d());

// Success probability Q for uniform selection, product of the two factors.
double success_uniform(const model::NetworkConfig& config);

// Nearest-relay selection at effective relay density lambda_eff, with the
// nearest-distance density folded into each hop.
HopFactors hop_factors_nearest(
    const model::NetworkConfig& config, double lambda_eff,
    const numerics::QuadratureSpec& spec = numerics::default_spec_2d());

// Success probability Q' for nearest selection, evaluated as the literal
// triple integral (the factored product is used as a cross-check in tests):
//   Q' = 2 pi lambda_eff^2 e^(-xi(1+1/psi)) / (1-e^(-m_eff))^2
//        . integral over r, x in [0,rho], theta in [0,2pi) of
//          e^(-(xi/psi) c(r,theta)^alpha - lambda_eff pi r^2
//            - xi x^alpha - lambda_eff pi x^2) r x.
double success_nearest(
    const model::NetworkConfig& config, double lambda_eff,
    const numerics::QuadratureSpec& spec = numerics::default_spec_3d());

// Outage probabilities. The common shape is
//   Pi = P(no eligible relay) + P(some relay) (1 - eta1-weighted success).
OutageEstimate outage_rrs(const model::NetworkConfig& config);
OutageEstimate outage_rcs(const model::NetworkConfig& config);
OutageEstimate outage_rrsb(const model::NetworkConfig& config);
OutageEstimate outage_rcsb(const model::NetworkConfig& config);
// Beamforming scheme: Poisson mixture over the participating-relay count,
// truncated when a term past the mode of the mixture falls under term_tol.
// Throws convergence_error if k_max terms do not reach that point.
OutageEstimate outage_db(const model::NetworkConfig& config, int k_max = 60,
                         double term_tol = 1e-12);
OutageEstimate outage(model::SchemeId scheme, const model::NetworkConfig& config);

// High-SNR floors: RRS/RCS -> 1 - eta1; RRSB/RCSB -> e^(-lambda eta1 pi rho^2);
// DB -> e^(-lambda eta1_DB pi rho^2).
OutageEstimate outage_floor(model::SchemeId scheme, const model::NetworkConfig& config);

// First-order moderate-SNR expansions: RRS (any alpha), RCS (alpha = 2 only,
// else model_domain_error), DB (Bessel form e^(-m') I0(2 sqrt(z0 m'))).
// No such expansion exists for RRSB/RCSB; requesting one is a domain error.
OutageEstimate outage_asymptote_moderate(model::SchemeId scheme,
                                         const model::NetworkConfig& config);

} // namespace wpr::outage
