#pragma once
// Multi-cell outage: interferer field Laplace transform, interference-aware
// first-hop success factors, and the four multi-cell outage expressions.
// The cell is a disc of radius 1/(4 sqrt(mu)); interfering APs form a PPP of
// density mu outside it. The first hop uses unbounded path loss, the second
// hop is interference free (orthogonal relay channels) with the destination
// on the cell edge.

#include "wprelay/model/config.hpp"
#include "wprelay/numerics/quadrature.hpp"
#include "wprelay/outage/estimate.hpp"

namespace wpr::outage {

struct InterferenceSpec {
    double mu;               // interfering AP density per m^2
    double exclusion_radius; // no interferer closer than this (cell radius), m
    double alpha;            // path-loss exponent, > 2
};

InterferenceSpec interference_spec(const model::MultiCellConfig& config);

// E[e^(-s I)] for I = sum_j H_j r_j^(-alpha) over a PPP of density mu outside
// the exclusion radius, H_j unit-mean exponential. Closed form via 2F1 with
// y = s/exclusion_radius^alpha:
//   L(s) = exp(-pi mu rho^2 [ y 2F1(1,2; 2-delta; y/(y+1)) / ((1-delta)(y+1)^2)
//                             - y/(y+1) ]).
double laplace_interference(double s, const InterferenceSpec& spec);

// First-hop success factors: the selected relay decodes under interference.
// Uniform selection: Q1(xi) = (2/rho^2) integral_0^rho e^(-xi x^alpha) L(eps x^alpha) x dx.
double q1_uniform(const model::MultiCellConfig& config, double xi,
                  const numerics::QuadratureSpec& spec = numerics::default_spec_1d());
// Nearest selection at density lambda_eff:
//   Q1'(lambda_eff, xi) = 2 pi lambda_eff/(1-e^(-m_eff))
//                         . integral_0^rho e^(-xi x^alpha - lambda_eff pi x^2) L(eps x^alpha) x dx.
double q1_nearest(const model::MultiCellConfig& config, double lambda_eff, double xi,
                  const numerics::QuadratureSpec& spec = numerics::default_spec_1d());

// Second-hop success factors (interference free, bounded path loss, d0 = rho).
double w_uniform(const model::MultiCellConfig& config, double xi,
                 const numerics::QuadratureSpec& spec = numerics::default_spec_2d());
double w_nearest(const model::MultiCellConfig& config, double lambda_eff, double xi,
                 const numerics::QuadratureSpec& spec = numerics::default_spec_2d());

// First-hop success of the random-selection scheme at the configured
// threshold; exposed as the simulator's cross-check target.
double decode_success_rrs_mc(const model::MultiCellConfig& config);

// Outage per scheme (DB is single-cell only):
//   RRS/RCS:   void + (1-void)(1 - eta1 Q1 W), at the full density;
//   RRSB/RCSB: void and selection over the charged (thinned) process, no
//              battery factor: e^(-m_om) + (1-e^(-m_om))(1 - Q1 W).
OutageEstimate outage_multicell(model::SchemeId scheme, const model::MultiCellConfig& config);

// Xi -> 0 limit of the above; interference keeps the floors above the
// single-cell values because epsilon stays positive inside L(eps x^alpha).
OutageEstimate outage_multicell_floor(model::SchemeId scheme, const model::MultiCellConfig& config);

} // namespace wpr::outage
