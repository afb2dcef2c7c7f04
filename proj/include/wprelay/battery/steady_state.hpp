#pragma once
// Two-state battery Markov chain: transition probabilities and stationary
// distribution per selection scheme. A battery charges in one slot iff the
// harvested input clears the storage threshold (u >= psi/zeta) and empties
// the moment its relay transmits.

#include "wprelay/model/config.hpp"

namespace wpr::battery {

struct SteadyState {
    double pi0;  // P(empty -> charged): harvest success probability
    double pi1;  // P(charged -> empty): selection probability
    double eta0; // stationary P(empty)  = pi1/(pi0+pi1)
    double eta1; // stationary P(charged) = pi0/(pi0+pi1)
};

// How the selection probability E[1/N] is evaluated. The closed forms use
// the Jensen swap E[1/N] ~= 1/E[N]; the exact truncated-Poisson sum is kept
// so the approximation gap itself can be measured.
enum class CountAveraging { jensen, exact_poisson };

// pi0 = 1 - F_u(psi/zeta).
double charge_probability(const model::NetworkConfig& config);

// E[1/N restricted to N>=1] for N ~ Poisson(m): e^(-m) sum_{k>=1} m^k/(k! k).
// Evaluated by pmf recurrence for m < 50 and by the asymptotic series
// sum_j j!/m^(j+1) above.
double mean_inverse_count_nonzero(double m);

// Stationary distribution for the given scheme.
//   RRS/RCS:   pi1 = E[1/N] (selection uniform over all relays)
//   RRSB/RCSB: pi1 = E[1/N_charged]; solved self-consistently. Requires
//              pi0 >= 1/(lambda pi rho^2), else model_domain_error
//              (battery-starved regime, no stationary point in the model).
//   DB:        pi1 = 1 (every charged relay discharges each slot).
SteadyState steady_state(model::SchemeId scheme, const model::NetworkConfig& config,
                         CountAveraging averaging = CountAveraging::jensen);

} // namespace wpr::battery
