#include "wprelay/battery/steady_state.hpp"

#include "wprelay/errors.hpp"
#include "wprelay/model/kernels.hpp"

#include <cmath>

namespace wpr::battery {
namespace {

SteadyState from_transitions(double pi0, double pi1) {
    SteadyState s;
    s.pi0 = pi0;
    s.pi1 = pi1;
    s.eta1 = pi0 / (pi0 + pi1);
    s.eta0 = pi1 / (pi0 + pi1);
    return s;
}

} // namespace

double charge_probability(const model::NetworkConfig& config) {
    return 1.0 - model::cdf_u(config.psi / config.zeta, config);
}

double mean_inverse_count_nonzero(double m) {
    if (m <= 0.0) throw model_domain_error("mean_inverse_count_nonzero: m must be > 0");
    if (m < 50.0) {
        double pmf = m * std::exp(-m); // k = 1 term of the Poisson pmf
        double sum = pmf;
        for (int k = 2; k <= 400; ++k) {
            pmf *= m / k;
            const double term = pmf / k;
            sum += term;
            if (k > m && term < 1e-18 * sum) return sum;
        }
        return sum; // tail beyond k=400 is below representable precision for m<50
    }
    // Asymptotic series sum_j j!/m^(j+1); terms shrink until j ~ m, far past
    // the point where they fall under double precision.
    double term = 1.0 / m;
    double sum = term;
    for (int j = 1; j <= 30; ++j) {
        term *= j / m;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

SteadyState steady_state(model::SchemeId scheme, const model::NetworkConfig& config,
                         CountAveraging averaging) {
    const model::DerivedParams d = model::derive(config);
    const double m = d.mean_count;
    const double pi0 = charge_probability(config);

    switch (scheme) {
    case model::SchemeId::RRS:
    case model::SchemeId::RCS: {
        const double pi1 = averaging == CountAveraging::jensen
                               ? 1.0 / m
                               : mean_inverse_count_nonzero(m);
        return from_transitions(pi0, pi1);
    }
    case model::SchemeId::RRSB:
    case model::SchemeId::RCSB: {
        if (pi0 < 1.0 / m)
            throw model_domain_error(
                "battery-starved regime: charge probability below 1/(lambda pi rho^2), "
                "no stationary battery distribution in this model");
        if (averaging == CountAveraging::jensen) {
            // eta1 = (pi0 - 1/m)/pi0; the matching pi1 is 1/(m eta1).
            const double eta1 = (pi0 - 1.0 / m) / pi0;
            return from_transitions(pi0, 1.0 / (m * eta1));
        }
        // Selection happens among charged relays only: the charged process is
        // the original PPP thinned by eta1, so pi1 = E[1/N'] at mean m*eta1.
        // Solve eta1 = pi0/(pi0 + g(m eta1)) by fixed point from the Jensen value.
        double eta1 = (pi0 - 1.0 / m) / pi0;
        for (int it = 0; it < 200; ++it) {
            const double next = pi0 / (pi0 + mean_inverse_count_nonzero(m * eta1));
            if (std::abs(next - eta1) < 1e-15) {
                const double pi1 = mean_inverse_count_nonzero(m * next);
                return from_transitions(pi0, pi1);
            }
            eta1 = next;
        }
        throw convergence_error("steady_state: RRSB fixed point did not converge",
                                eta1, 200);
    }
    case model::SchemeId::DB:
        return from_transitions(pi0, 1.0);
    }
    throw std::invalid_argument("unknown scheme id");
}

} // namespace wpr::battery
