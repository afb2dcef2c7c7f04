#include "wprelay/model/kernels.hpp"

#include "wprelay/errors.hpp"
#include "wprelay/numerics/special.hpp"

#include <cmath>

namespace wpr::model {
namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

double path_loss_bounded(double distance, double alpha) {
    return 1.0 + std::pow(distance, alpha);
}

double path_loss_unbounded(double distance, double alpha) {
    return std::pow(distance, alpha);
}

double cdf_u(double x, const NetworkConfig& config) {
    if (x < 0.0) throw model_domain_error("cdf_u: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double delta = 2.0 / config.alpha;
    const double z = x * std::pow(config.rho, config.alpha);
    if (x < 1e-12) {
        // gamma(delta, z)/x^delta -> rho^2/delta as x -> 0; expand
        // delta*gamma(delta,z)/z^delta = 1 - delta z/(delta+1) + delta z^2/(2(delta+2)) - ...
        const double series = 1.0 - delta * z / (delta + 1.0)
                              + delta * z * z / (2.0 * (delta + 2.0));
        const double f = 1.0 - std::exp(-x) * series;
        return f < 0.0 ? 0.0 : f;
    }
    const double g = numerics::gamma_lower(delta, z);
    const double f = 1.0 - (delta / (config.rho * config.rho)) * std::exp(-x) * g
                               / std::pow(x, delta);
    if (f < 0.0) return 0.0;
    if (f > 1.0) return 1.0;
    return f;
}

double nearest_distance_pdf(double r, const NetworkConfig& config) {
    if (r < 0.0 || r > config.rho)
        throw model_domain_error("nearest_distance_pdf: r outside [0, rho]");
    const double lp = config.lambda * kPi;
    const double m = lp * config.rho * config.rho;
    return 2.0 * lp * r * std::exp(-lp * r * r) / (-std::expm1(-m));
}

double relay_dest_distance(double d_i, double theta, double d0) {
    const double c2 = d_i * d_i + d0 * d0 - 2.0 * d_i * d0 * std::cos(theta);
    return std::sqrt(c2 > 0.0 ? c2 : 0.0);
}

} // namespace wpr::model
