#pragma once
// Distance and CDF kernels shared by both engines: the harvested-power CDF,
// the nearest-relay distance density, and the relay-to-destination cosine
// law. Both path-loss models live here under distinct names; the bounded one
// is the single-cell model, the unbounded one is multi-cell first hop only.

#include "wprelay/model/config.hpp"

namespace wpr::model {

// 1 + d^alpha: received power P|h|^2/(1+d^alpha) never exceeds P.
double path_loss_bounded(double distance, double alpha);
// d^alpha: conventional unbounded loss (multi-cell first hop).
double path_loss_unbounded(double distance, double alpha);

// CDF of u = |h|^2/(1+d^alpha) for d uniform on the disc of radius rho and
// |h|^2 unit-mean exponential:
//   F_u(x) = 1 - (delta/rho^2) e^(-x) gamma(delta, x rho^alpha) / x^delta.
// The x -> 0 indeterminacy is handled by series below x = 1e-12.
double cdf_u(double x, const NetworkConfig& config);

// Density of the distance from the AP to its nearest relay, conditioned on
// at least one relay being present:
//   f_r(r) = 2 lambda pi r e^(-lambda pi r^2) / (1 - e^(-lambda pi rho^2)).
// Throws model_domain_error for r outside [0, rho].
double nearest_distance_pdf(double r, const NetworkConfig& config);

// Relay-to-destination distance by the cosine law:
//   c = sqrt(d_i^2 + d0^2 - 2 d_i d0 cos(theta)).
double relay_dest_distance(double d_i, double theta, double d0);

} // namespace wpr::model
