#pragma once
// Network parameter sets and derived quantities shared by the analytic and
// Monte Carlo engines. All powers are linear watts; dB conversion is a CLI
// concern only.

#include <string>
#include <string_view>

namespace wpr::model {

struct NetworkConfig {
    double lambda = 1.0;  // relay density per m^2
    double rho = 3.0;     // deployment disc radius, m
    double alpha = 3.0;   // path-loss exponent
    double power = 10.0;  // AP transmit power, linear W
    double psi = 0.1;     // battery-size ratio P_r/P, in (0,1)
    double noise = 1.0;   // AWGN variance, linear W
    double rate = 0.01;   // target spectral efficiency, BPCU
    double d0 = 6.0;      // AP-destination distance, m
    double zeta = 1.0;    // RF-to-DC conversion efficiency, in (0,1]
};

struct DerivedParams {
    double delta;       // 2/alpha
    double epsilon;     // SNR threshold 2^(2*rate) - 1
    double xi;          // normalized threshold epsilon*noise/power
    double p_relay;     // relay transmit power psi*power, W
    double mean_count;  // expected relay count lambda*pi*rho^2
};

enum class SchemeId { RRS, RCS, RRSB, RCSB, DB };

inline constexpr SchemeId kAllSchemes[5] = {SchemeId::RRS, SchemeId::RCS,
                                            SchemeId::RRSB, SchemeId::RCSB,
                                            SchemeId::DB};

const char* scheme_name(SchemeId scheme);
// Throws std::invalid_argument for unknown names. Case-insensitive.
SchemeId scheme_from_name(std::string_view name);

// Throws std::invalid_argument naming the offending field.
void validate(const NetworkConfig& config);
DerivedParams derive(const NetworkConfig& config);

struct MultiCellConfig {
    NetworkConfig base;       // base.rho and base.d0 are tied to mu
    double mu;                // AP density per m^2
    double truncation_radius; // interferer sampling cutoff R_max, m
};

// Builds a multi-cell config from a template: the cell is approximated by a
// disc of radius 1/(4*sqrt(mu)) and the destination sits on its edge, so
// base.rho and base.d0 are overwritten. truncation_radius <= 0 selects the
// default cutoff, chosen so the expected interference beyond it is below
// 1e-6 of the total mean. Requires alpha > 2.
MultiCellConfig make_multicell(NetworkConfig base, double mu,
                               double truncation_radius = 0.0);
void validate(const MultiCellConfig& config);

} // namespace wpr::model
