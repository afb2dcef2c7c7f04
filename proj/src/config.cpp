#include "wprelay/model/config.hpp"

#include "wprelay/errors.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace wpr::model {
namespace {
constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void bad_field(const char* what) {
    throw std::invalid_argument(std::string("invalid config: ") + what);
}
} // namespace

const char* scheme_name(SchemeId scheme) {
    switch (scheme) {
    case SchemeId::RRS: return "RRS";
    case SchemeId::RCS: return "RCS";
    case SchemeId::RRSB: return "RRSB";
    case SchemeId::RCSB: return "RCSB";
    case SchemeId::DB: return "DB";
    }
    throw std::invalid_argument("unknown scheme id");
}

SchemeId scheme_from_name(std::string_view name) {
    std::string upper;
    upper.reserve(name.size());
    for (char c : name) upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (upper == "RRS") return SchemeId::RRS;
    if (upper == "RCS") return SchemeId::RCS;
    if (upper == "RRSB") return SchemeId::RRSB;
    if (upper == "RCSB") return SchemeId::RCSB;
    if (upper == "DB") return SchemeId::DB;
    throw std::invalid_argument("unknown scheme name: " + std::string(name));
}

void validate(const NetworkConfig& c) {
    if (!(c.lambda > 0.0) || !std::isfinite(c.lambda)) bad_field("lambda must be > 0");
    if (!(c.rho > 0.0) || !std::isfinite(c.rho)) bad_field("rho must be > 0");
    // alpha = 2 (free space) is admitted: every closed form below stays valid
    // for delta = 2/alpha <= 1, and the distance-based selection analysis is
    // stated for alpha = 2.
    if (!(c.alpha >= 2.0) || !std::isfinite(c.alpha)) bad_field("alpha must be >= 2");
    if (!(c.power > 0.0) || !std::isfinite(c.power)) bad_field("power must be > 0");
    if (!(c.psi > 0.0 && c.psi < 1.0)) bad_field("psi must be in (0,1)");
    if (!(c.noise > 0.0) || !std::isfinite(c.noise)) bad_field("noise must be > 0");
    if (!(c.rate > 0.0) || !std::isfinite(c.rate)) bad_field("rate must be > 0");
    if (!(c.d0 > 0.0) || !std::isfinite(c.d0)) bad_field("d0 must be > 0");
    if (!(c.zeta > 0.0 && c.zeta <= 1.0)) bad_field("zeta must be in (0,1]");
}

DerivedParams derive(const NetworkConfig& c) {
    validate(c);
    DerivedParams d;
    d.delta = 2.0 / c.alpha;
    d.epsilon = std::exp2(2.0 * c.rate) - 1.0;
    d.xi = d.epsilon * c.noise / c.power;
    d.p_relay = c.psi * c.power;
    d.mean_count = c.lambda * kPi * c.rho * c.rho;
    return d;
}

MultiCellConfig make_multicell(NetworkConfig base, double mu,
                               double truncation_radius) {
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw std::invalid_argument("invalid config: mu must be > 0");
    if (!(base.alpha > 2.0))
        throw model_domain_error(
            "multi-cell model requires alpha > 2 (interference integral diverges at alpha = 2)");
    base.rho = 1.0 / (4.0 * std::sqrt(mu));
    base.d0 = base.rho;
    if (truncation_radius <= 0.0) {
        // Mean interference from beyond R scales as R^(2-alpha); cut where the
        // tail drops below 1e-6 of the total from [rho, inf).
        truncation_radius = base.rho * std::pow(1e6, 1.0 / (base.alpha - 2.0));
    }
    MultiCellConfig mc{base, mu, truncation_radius};
    validate(mc);
    return mc;
}

void validate(const MultiCellConfig& c) {
    validate(c.base);
    if (!(c.mu > 0.0) || !std::isfinite(c.mu)) bad_field("mu must be > 0");
    if (!(c.base.alpha > 2.0)) bad_field("multi-cell alpha must be > 2");
    const double rho_expected = 1.0 / (4.0 * std::sqrt(c.mu));
    if (std::abs(c.base.rho - rho_expected) > 1e-12 * rho_expected)
        bad_field("rho must equal 1/(4*sqrt(mu)); use make_multicell");
    if (std::abs(c.base.d0 - c.base.rho) > 1e-12 * c.base.rho)
        bad_field("multi-cell d0 must equal rho; use make_multicell");
    if (!(c.truncation_radius > c.base.rho))
        bad_field("truncation_radius must exceed rho");
}

} // namespace wpr::model
