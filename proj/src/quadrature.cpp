#include "wprelay/numerics/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wpr::numerics::detail {
namespace {

// Kronrod-15 abscissae (positive half) and weights; even indices are the
// embedded Gauss-7 points.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(erased_fn1 f, void* ctx, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv[j] = f(ctx, center - dx);
        fv[14 - j] = f(ctx, center + dx);
    }
    fv[7] = f(ctx, center);

    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        const double sum = fv[j] + fv[14 - j];
        resk += kWgk[j] * sum;
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }

    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fv[7] - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));

    const double integral = resk * half;
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {integral, err};
}

struct Segment {
    double lo, hi;
    double integral, error;
};

} // namespace

double adaptive_gk15(erased_fn1 f, void* ctx, double lo, double hi,
                     const QuadratureSpec& spec) {
    if (lo == hi) return 0.0;

    std::vector<Segment> segs;
    segs.reserve(64);
    PanelResult first = gk15(f, ctx, lo, hi);
    segs.push_back({lo, hi, first.integral, first.error});

    double total = first.integral;
    double err_total = first.error;

    const double min_width = 16.0 * 2.2204460492503131e-16 * std::abs(hi - lo);

    while (static_cast<int>(segs.size()) < spec.max_subdivisions) {
        const double tol = std::max(spec.absolute_tolerance,
                                    spec.relative_tolerance * std::abs(total));
        if (err_total <= tol) return total;

        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;

        Segment s = segs[worst];
        if (std::abs(s.hi - s.lo) < min_width) break;

        const double mid = 0.5 * (s.lo + s.hi);
        PanelResult left = gk15(f, ctx, s.lo, mid);
        PanelResult right = gk15(f, ctx, mid, s.hi);

        total += left.integral + right.integral - s.integral;
        err_total += left.error + right.error - s.error;

        segs[worst] = {s.lo, mid, left.integral, left.error};
        segs.push_back({mid, s.hi, right.integral, right.error});
    }

    const double tol = std::max(spec.absolute_tolerance,
                                spec.relative_tolerance * std::abs(total));
    if (err_total <= tol) return total;
    throw tolerance_error("quadrature failed to reach requested tolerance",
                          total, err_total);
}

} // namespace wpr::numerics::detail
