#include "plap/exponents.hpp"

#include <cmath>
#include <limits>

namespace plap {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::Subcritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::Supercritical: return "supercritical";
    }
    return "unknown";
}

double unit_ball_volume(int n) {
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

ExponentContext validate_context(int n, double p, double q) {
    if (!std::isfinite(p) || !std::isfinite(q))
        throw validation_error("p and q must be finite");
    if (n < 3)
        throw validation_error("n must be an integer >= 3, got n=" + std::to_string(n));
    if (!(p > 1.0))
        throw validation_error("p must satisfy p > 1, got p=" + std::to_string(p));
    if (!(p < static_cast<double>(n)))
        throw validation_error("p must satisfy p < n, got p=" + std::to_string(p) +
                               " with n=" + std::to_string(n));
    if (!(q > 1.0))
        throw validation_error("q must satisfy q > 1, got q=" + std::to_string(q));

    ExponentContext ctx;
    ctx.n = n;
    ctx.p = p;
    ctx.q = q;

    const double nd = static_cast<double>(n);
    ctx.sobolev_conjugate = nd * p / (nd - p);
    ctx.iteration_ratio = (q - 1.0) * nd / (q * (nd - p));
    ctx.duality_floor = nd * p / (nd * p - nd + p);
    ctx.ambient_measure = unit_ball_volume(n);
    ctx.sphere_area = nd * ctx.ambient_measure;

    const double q_crit = nd / p;
    if (std::abs(q - q_crit) <= 1e-12 * q_crit) {
        ctx.regime = Regime::Critical;
        ctx.sharp_exponent = std::numeric_limits<double>::infinity();
    } else if (q < q_crit) {
        ctx.regime = Regime::Subcritical;
        ctx.sharp_exponent = (p - 1.0) * q * nd / (nd - p * q);
    } else {
        ctx.regime = Regime::Supercritical;
        ctx.sharp_exponent = std::numeric_limits<double>::infinity();
    }

    ctx.below_duality_floor = q < ctx.duality_floor;
    return ctx;
}

}  // namespace plap
