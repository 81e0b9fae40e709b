#include "plap/radial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plap {

// ---------------------------------------------------------------------------
// interpolation

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n != y_.size() || n < 2)
        throw std::invalid_argument("PchipInterpolant: need matching arrays, n >= 2");
    std::vector<double> h(n - 1), d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        if (!(h[i] > 0.0))
            throw std::invalid_argument("PchipInterpolant: x must be strictly increasing");
        d[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
}

double PchipInterpolant::operator()(double x) const {
    const std::size_t n = x_.size();
    std::size_t i;
    if (x <= x_.front()) {
        i = 0;
    } else if (x >= x_.back()) {
        i = n - 2;
    } else {
        i = static_cast<std::size_t>(
                std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    }
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * slope_[i] + h01 * y_[i + 1] + h * h11 * slope_[i + 1];
}

// ---------------------------------------------------------------------------
// profiles

double PowerLawAffine::value(double r) const {
    return coefficient * (std::pow(r, exponent) + offset);
}

double PowerLawAffine::derivative(double r) const {
    if (exponent == 0.0) return 0.0;
    return coefficient * exponent * std::pow(r, exponent - 1.0);
}

RadialProfile RadialProfile::power_law(double coefficient, double exponent, double offset) {
    RadialProfile prof;
    prof.is_power_law_ = true;
    prof.power_ = {coefficient, exponent, offset};
    prof.singular_at_origin_ = exponent < 0.0 && coefficient != 0.0;
    return prof;
}

RadialProfile RadialProfile::constant(double v) { return power_law(v, 0.0, 0.0); }

RadialProfile RadialProfile::sampled(std::vector<double> radii, std::vector<double> values,
                                     std::vector<double> derivatives) {
    const std::size_t n = radii.size();
    if (n < 64)
        throw std::invalid_argument("sampled profile needs at least 64 nodes");
    if (values.size() != n || (!derivatives.empty() && derivatives.size() != n))
        throw std::invalid_argument("sampled profile: array size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(radii[i] > 0.0) || radii[i] > 1.0)
            throw std::invalid_argument("sampled radii must lie in (0, 1]");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("sampled radii must be strictly increasing");
    }
    RadialProfile prof;
    prof.is_power_law_ = false;
    prof.value_interp_ = PchipInterpolant(radii, values);
    if (!derivatives.empty())
        prof.derivative_interp_ = PchipInterpolant(radii, derivatives);
    // heuristic: growing magnitude toward the first node marks an origin singularity
    prof.singular_at_origin_ =
        std::abs(values.front()) > 10.0 * std::abs(values.back()) + 10.0;
    prof.radii_ = std::move(radii);
    prof.values_ = std::move(values);
    prof.derivatives_ = std::move(derivatives);
    return prof;
}

double RadialProfile::value(double r) const {
    if (is_power_law_) return power_.value(r);
    return value_interp_(r);
}

bool RadialProfile::has_derivative() const {
    return is_power_law_ || !derivative_interp_.empty();
}

double RadialProfile::derivative(double r) const {
    if (is_power_law_) return power_.derivative(r);
    if (derivative_interp_.empty())
        throw std::logic_error("sampled profile has no derivative data");
    return derivative_interp_(r);
}

double RadialProfile::boundary_value() const {
    if (is_power_law_) return power_.value(1.0);
    return values_.back();
}

// ---------------------------------------------------------------------------
// flux map

double phi(double t, double p) {
    if (!std::isfinite(t)) throw std::invalid_argument("phi: non-finite input");
    if (t == 0.0) return 0.0;
    return std::pow(std::abs(t), p - 2.0) * t;
}

double phi_inverse(double s, double p) {
    if (!std::isfinite(s)) throw std::invalid_argument("phi_inverse: non-finite input");
    if (s == 0.0) return 0.0;
    return std::pow(std::abs(s), (2.0 - p) / (p - 1.0)) * s;
}

// ---------------------------------------------------------------------------
// solver

double cumulative_source(const RadialProfile& f, double r, const ExponentContext& ctx,
                         const QuadratureConfig& cfg) {
    if (!(r > 0.0) || r > 1.0)
        throw std::invalid_argument("cumulative_source: r must lie in (0, 1]");
    const double nd = static_cast<double>(ctx.n);
    if (f.is_power_law()) {
        const PowerLawAffine& pw = f.power();
        const double kappa = pw.exponent;
        if (kappa <= -nd)
            throw std::invalid_argument(
                "source not integrable against s^{n-1}: exponent " +
                std::to_string(kappa) + " <= -n = " + std::to_string(-nd));
        // integral of a*(s^kappa + c)*s^{n-1}: both terms are pure powers
        double F = pw.coefficient * std::pow(r, kappa + nd) / (kappa + nd);
        if (pw.offset != 0.0)
            F += pw.coefficient * pw.offset * std::pow(r, nd) / nd;
        return F;
    }
    auto integrand = [&](double s) { return f.value(s) * std::pow(s, nd - 1.0); };
    return integrate_with_origin_singularity(integrand, cfg.origin_cutoff, r, cfg);
}

RadialProfile solve_radial(const RadialProfile& f, const ExponentContext& ctx,
                           const QuadratureConfig& cfg, std::size_t grid_size) {
    cfg.validate();
    if (grid_size < 64)
        throw std::invalid_argument("solve_radial: grid_size must be >= 64");
    const double nd = static_cast<double>(ctx.n);

    // geometric grid from origin_cutoff to 1
    std::vector<double> r(grid_size);
    const double log_lo = std::log(cfg.origin_cutoff);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(grid_size - 1);
        r[i] = std::exp(log_lo * (1.0 - t));
    }
    r.back() = 1.0;

    auto flux_slope = [&](double t) {
        const double F = cumulative_source(f, t, ctx, cfg);
        return phi_inverse(-F / std::pow(t, nd - 1.0), ctx.p);
    };

    std::vector<double> u(grid_size), du(grid_size);
    u.back() = 0.0;
    du.back() = flux_slope(1.0);
    for (std::size_t i = grid_size - 1; i-- > 0;) {
        const double piece = integrate_adaptive(flux_slope, r[i], r[i + 1], cfg);
        u[i] = u[i + 1] - piece;
        du[i] = flux_slope(r[i]);
    }
    return RadialProfile::sampled(std::move(r), std::move(u), std::move(du));
}

double p_laplacian_residual(const RadialProfile& u, const RadialProfile& f,
                            const ExponentContext& ctx, const std::vector<double>& radii,
                            const QuadratureConfig& cfg) {
    if (!u.has_derivative())
        throw std::invalid_argument("p_laplacian_residual: profile lacks derivative data");
    const double lo = cfg.origin_cutoff * 10.0;
    const double nd = static_cast<double>(ctx.n);
    constexpr double kFloor = 1e-300;

    auto flux = [&](double r) {
        return std::pow(r, nd - 1.0) * phi(u.derivative(r), ctx.p);
    };

    double worst = 0.0;
    for (double r : radii) {
        if (r < lo || r > 0.99)
            throw std::invalid_argument("residual radius " + std::to_string(r) +
                                        " outside safe window [" + std::to_string(lo) +
                                        ", 0.99]");
        const double h = r * 1e-5;
        const double dflux = (flux(r + h) - flux(r - h)) / (2.0 * h);
        const double lhs = -dflux / std::pow(r, nd - 1.0);
        const double fr = f.value(r);
        const double rel = std::abs(lhs - fr) / (std::abs(fr) + kFloor);
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace plap
