#include "plap/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace plap {
namespace {

// ordinary least squares y = a + b x; returns {a, b, r_squared}
struct LinFit {
    double a, b, r2, rms;
};

LinFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double a = (sy - b * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double pred = a + b * x[i];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    const double r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return {a, b, r2, std::sqrt(ss_res / n)};
}

}  // namespace

std::string to_string(DivergenceKind k) {
    switch (k) {
        case DivergenceKind::Convergent: return "convergent";
        case DivergenceKind::LogDivergent: return "log_divergent";
        case DivergenceKind::PowerDivergent: return "power_divergent";
        case DivergenceKind::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

double SharpnessExample::source_norm_q() const {
    return std::pow(ctx.sphere_area / (ell_sharp * ctx.q), 1.0 / ctx.q);
}

SharpnessExample build_example(const ExponentContext& ctx, double epsilon) {
    if (ctx.regime != Regime::Subcritical)
        throw std::invalid_argument("sharpness example requires a subcritical context");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");

    const double nd = static_cast<double>(ctx.n);
    const double p = ctx.p, q = ctx.q;
    const double gap = nd / q - p;  // > 0 in the subcritical regime
    const double ell = epsilon * gap * gap / ((p - 1.0) * nd + epsilon * gap);

    SharpnessExample ex;
    ex.ctx = ctx;
    ex.epsilon = epsilon;
    ex.ell_sharp = ell;
    ex.u_exponent = (p * q - nd + ell * q) / ((p - 1.0) * q);
    ex.u_coefficient = (p - 1.0) * std::pow(q, p / (p - 1.0)) /
                       (std::pow(nd * q - nd + ell * q, 1.0 / (p - 1.0)) *
                        (p * q - nd + ell * q));
    ex.threshold = (p - 1.0) * q * nd / (nd - p * q - ell * q);
    ex.f = RadialProfile::power_law(-1.0, ell - nd / q, 0.0);
    ex.u = RadialProfile::power_law(ex.u_coefficient, ex.u_exponent, -1.0);

    if (!(ell > 0.0) || !(ell * q > 0.0))
        throw std::logic_error("sharpness example: ell q must be positive");
    if (!(ex.u_exponent < 0.0))
        throw std::logic_error("sharpness example: u exponent must be negative");
    const double rel = std::abs(ex.threshold - (ctx.sharp_exponent + epsilon)) /
                       (ctx.sharp_exponent + epsilon);
    if (rel > 1e-10)
        throw std::logic_error("sharpness example: threshold != r* + epsilon");
    if (ex.u.value(1.0) != 0.0)
        throw std::logic_error("sharpness example: u(1) != 0");
    return ex;
}

PdeVerification verify_example_pde(const SharpnessExample& ex,
                                   const std::vector<double>& radii,
                                   const QuadratureConfig& cfg) {
    for (double r : radii)
        if (r < 1e-3 || r > 0.99)
            throw std::invalid_argument("verify_example_pde: radii must lie in [1e-3, 0.99]");
    PdeVerification out;
    out.residual_max = p_laplacian_residual(ex.u, ex.f, ex.ctx, radii, cfg);

    const RadialProfile solved = solve_radial(ex.f, ex.ctx, cfg, 512);
    double worst = 0.0;
    for (std::size_t i = 0; i < solved.radii().size(); ++i) {
        const double r = solved.radii()[i];
        if (r < 0.01 || r > 0.99) continue;
        const double exact = ex.u.value(r);
        worst = std::max(worst, std::abs(solved.values()[i] - exact) / std::abs(exact));
    }
    out.solver_gap_max = worst;
    return out;
}

std::vector<double> default_probe_deltas() {
    // 10 points log-spaced from 1e-2 down to 1e-7; the deepest decade keeps
    // the local exponent bias from the affine offset in u below the
    // classification margin
    std::vector<double> d(10);
    for (int i = 0; i < 10; ++i) d[i] = std::pow(10.0, -2.0 - 5.0 * i / 9.0);
    return d;
}

DivergenceClassification divergence_probe(const RadialProfile& u, double r_exp,
                                          const ExponentContext& ctx,
                                          const std::vector<double>& deltas,
                                          const QuadratureConfig& cfg) {
    if (deltas.size() < 6)
        throw std::invalid_argument("divergence_probe: need at least 6 deltas");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > cfg.origin_cutoff) || deltas[i] > 0.1)
            throw std::invalid_argument("divergence_probe: deltas must lie in (origin_cutoff, 0.1]");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw std::invalid_argument("divergence_probe: deltas must decrease");
    }
    const double nd = static_cast<double>(ctx.n);
    auto integrand = [&](double rho) {
        return std::pow(std::abs(u.value(rho)), r_exp) * std::pow(rho, nd - 1.0);
    };

    DivergenceClassification out;
    out.truncated.resize(deltas.size());
    double acc = integrate_adaptive(integrand, deltas.front(), 1.0, cfg);
    out.truncated[0] = ctx.sphere_area * acc;
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        acc += integrate_adaptive(integrand, deltas[i], deltas[i - 1], cfg);
        out.truncated[i] = ctx.sphere_area * acc;
    }

    // fit the last 4 increments: for integrand ~ rho^{kappa-1} the increment
    // over [d_{i+1}, d_i] scales like d^{kappa}, so the log-log slope of the
    // increments separates the three models
    const std::size_t m = deltas.size();
    std::vector<double> log_d, log_inc;
    for (std::size_t i = m - 5; i + 1 < m; ++i) {
        const double inc = out.truncated[i + 1] - out.truncated[i];
        if (!(inc > 0.0)) {  // already converged to quadrature precision
            out.kind = DivergenceKind::Convergent;
            out.limit_estimate = out.truncated.back();
            out.r_squared = 1.0;
            return out;
        }
        log_d.push_back(std::log(deltas[i + 1]));
        log_inc.push_back(std::log(inc));
    }
    const LinFit inc_fit = fit_line(log_d, log_inc);
    // a power-law increment sequence fits a line in log-log space to high
    // precision whatever its slope; judge the fit by its residual, not by R^2
    // (the variance vanishes when the increments are flat)
    if (inc_fit.rms > 0.05) {
        out.kind = DivergenceKind::Inconclusive;
        out.r_squared = inc_fit.r2;
        return out;
    }

    constexpr double kMargin = 0.02;
    if (inc_fit.b > kMargin) {
        out.kind = DivergenceKind::Convergent;
        // increments decay geometrically under a fixed delta ratio
        const double ratio = std::pow(deltas[m - 1] / deltas[m - 2], inc_fit.b);
        const double last_inc = out.truncated[m - 1] - out.truncated[m - 2];
        out.limit_estimate = out.truncated.back() + last_inc * ratio / (1.0 - ratio);
        out.r_squared = std::clamp(inc_fit.r2, 0.0, 1.0);
        return out;
    }
    if (inc_fit.b < -kMargin) {
        out.kind = DivergenceKind::PowerDivergent;
        out.gamma = -inc_fit.b;
        out.r_squared = std::clamp(inc_fit.r2, 0.0, 1.0);
        return out;
    }
    // log divergence: T should be linear in log(1/delta) over the last 4 points
    std::vector<double> x, y;
    for (std::size_t i = m - 4; i < m; ++i) {
        x.push_back(std::log(1.0 / deltas[i]));
        y.push_back(out.truncated[i]);
    }
    const LinFit log_fit = fit_line(x, y);
    out.kind = DivergenceKind::LogDivergent;
    out.r_squared = log_fit.r2;
    return out;
}

SweepResult exponent_sweep(const ExponentContext& ctx, double epsilon,
                           const std::vector<double>& r_grid,
                           const QuadratureConfig& cfg) {
    SweepResult res;
    res.example = build_example(ctx, epsilon);
    const auto deltas = default_probe_deltas();
    double last_finite = -1.0, first_divergent = -1.0;
    for (double r_exp : r_grid) {
        SweepRow row;
        row.r_exp = r_exp;
        const auto cls = divergence_probe(res.example.u, r_exp, ctx, deltas, cfg);
        row.kind = cls.kind;
        if (cls.kind == DivergenceKind::Convergent) {
            const NormResult norm = lebesgue_norm(res.example.u, r_exp, ctx, cfg);
            row.norm = norm.finite() ? norm.value : std::pow(cls.limit_estimate, 1.0 / r_exp);
            last_finite = r_exp;
        } else if (cls.kind != DivergenceKind::Inconclusive && first_divergent < 0.0) {
            first_divergent = r_exp;
        }
        res.rows.push_back(row);
    }
    if (last_finite >= 0.0 && first_divergent > last_finite) {
        res.empirical_cutoff = 0.5 * (last_finite + first_divergent);
        res.has_cutoff = true;
    }
    return res;
}

}  // namespace plap
