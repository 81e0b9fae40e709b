#include "plap/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace plap {
namespace {

constexpr double kRootTol = 1e-12;  // bisection tolerance in r
constexpr std::size_t kScanNodes = 4096;

double scan_floor(const RadialProfile& u) {
    if (!u.is_power_law() && !u.radii().empty()) return u.radii().front();
    return 1e-12;
}

// bisection for |u(r)| = alpha on [lo, hi], assuming a sign change of
// |u|-alpha across the bracket
double bisect_level(const RadialProfile& u, double alpha, double lo, double hi) {
    double flo = std::abs(u.value(lo)) - alpha;
    while (hi - lo > kRootTol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = std::abs(u.value(mid)) - alpha;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
    std::vector<double> g(count);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        g[i] = std::exp(llo + t * (lhi - llo));
    }
    g.front() = lo;
    g.back() = hi;
    return g;
}

// -1: |u| nonincreasing in r, +1: nondecreasing, 0: neither
int monotone_direction(const RadialProfile& u) {
    const auto grid = log_grid(scan_floor(u), 1.0, 257);
    bool inc = true, dec = true;
    double prev = std::abs(u.value(grid.front()));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = std::abs(u.value(grid[i]));
        if (cur > prev + 1e-14 * (1.0 + std::abs(prev))) dec = false;
        if (cur < prev - 1e-14 * (1.0 + std::abs(prev))) inc = false;
        prev = cur;
    }
    if (dec) return -1;
    if (inc) return +1;
    return 0;
}

double measure_root_solve(const RadialProfile& u, double alpha, const ExponentContext& ctx,
                          int direction) {
    const double lo = scan_floor(u);
    const double a_lo = std::abs(u.value(lo));
    const double a_hi = std::abs(u.value(1.0));
    if (direction < 0) {
        // super-level set is a ball around the origin
        if (alpha >= a_lo) return 0.0;
        if (alpha < a_hi) return ctx.ambient_measure;
        const double r_alpha = bisect_level(u, alpha, lo, 1.0);
        return ctx.ambient_measure * std::pow(r_alpha, ctx.n);
    }
    // increasing case: super-level set is an annulus against the boundary
    if (alpha >= a_hi) return 0.0;
    if (alpha < a_lo) return ctx.ambient_measure;
    const double r_alpha = bisect_level(u, alpha, lo, 1.0);
    return ctx.ambient_measure * (1.0 - std::pow(r_alpha, ctx.n));
}

double measure_scan(const RadialProfile& u, double alpha, const ExponentContext& ctx) {
    const auto grid = log_grid(scan_floor(u), 1.0, kScanNodes);
    double radial_mass = 0.0;  // sum of r^n increments over the super-level set
    bool inside = std::abs(u.value(grid.front())) > alpha;
    // a singular profile is in the set all the way to the origin
    double entry = inside ? 0.0 : -1.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool now = std::abs(u.value(grid[i])) > alpha;
        if (now != inside) {
            const double crossing = bisect_level(u, alpha, grid[i - 1], grid[i]);
            if (now)
                entry = crossing;
            else
                radial_mass += std::pow(crossing, ctx.n) - std::pow(entry, ctx.n);
            inside = now;
        }
    }
    if (inside) radial_mass += 1.0 - std::pow(entry, ctx.n);
    return ctx.ambient_measure * radial_mass;
}

}  // namespace

double level_set_measure(const RadialProfile& u, double alpha, const ExponentContext& ctx,
                         LevelSetMethod method) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("level height must be >= 0");
    if (method == LevelSetMethod::Quadrature) return measure_scan(u, alpha, ctx);
    const int dir = monotone_direction(u);
    if (dir != 0) return measure_root_solve(u, alpha, ctx, dir);
    if (method == LevelSetMethod::RootSolve)
        throw std::invalid_argument("RootSolve requested but |u| is not monotone in r");
    return measure_scan(u, alpha, ctx);
}

DistributionCurve distribution_function(const RadialProfile& u,
                                        const std::vector<double>& heights,
                                        const ExponentContext& ctx,
                                        LevelSetMethod method) {
    for (std::size_t i = 0; i < heights.size(); ++i) {
        if (!(heights[i] >= 0.0))
            throw std::invalid_argument("heights must be nonnegative");
        if (i > 0 && !(heights[i] > heights[i - 1]))
            throw std::invalid_argument("heights must be strictly increasing");
    }
    DistributionCurve curve;
    curve.heights = heights;
    curve.total_measure = ctx.ambient_measure;
    curve.measures.reserve(heights.size());
    const int dir = (method == LevelSetMethod::Quadrature) ? 0 : monotone_direction(u);
    for (double alpha : heights) {
        double lam;
        if (dir != 0)
            lam = measure_root_solve(u, alpha, ctx, dir);
        else if (method == LevelSetMethod::RootSolve)
            throw std::invalid_argument("RootSolve requested but |u| is not monotone in r");
        else
            lam = measure_scan(u, alpha, ctx);
        curve.measures.push_back(lam);
    }
    return curve;
}

std::vector<double> default_height_grid(double scale, std::size_t count) {
    if (!(scale > 0.0)) throw std::invalid_argument("height grid scale must be positive");
    return log_grid(1e-4 * scale, 10.0 * scale, count);
}

NormResult lebesgue_norm(const RadialProfile& u, double r_exp, const ExponentContext& ctx,
                         const QuadratureConfig& cfg) {
    if (!(r_exp >= 1.0)) throw std::invalid_argument("lebesgue_norm: r_exp must be >= 1");
    const double nd = static_cast<double>(ctx.n);
    auto integrand = [&](double rho) {
        return std::pow(std::abs(u.value(rho)), r_exp) * std::pow(rho, nd - 1.0);
    };
    // truncated integrals toward the origin; for integrand ~ c r^{s-1} the
    // increment over [a, b] is c (b^s - a^s)/s, so the fitted local exponent s
    // both classifies the tail (s <= 0: log/power divergence) and gives the
    // exact remaining mass below the deepest cut
    const double delta0 = 1e-2;
    double total = integrate_adaptive(integrand, delta0, 1.0, cfg);
    double delta = delta0;
    std::vector<double> lows, incs;
    while (delta > cfg.origin_cutoff * 1.0001) {
        const double next = std::max(delta * 0.25, cfg.origin_cutoff);
        const double increment = integrate_adaptive(integrand, next, delta, cfg);
        total += increment;
        lows.push_back(next);
        incs.push_back(increment);
        delta = next;
        if (increment <= 1e-12 * std::abs(total) + cfg.abs_tol)
            return {NormResult::Status::Finite,
                    std::pow(ctx.sphere_area * total, 1.0 / r_exp)};
    }
    if (lows.size() >= 3) {
        // exponent from the last two full quartering steps (the final step may
        // be a partial one clipped at origin_cutoff)
        const std::size_t j = lows.size() - 2;
        const double s = std::log(incs[j] / incs[j - 1]) / std::log(lows[j] / lows[j - 1]);
        if (s < 2e-3) return {NormResult::Status::Diverged, 0.0};
        const double lo = lows.back();
        const double hi = lows[lows.size() - 2];
        const double tail = incs.back() * std::pow(lo, s) /
                            (std::pow(hi, s) - std::pow(lo, s));
        total += tail;
    }
    return {NormResult::Status::Finite, std::pow(ctx.sphere_area * total, 1.0 / r_exp)};
}

double layer_cake_norm(const DistributionCurve& curve, double r_exp) {
    if (!(r_exp >= 1.0)) throw std::invalid_argument("layer_cake_norm: r_exp must be >= 1");
    const auto& a = curve.heights;
    const auto& lam = curve.measures;
    if (a.size() < 2) throw std::invalid_argument("layer_cake_norm: curve too small");

    // head: lambda is flat below the first height
    double integral = lam.front() * std::pow(a.front(), r_exp);
    // trapezoid of r a^{r-1} lambda(a)
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        const double g0 = r_exp * std::pow(a[i], r_exp - 1.0) * lam[i];
        const double g1 = r_exp * std::pow(a[i + 1], r_exp - 1.0) * lam[i + 1];
        integral += 0.5 * (g0 + g1) * (a[i + 1] - a[i]);
    }

    // tail above the last height: fit log(lambda) vs log(alpha) on the top decade
    if (lam.back() > 0.0) {
        const double a_hi = a.back();
        const double a_lo_fit = a_hi / 10.0;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] >= a_lo_fit && lam[i] > 0.0) {
                const double x = std::log(a[i]), y = std::log(lam[i]);
                sx += x; sy += y; sxx += x * x; sxy += x * y;
                ++m;
            }
        }
        if (m < 2) throw std::runtime_error("layer_cake_norm: cannot fit tail");
        const double slope = (static_cast<double>(m) * sxy - sx * sy) /
                             (static_cast<double>(m) * sxx - sx * sx);
        const double gamma = -slope;  // lambda ~ C alpha^{-gamma}
        if (gamma <= r_exp + 1e-9)
            throw std::runtime_error(
                "layer_cake_norm: tail exponent " + std::to_string(gamma) +
                " too shallow for r_exp = " + std::to_string(r_exp) + " (divergent tail)");
        // integral_{a_hi}^inf r a^{r-1} C a^{-gamma} da with C matched at a_hi
        integral += r_exp * lam.back() * std::pow(a_hi, r_exp) / (gamma - r_exp);
    }
    return std::pow(integral, 1.0 / r_exp);
}

double level_set_estimate_constant(const RadialProfile& u, const RadialProfile& f,
                                 const ExponentContext& ctx,
                                 const std::vector<std::pair<double, double>>& pairs,
                                 const QuadratureConfig& cfg) {
    if (pairs.empty()) throw std::invalid_argument("level_set_estimate: empty pair list");
    const NormResult fq = lebesgue_norm(f, ctx.q, ctx, cfg);
    if (!fq.finite() || !(fq.value > 0.0))
        throw std::invalid_argument("level_set_estimate: ||f||_q must be finite and positive");
    const double nd = static_cast<double>(ctx.n);
    double c_emp = 0.0;
    for (const auto& [alpha, beta] : pairs) {
        if (!(beta > alpha) || !(alpha >= 0.0))
            throw std::invalid_argument("level_set_estimate: pairs must satisfy beta > alpha >= 0");
        const double lam_a = level_set_measure(u, alpha, ctx);
        if (!(lam_a > 0.0))
            throw std::invalid_argument("level_set_estimate: lambda_u(alpha) = 0 at alpha = " +
                                        std::to_string(alpha));
        const double lam_b = level_set_measure(u, beta, ctx);
        const double num = std::pow(lam_b, (nd - ctx.p) / nd) *
                           std::pow(beta - alpha, ctx.p - 1.0);
        const double den = fq.value * std::pow(lam_a, (ctx.q - 1.0) / ctx.q);
        c_emp = std::max(c_emp, num / den);
    }
    return c_emp;
}

}  // namespace plap
