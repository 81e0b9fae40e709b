#include "plap/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "plap/radial.hpp"

namespace plap {
namespace {

constexpr double kGolden = 0.6180339887498949;

// log lambda_k as a function of alpha: pchip in (log alpha, log lambda) over
// the grid, linear log-log extrapolation below the first node (a power law
// continues exactly)
class LogLevel {
public:
    LogLevel(const std::vector<double>& beta_grid, const std::vector<double>& log_lambda)
        : lo_(beta_grid.front()) {
        std::vector<double> lx(beta_grid.size());
        for (std::size_t i = 0; i < beta_grid.size(); ++i) lx[i] = std::log(beta_grid[i]);
        slope0_ = (log_lambda[1] - log_lambda[0]) / (lx[1] - lx[0]);
        v0_ = log_lambda[0];
        lx0_ = lx[0];
        interp_ = PchipInterpolant(std::move(lx), log_lambda);
    }

    double operator()(double alpha) const {
        const double la = std::log(alpha);
        if (alpha < lo_) return v0_ + slope0_ * (la - lx0_);
        return interp_(la);
    }

private:
    double lo_, v0_, lx0_, slope0_;
    PchipInterpolant interp_;
};

void check_grid(const std::vector<double>& beta_grid) {
    if (beta_grid.size() < 2)
        throw std::invalid_argument("beta_grid needs at least 2 nodes");
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        if (!(beta_grid[i] > 0.0))
            throw std::invalid_argument("beta_grid must be positive");
        if (i > 0 && !(beta_grid[i] > beta_grid[i - 1]))
            throw std::invalid_argument("beta_grid must be strictly increasing");
    }
}

IterationState run_iteration(const ExponentContext& ctx,
                             const std::vector<double>& beta_grid, int K,
                             bool normalized) {
    check_grid(beta_grid);
    if (K < 1 || K > 60) throw std::invalid_argument("iteration count K must be in [1, 60]");

    const double ell = ctx.iteration_ratio;  // exponent on lambda after expansion
    const double e1 = (ctx.p - 1.0) * ctx.n / (ctx.n - ctx.p);  // on (beta-alpha)

    IterationState st;
    st.ctx = ctx;
    st.beta_grid = beta_grid;
    st.K = K;
    st.normalized = normalized;
    const double log_m0 = normalized ? 0.0 : std::log(ctx.ambient_measure);
    st.log_lambda.push_back(std::vector<double>(beta_grid.size(), log_m0));

    for (int k = 0; k < K; ++k) {
        const LogLevel prev(beta_grid, st.log_lambda.back());
        std::vector<double> next(beta_grid.size());
        std::vector<double> arg(beta_grid.size());
        std::vector<double> half(beta_grid.size());
        for (std::size_t i = 0; i < beta_grid.size(); ++i) {
            const double beta = beta_grid[i];
            auto objective = [&](double alpha) {
                return ell * prev(alpha) - e1 * std::log(beta - alpha);
            };
            // candidates: grid nodes below beta, beta/2, and (for the flat
            // level 0) alpha = 0 via a vanishing offset
            double best_a = beta / 2.0;
            double best_v = objective(best_a);
            const double a0 = beta * 1e-13;
            if (k == 0) {
                const double v0 = log_m0 * ell - e1 * std::log(beta);
                if (v0 < best_v) {
                    best_v = v0;
                    best_a = a0;
                }
            }
            for (double a : beta_grid) {
                if (a >= beta * (1.0 - 1e-12)) break;
                const double v = objective(a);
                if (v < best_v) {
                    best_v = v;
                    best_a = a;
                }
            }
            // golden-section refinement between the neighbors of the best point
            double lo = a0, hi = beta * (1.0 - 1e-12);
            for (double a : beta_grid) {
                if (a < best_a && a > lo) lo = a;
                if (a > best_a && a < hi) hi = a;
            }
            double x1 = hi - kGolden * (hi - lo);
            double x2 = lo + kGolden * (hi - lo);
            double f1 = objective(x1), f2 = objective(x2);
            for (int it = 0; it < 80 && hi - lo > 1e-13 * beta; ++it) {
                if (f1 < f2) {
                    hi = x2; x2 = x1; f2 = f1;
                    x1 = hi - kGolden * (hi - lo);
                    f1 = objective(x1);
                } else {
                    lo = x1; x1 = x2; f1 = f2;
                    x2 = lo + kGolden * (hi - lo);
                    f2 = objective(x2);
                }
            }
            const double xm = 0.5 * (lo + hi);
            const double fm = objective(xm);
            if (fm < best_v) {
                best_v = fm;
                best_a = xm;
            }
            next[i] = best_v;
            arg[i] = best_a;
            half[i] = objective(beta / 2.0);
        }
        st.log_lambda.push_back(std::move(next));
        st.alpha_opt.push_back(std::move(arg));
        st.log_half_eval.push_back(std::move(half));
    }
    return st;
}

}  // namespace

double IterationState::lambda(int k, std::size_t i) const {
    return std::exp(log_lambda.at(k).at(i));
}

double IterationState::half_eval(int k, std::size_t i) const {
    if (k < 1) throw std::out_of_range("half_eval defined for k >= 1");
    return std::exp(log_half_eval.at(k - 1).at(i));
}

IterationState iterate_subcritical(const ExponentContext& ctx,
                                   const std::vector<double>& beta_grid, int K,
                                   bool normalized) {
    if (ctx.regime != Regime::Subcritical)
        throw std::invalid_argument("iterate_subcritical requires a subcritical context");
    return run_iteration(ctx, beta_grid, K, normalized);
}

double subcritical_closed_form_exponent(const ExponentContext& ctx, int k) {
    const double ell = ctx.iteration_ratio;
    return (ctx.p - 1.0) * ctx.q / (ctx.q - 1.0) * ell * (1.0 - std::pow(ell, k)) /
           (1.0 - ell);
}

double subcritical_closed_form(const ExponentContext& ctx, double beta, int k) {
    if (ctx.regime != Regime::Subcritical)
        throw std::invalid_argument("subcritical closed form requires subcritical regime");
    if (k < 1) throw std::invalid_argument("closed form defined for k >= 1");
    return std::pow(2.0 / beta, subcritical_closed_form_exponent(ctx, k));
}

double subcritical_limit_form(const ExponentContext& ctx, double beta) {
    return std::pow(2.0 / beta, ctx.sharp_exponent);
}

IterationState iterate_critical(const ExponentContext& ctx,
                                const std::vector<double>& beta_grid, int K,
                                bool normalized) {
    if (ctx.regime != Regime::Critical)
        throw std::invalid_argument("iterate_critical requires a critical context");
    return run_iteration(ctx, beta_grid, K, normalized);
}

double critical_bound_log(const ExponentContext& ctx, double beta, int k) {
    if (k < 1) throw std::invalid_argument("critical bound defined for k >= 1");
    const double e1 = (ctx.p - 1.0) * ctx.n / (ctx.n - ctx.p);
    const double kd = static_cast<double>(k);
    return kd * (std::log(kd) - std::log(beta)) * e1;
}

EnvelopeResult critical_envelope(const ExponentContext& ctx, double beta) {
    EnvelopeResult res;
    if (beta < 1.0) {  // the min with the constant 1 dominates
        res.value = 1.0;
        res.log_value = 0.0;
        res.argmin_k = 0;
        return res;
    }
    double best = std::numeric_limits<double>::infinity();
    int best_k = 1;
    for (int k = 1; k <= 10000; ++k) {
        const double lv = critical_bound_log(ctx, beta, k);
        // <=: at an interval boundary the larger k owns the point (intervals
        // are closed on the left)
        if (lv <= best) {
            best = lv;
            best_k = k;
        }
    }
    res.log_value = best;
    res.value = std::exp(best);
    res.argmin_k = best_k;
    return res;
}

CriticalInterval critical_interval(int k) {
    if (k < 1) throw std::invalid_argument("critical intervals defined for k >= 1");
    const double kd = static_cast<double>(k);
    // 0^0 = 1 convention at k = 1
    const double log_left =
        (k == 1) ? 0.0 : kd * std::log(kd) - (kd - 1.0) * std::log(kd - 1.0);
    const double log_right = (kd + 1.0) * std::log(kd + 1.0) - kd * std::log(kd);
    CriticalInterval iv;
    iv.k = k;
    iv.left = std::exp(log_left);
    iv.right = std::exp(log_right);
    iv.length = iv.right - iv.left;
    return iv;
}

std::vector<CriticalInterval> interval_table(int k_max) {
    if (k_max < 2) throw std::invalid_argument("interval_table requires k_max >= 2");
    if (k_max > 1000000) throw std::invalid_argument("interval_table: k_max > 10^6");
    std::vector<CriticalInterval> tbl;
    tbl.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) tbl.push_back(critical_interval(k));
    return tbl;
}

double interval_length_limit(int k_max) {
    if (k_max < 2) throw std::invalid_argument("interval_length_limit requires k_max >= 2");
    if (k_max > 1000000) throw std::invalid_argument("interval_length_limit: k_max > 10^6");
    return critical_interval(k_max).length;
}

SeriesResult critical_series(const ExponentContext& ctx, double r_exp, int K) {
    if (ctx.regime != Regime::Critical)
        throw std::invalid_argument("critical_series requires a critical context");
    if (!(r_exp >= 1.0)) throw std::invalid_argument("critical_series: r_exp >= 1 required");
    if (K < 1) throw std::invalid_argument("critical_series: K >= 1 required");
    const double e1 = (ctx.p - 1.0) * ctx.n / (ctx.n - ctx.p);
    SeriesResult res;
    double sum = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double kd = static_cast<double>(k);
        const double log_term = (r_exp - 1.0) * std::log(kd) - kd * e1;
        res.log_terms.push_back(log_term);
        // endpoint form before simplification:
        // (k^k/(k-1)^{k-1})^{r-1} * ((k-1)/k)^{(k^2-k) e1}
        const double log_left =
            (k == 1) ? 0.0 : kd * std::log(kd) - (kd - 1.0) * std::log(kd - 1.0);
        const double log_raw =
            (r_exp - 1.0) * log_left +
            (k == 1 ? 0.0
                    : (kd * kd - kd) * e1 * (std::log(kd - 1.0) - std::log(kd)));
        res.log_raw_terms.push_back(log_raw);
        sum += std::exp(log_term);
        res.partial_sums.push_back(sum);
        if (k > 1) {
            const double prev = res.partial_sums[static_cast<std::size_t>(k) - 2];
            if (std::abs(sum - prev) < 1e-14 * sum) {
                res.converged = true;
                break;
            }
        }
    }
    return res;
}

}  // namespace plap
