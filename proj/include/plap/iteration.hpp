#pragma once

#include <cstddef>
#include <vector>

#include "plap/exponents.hpp"

namespace plap {

// Recursive distribution bounds: lambda_0 = m(Omega) (1 when normalized), and
//   lambda_{k+1}(beta) = inf_{0 <= alpha < beta}
//       (lambda_k(alpha)^{(q-1)/q} / (beta-alpha)^{p-1})^{n/(n-p)}.
// Values are kept in the log domain; the critical regime reaches magnitudes
// far beyond double range.
struct IterationState {
    ExponentContext ctx;
    std::vector<double> beta_grid;
    // log_lambda[k][i] = log lambda_k(beta_grid[i]), k = 0..K
    std::vector<std::vector<double>> log_lambda;
    // argmin alpha of the step producing level k+1 (index [k][i], k = 0..K-1)
    std::vector<std::vector<double>> alpha_opt;
    // one-step evaluation with alpha = beta/2 producing level k+1
    std::vector<std::vector<double>> log_half_eval;
    int K = 0;
    bool normalized = true;

    double lambda(int k, std::size_t i) const;
    double half_eval(int k, std::size_t i) const;  // level k >= 1
};

IterationState iterate_subcritical(const ExponentContext& ctx,
                                   const std::vector<double>& beta_grid, int K,
                                   bool normalized = true);

// (2/beta)^{e_k} with e_k = (p-1)q/(q-1) * ell (1 - ell^k)/(1 - ell)
double subcritical_closed_form(const ExponentContext& ctx, double beta, int k);
double subcritical_closed_form_exponent(const ExponentContext& ctx, int k);
// k -> infinity limit (2/beta)^{r*}
double subcritical_limit_form(const ExponentContext& ctx, double beta);

IterationState iterate_critical(const ExponentContext& ctx,
                                const std::vector<double>& beta_grid, int K,
                                bool normalized = true);

// log of (k^k/beta^k)^{(p-1) n/(n-p)}
double critical_bound_log(const ExponentContext& ctx, double beta, int k);

struct EnvelopeResult {
    double value = 0.0;      // exp(log_value), may underflow to 0
    double log_value = 0.0;
    int argmin_k = 0;        // 0 means the constant-1 branch (beta < 1)
};

// min over k <= 10^4 of (k^k/beta^k)^{(p-1) n/(n-p)}, evaluated in log domain
EnvelopeResult critical_envelope(const ExponentContext& ctx, double beta);

struct CriticalInterval {
    int k = 0;
    double left = 0.0;   // k^k/(k-1)^{k-1}, with the 0^0 = 1 convention at k = 1
    double right = 0.0;  // (k+1)^{k+1}/k^k
    double length = 0.0;
};

CriticalInterval critical_interval(int k);
std::vector<CriticalInterval> interval_table(int k_max);
double interval_length_limit(int k_max);

struct SeriesResult {
    std::vector<double> partial_sums;       // of k^{r-1} e^{-k(p-1)n/(n-p)}
    bool converged = false;
    std::vector<double> log_terms;          // simplified terms
    std::vector<double> log_raw_terms;      // pre-simplification endpoint terms
};

SeriesResult critical_series(const ExponentContext& ctx, double r_exp, int K);

}  // namespace plap
