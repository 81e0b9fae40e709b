#pragma once

#include <vector>

#include "plap/distribution.hpp"
#include "plap/exponents.hpp"
#include "plap/quadrature.hpp"
#include "plap/radial.hpp"

namespace plap {

// Closed-form pair (f, u) with f in L^q but u outside L^{r*+epsilon}:
//   f(r) = -r^{ell - n/q},   u(r) = coeff * (r^{sigma} - 1)
struct SharpnessExample {
    ExponentContext ctx;
    double epsilon = 0.0;
    double ell_sharp = 0.0;     // eps (n/q - p)^2 / ((p-1) n + eps (n/q - p))
    double u_exponent = 0.0;    // sigma = (pq - n + ell q)/((p-1) q), < 0
    double u_coefficient = 0.0; // (p-1) q^{p/(p-1)} / ((nq-n+ell q)^{1/(p-1)} (pq-n+ell q))
    double threshold = 0.0;     // r* + eps = (p-1)qn/(n - pq - ell q)
    RadialProfile f;
    RadialProfile u;

    // exact power integral ||f||_q^q = |S^{n-1}|/(ell q)
    double source_norm_q() const;
};

SharpnessExample build_example(const ExponentContext& ctx, double epsilon);

struct PdeVerification {
    double residual_max = 0.0;   // strong-form residual of the closed-form pair
    double solver_gap_max = 0.0; // closed form vs solve_radial, relative
};

PdeVerification verify_example_pde(const SharpnessExample& ex,
                                   const std::vector<double>& radii,
                                   const QuadratureConfig& cfg = {});

enum class DivergenceKind { Convergent, LogDivergent, PowerDivergent, Inconclusive };

std::string to_string(DivergenceKind k);

struct DivergenceClassification {
    DivergenceKind kind = DivergenceKind::Inconclusive;
    double gamma = 0.0;          // tail exponent for PowerDivergent
    double r_squared = 0.0;      // fit quality of the selected model
    double limit_estimate = 0.0; // extrapolated integral when Convergent
    std::vector<double> truncated;  // T(delta) per input delta
};

// Classifies int |u|^{r_exp} near the origin by fitting the truncated
// integrals T(delta) = |S^{n-1}| int_delta^1 |u|^{r_exp} rho^{n-1} d rho
// against constant / log(1/delta) / delta^{-gamma} growth models.
DivergenceClassification divergence_probe(const RadialProfile& u, double r_exp,
                                          const ExponentContext& ctx,
                                          const std::vector<double>& deltas,
                                          const QuadratureConfig& cfg = {});

std::vector<double> default_probe_deltas();

struct SweepRow {
    double r_exp = 0.0;
    DivergenceKind kind = DivergenceKind::Inconclusive;
    double norm = 0.0;  // ||u||_r when Convergent
};

struct SweepResult {
    SharpnessExample example;
    std::vector<SweepRow> rows;
    double empirical_cutoff = 0.0;  // midpoint between last finite and first divergent
    bool has_cutoff = false;
};

SweepResult exponent_sweep(const ExponentContext& ctx, double epsilon,
                           const std::vector<double>& r_grid,
                           const QuadratureConfig& cfg = {});

}  // namespace plap
