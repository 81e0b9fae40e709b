#pragma once

#include <utility>
#include <vector>

#include "plap/exponents.hpp"
#include "plap/quadrature.hpp"
#include "plap/radial.hpp"

namespace plap {

// Sampled nonincreasing map alpha -> lambda(alpha) = m({|u| > alpha}).
struct DistributionCurve {
    std::vector<double> heights;   // increasing, >= 0
    std::vector<double> measures;  // nonincreasing, >= 0
    double total_measure = 0.0;    // m(Omega) reference
};

enum class LevelSetMethod { Auto, RootSolve, Quadrature };

// Measure of {r in (0,1] : |u(r)| > alpha}, pushed forward by r -> omega_n r^n.
// RootSolve assumes |u| monotone in r (one bisection); Quadrature scans the
// super-level set and works for any profile.
double level_set_measure(const RadialProfile& u, double alpha, const ExponentContext& ctx,
                         LevelSetMethod method = LevelSetMethod::Auto);

DistributionCurve distribution_function(const RadialProfile& u,
                                        const std::vector<double>& heights,
                                        const ExponentContext& ctx,
                                        LevelSetMethod method = LevelSetMethod::Auto);

// Geometric height grid from 1e-4 * scale to 10 * scale.
std::vector<double> default_height_grid(double scale, std::size_t count);

struct NormResult {
    enum class Status { Finite, Diverged };
    Status status = Status::Finite;
    double value = 0.0;  // meaningful only when Finite

    bool finite() const { return status == Status::Finite; }
};

// (int_Omega |u|^r)^{1/r} by singularity-split radial quadrature. Truncated
// integrals toward the origin are checked for convergence; a profile whose
// tail keeps growing yields Diverged instead of a number.
NormResult lebesgue_norm(const RadialProfile& u, double r_exp, const ExponentContext& ctx,
                         const QuadratureConfig& cfg);

// (int_0^inf r a^{r-1} lambda(a) da)^{1/r} by trapezoid over the height grid
// plus a power-law tail fit above the last height. Throws if the fitted tail
// exponent indicates divergence.
double layer_cake_norm(const DistributionCurve& curve, double r_exp);

// Smallest constant making the level-set estimate
//   lambda_u(beta) <= (C ||f||_q lambda_u(alpha)^{(q-1)/q} / (beta-alpha)^{p-1})^{n/(n-p)}
// hold on the sampled (alpha, beta) pairs.
double level_set_estimate_constant(const RadialProfile& u, const RadialProfile& f,
                                 const ExponentContext& ctx,
                                 const std::vector<std::pair<double, double>>& pairs,
                                 const QuadratureConfig& cfg);

}  // namespace plap
