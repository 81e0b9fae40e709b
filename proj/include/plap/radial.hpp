#pragma once

#include <cstddef>
#include <vector>

#include "plap/exponents.hpp"
#include "plap/quadrature.hpp"

namespace plap {

// Shape-preserving cubic Hermite interpolant (Fritsch-Carlson slopes).
class PchipInterpolant {
public:
    PchipInterpolant() = default;
    PchipInterpolant(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_, y_, slope_;
};

// r -> a * (r^s + c)
struct PowerLawAffine {
    double coefficient = 0.0;
    double exponent = 0.0;
    double offset = 0.0;

    double value(double r) const;
    double derivative(double r) const;
};

// A radial function on (0, 1]: either a closed-form power-law-affine map or a
// grid-sampled profile with monotone-cubic interpolation of values and
// derivative samples.
class RadialProfile {
public:
    static RadialProfile power_law(double coefficient, double exponent, double offset);
    static RadialProfile constant(double v);
    static RadialProfile sampled(std::vector<double> radii, std::vector<double> values,
                                 std::vector<double> derivatives);

    bool is_power_law() const { return is_power_law_; }
    const PowerLawAffine& power() const { return power_; }

    double value(double r) const;
    double derivative(double r) const;
    bool has_derivative() const;
    bool singular_at_origin() const { return singular_at_origin_; }
    double boundary_value() const;

    const std::vector<double>& radii() const { return radii_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& derivatives() const { return derivatives_; }

private:
    bool is_power_law_ = true;
    PowerLawAffine power_;
    bool singular_at_origin_ = false;

    std::vector<double> radii_, values_, derivatives_;
    PchipInterpolant value_interp_, derivative_interp_;
};

// Scalar flux map of the p-Laplacian and its inverse.
double phi(double t, double p);
double phi_inverse(double s, double p);

// F(r) = integral_0^r f(s) s^{n-1} ds. Closed form for power-law sources,
// singularity-split quadrature otherwise. Throws for non-integrable sources
// (power exponent <= -n).
double cumulative_source(const RadialProfile& f, double r, const ExponentContext& ctx,
                         const QuadratureConfig& cfg);

// Radial solution of -div(|grad u|^{p-2} grad u) = f on the unit ball with
// u = 0 on the boundary: u(r) = -integral_r^1 phi^{-1}(-F(t)/t^{n-1}) dt on a
// geometric grid of grid_size nodes from cfg.origin_cutoff to 1. Derivative
// samples come from the flux formula, not from differencing u.
RadialProfile solve_radial(const RadialProfile& f, const ExponentContext& ctx,
                           const QuadratureConfig& cfg, std::size_t grid_size);

// Max over radii of the relative strong-form residual, with the flux term
// differentiated by central differences of step r * 1e-5.
double p_laplacian_residual(const RadialProfile& u, const RadialProfile& f,
                            const ExponentContext& ctx, const std::vector<double>& radii,
                            const QuadratureConfig& cfg = {});

}  // namespace plap
