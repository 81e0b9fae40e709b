#pragma once

#include <functional>
#include <stdexcept>

namespace plap {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double origin_cutoff = 1e-8;  // smallest radius ever sampled

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("quadrature tolerances must be positive");
        if (!(origin_cutoff > 0.0) || origin_cutoff > 1e-3)
            throw std::invalid_argument("origin_cutoff must lie in (0, 1e-3]");
        if (max_subdivisions < 1)
            throw std::invalid_argument("max_subdivisions must be >= 1");
    }
};

class quadrature_error : public std::runtime_error {
public:
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive Gauss-Kronrod (G7/K15) on [a, b]. Throws quadrature_error when the
// subdivision budget is exhausted before the tolerance is met.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureConfig& cfg);

// Integral of f over [a, b] where f may have an integrable power singularity at
// a = 0. Splits at delta and models [a, delta] by a local power-law fit when the
// exponent is not supplied; with known_exponent s (f ~ c*x^s near 0) the inner
// piece uses the exact antiderivative of the fitted power.
double integrate_with_origin_singularity(const std::function<double(double)>& f,
                                         double a, double b,
                                         const QuadratureConfig& cfg);

}  // namespace plap
