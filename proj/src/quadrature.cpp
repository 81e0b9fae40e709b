#include "plap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace plap {
namespace {

// G7/K15 nodes and weights on [-1, 1] (positive half; node 0 listed first).
constexpr double kNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
    0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
constexpr double kWeightsK[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
    0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWeightsG[8] = {
    0.417959183673469, 0.0, 0.381830050505119, 0.0,
    0.279705391489277, 0.0, 0.129484966168870, 0.0};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double g = 0.0, k = 0.0;
    const double f0 = f(c);
    g += kWeightsG[0] * f0;
    k += kWeightsK[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double fi = f(c + h * kNodes[i]) + f(c - h * kNodes[i]);
        g += kWeightsG[i] * fi;
        k += kWeightsK[i] * fi;
    }
    g *= h;
    k *= h;
    const double d = 200.0 * std::abs(k - g);
    return {k, d * std::sqrt(d)};
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureConfig& cfg) {
    if (a == b) return 0.0;
    const PanelResult first = gk15(f, a, b);
    std::priority_queue<Panel> panels;
    panels.push({a, b, first.value, first.error});
    double total = first.value;
    double total_err = first.error;

    for (int iter = 0; iter < cfg.max_subdivisions; ++iter) {
        if (total_err <= cfg.abs_tol || total_err <= cfg.rel_tol * std::abs(total))
            return total;
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const PanelResult left = gk15(f, worst.a, mid);
        const PanelResult right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        panels.push({worst.a, mid, left.value, left.error});
        panels.push({mid, worst.b, right.value, right.error});
    }
    if (total_err <= cfg.abs_tol || total_err <= cfg.rel_tol * std::abs(total))
        return total;
    throw quadrature_error("adaptive quadrature failed to converge on [" +
                           std::to_string(a) + ", " + std::to_string(b) +
                           "], error estimate " + std::to_string(total_err));
}

double integrate_with_origin_singularity(const std::function<double(double)>& f,
                                         double a, double b,
                                         const QuadratureConfig& cfg) {
    if (a >= b) return 0.0;
    const double delta = std::min(b, std::max(16.0 * a, 1e-4));
    double inner = 0.0;
    if (delta > a) {
        // geometric sub-panels toward a resolve the power singularity
        std::vector<double> knots;
        double t = delta;
        while (t > 2.0 * a) {
            knots.push_back(t);
            t *= 0.25;
        }
        knots.push_back(a);
        QuadratureConfig inner_cfg = cfg;
        inner_cfg.abs_tol = std::max(cfg.abs_tol / knots.size(), 1e-300);
        for (std::size_t i = 0; i + 1 < knots.size(); ++i)
            inner += integrate_adaptive(f, knots[i + 1], knots[i], inner_cfg);
    }
    return inner + (b > delta ? integrate_adaptive(f, delta, b, cfg) : 0.0);
}

}  // namespace plap
