#pragma once

#include <stdexcept>
#include <string>

namespace plap {

enum class Regime { Subcritical, Critical, Supercritical };

std::string to_string(Regime r);

// Validated (n, p, q) with every derived exponent used by the other modules.
// Immutable after construction; safe to share across threads.
struct ExponentContext {
    int n = 0;
    double p = 0.0;
    double q = 0.0;

    double sobolev_conjugate = 0.0;  // p* = np/(n-p)
    double iteration_ratio = 0.0;    // ell = (q-1)n/(q(n-p))
    double sharp_exponent = 0.0;     // r* = (p-1)qn/(n-pq), +inf when critical/supercritical
    double duality_floor = 0.0;      // np/(np-n+p)
    Regime regime = Regime::Subcritical;
    double ambient_measure = 0.0;    // volume of the unit n-ball
    double sphere_area = 0.0;        // |S^{n-1}| = n * ambient_measure

    // set when q < duality_floor: the weak-formulation pairing condition fails
    // but radial quadrature solutions remain well-defined
    bool below_duality_floor = false;

    bool has_sharp_exponent() const { return regime == Regime::Subcritical; }
};

class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

double unit_ball_volume(int n);

// Rejects n < 3, p outside (1, n), q <= 1, and non-finite inputs.
ExponentContext validate_context(int n, double p, double q);

}  // namespace plap
