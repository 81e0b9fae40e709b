#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "plap/radial.hpp"
#include "plap/sharpness.hpp"

using namespace plap;

namespace {
const ExponentContext kCtx32 = validate_context(3, 2.0, 1.2);
}

TEST_CASE("phi and phi_inverse") {
    CHECK(phi(2.0, 3.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(phi_inverse(4.0, 3.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(phi(-2.0, 3.0) == doctest::Approx(-4.0).epsilon(1e-14));
    for (double t : {-1.0, 0.0, 7.0}) CHECK(phi(t, 2.0) == doctest::Approx(t));
    CHECK(phi(0.0, 1.5) == 0.0);
    CHECK(phi_inverse(0.0, 1.5) == 0.0);
    CHECK_THROWS(phi(std::nan(""), 2.0));

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ut(-50.0, 50.0);
    std::uniform_real_distribution<double> up(1.05, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = ut(rng);
        const double p = up(rng);
        const double back = phi_inverse(phi(t, p), p);
        CHECK(back == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("cumulative source closed forms") {
    const QuadratureConfig cfg;
    const auto one = RadialProfile::constant(1.0);
    CHECK(cumulative_source(one, 1.0, kCtx32, cfg) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const auto zero = RadialProfile::constant(0.0);
    CHECK(cumulative_source(zero, 0.7, kCtx32, cfg) == 0.0);

    // the closed form against the adaptive-quadrature oracle for the singular
    // power source of the counterexample family (exponent ell - n/q)
    const auto ex = build_example(kCtx32, 1.0);
    const double kappa = ex.ell_sharp - 3.0 / 1.2;
    const double closed = cumulative_source(ex.f, 1.0, kCtx32, cfg);
    CHECK(closed == doctest::Approx(-1.0 / (kappa + 3.0)).epsilon(1e-12));
    auto integrand = [&](double s) { return ex.f.value(s) * s * s; };
    // floor low enough that the missing [0, a] mass is below the tolerance
    const double quad = integrate_with_origin_singularity(integrand, 1e-18, 1.0, cfg);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-10));
}

TEST_CASE("non-integrable source is rejected") {
    const auto bad = RadialProfile::power_law(1.0, -3.0, 0.0);
    const QuadratureConfig cfg;
    CHECK_THROWS(cumulative_source(bad, 0.5, kCtx32, cfg));
}

TEST_CASE("solver reproduces (1 - r^2)/6 for the Laplacian with f = 1") {
    const QuadratureConfig cfg;
    const auto u = solve_radial(RadialProfile::constant(1.0), kCtx32, cfg, 512);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.radii().size(); ++i) {
        const double r = u.radii()[i];
        worst = std::max(worst, std::abs(u.values()[i] - (1.0 - r * r) / 6.0));
    }
    CHECK(worst <= 1e-8);
    CHECK(std::abs(u.boundary_value()) <= 1e-12);
}

TEST_CASE("solver matches the closed-form singular pair") {
    const QuadratureConfig cfg;
    const auto ex = build_example(kCtx32, 1.0);
    const auto u = solve_radial(ex.f, kCtx32, cfg, 512);
    double worst = 0.0;
    for (std::size_t i = 0; i < u.radii().size(); ++i) {
        const double r = u.radii()[i];
        if (r < 0.01) continue;
        const double exact = ex.u.value(r);
        if (std::abs(exact) < 1e-12) continue;
        worst = std::max(worst, std::abs(u.values()[i] - exact) / std::abs(exact));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("homogeneity of the solve under source scaling") {
    const QuadratureConfig cfg;
    for (double t : {0.1, 10.0}) {
        const auto u1 = solve_radial(RadialProfile::constant(1.0), kCtx32, cfg, 128);
        const auto ut = solve_radial(RadialProfile::constant(t), kCtx32, cfg, 128);
        const double scale = std::pow(t, 1.0 / (kCtx32.p - 1.0));
        for (std::size_t i = 0; i + 1 < u1.radii().size(); ++i) {
            CHECK(ut.values()[i] ==
                  doctest::Approx(scale * u1.values()[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("flux identity at interior grid nodes") {
    const QuadratureConfig cfg;
    const auto f = RadialProfile::power_law(-1.0, -0.5, 0.0);
    const auto u = solve_radial(f, kCtx32, cfg, 128);
    for (std::size_t i = 0; i < u.radii().size(); ++i) {
        const double r = u.radii()[i];
        const double F = cumulative_source(f, r, kCtx32, cfg);
        const double flux = std::pow(r, 2.0) * phi(u.derivatives()[i], kCtx32.p);
        CHECK(std::abs(flux + F) <= 1e-8 * (1.0 + std::abs(F)));
    }
}

TEST_CASE("nonpositive source gives nonpositive nondecreasing solution") {
    const QuadratureConfig cfg;
    const auto f = RadialProfile::power_law(-2.0, -0.3, 0.0);
    const auto u = solve_radial(f, kCtx32, cfg, 128);
    for (std::size_t i = 0; i < u.radii().size(); ++i) {
        const double r = u.radii()[i];
        CHECK(cumulative_source(f, r, kCtx32, cfg) <= 0.0);
        CHECK(u.derivatives()[i] >= 0.0);
        CHECK(u.values()[i] <= 1e-12);
        if (i > 0) CHECK(u.values()[i] >= u.values()[i - 1] - 1e-12);
    }
}

TEST_CASE("p-Laplacian residual on exact and wrong candidates") {
    const QuadratureConfig cfg;
    std::vector<double> radii;
    for (int i = 0; i < 40; ++i) radii.push_back(0.01 + 0.98 * i / 39.0);

    SUBCASE("exact quadratic solution") {
        const auto u = RadialProfile::power_law(-1.0 / 6.0, 2.0, -1.0);  // (1-r^2)/6
        const auto f = RadialProfile::constant(1.0);
        CHECK(p_laplacian_residual(u, f, kCtx32, radii, cfg) <= 1e-8);
    }
    SUBCASE("closed-form singular pair") {
        const auto ex = build_example(kCtx32, 1.0);
        CHECK(p_laplacian_residual(ex.u, ex.f, kCtx32, radii, cfg) <= 1e-6);
    }
    SUBCASE("zero candidate has unit relative residual") {
        const auto u = RadialProfile::constant(0.0);
        const auto f = RadialProfile::constant(1.0);
        CHECK(p_laplacian_residual(u, f, kCtx32, radii, cfg) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("radii outside the safe window are rejected") {
        CHECK_THROWS(p_laplacian_residual(RadialProfile::constant(0.0),
                                          RadialProfile::constant(1.0), kCtx32,
                                          {1e-9}, cfg));
    }
}

TEST_CASE("sampled profile validation") {
    std::vector<double> r(64), v(64, 1.0);
    for (int i = 0; i < 64; ++i) r[i] = (i + 1) / 64.0;
    CHECK_NOTHROW(RadialProfile::sampled(r, v, {}));
    CHECK_THROWS(RadialProfile::sampled({0.1, 0.2}, {1.0, 2.0}, {}));  // too few
    auto bad = r;
    bad[10] = bad[9];
    CHECK_THROWS(RadialProfile::sampled(bad, v, {}));
}

TEST_CASE("power law with negative exponent is singular at the origin") {
    const auto prof = RadialProfile::power_law(2.0, -0.5, -1.0);
    CHECK(prof.singular_at_origin());
    CHECK_FALSE(RadialProfile::power_law(2.0, 0.5, -1.0).singular_at_origin());
}
