#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpbec/ops.hpp"
#include "gpbec/townes.hpp"
#include "oracles.hpp"

using namespace gpbec;

namespace {
const double kPi = std::acos(-1.0);

const TownesProfile& profile() {
    static const TownesProfile p = solve_townes(1e-12, 20.0);
    return p;
}
}  // namespace

TEST_CASE("shoot classifies the three regimes") {
    CHECK(shoot(1.0, 20.0).outcome == ShootOutcome::StaysPositiveAndGrows);
    CHECK(shoot(1.5, 20.0).outcome == ShootOutcome::StaysPositiveAndGrows);
    CHECK(shoot(3.0, 20.0).outcome == ShootOutcome::CrossesZero);
    CHECK(shoot(5.0, 20.0).outcome == ShootOutcome::CrossesZero);
    CHECK_THROWS_AS(shoot(-1.0, 20.0), Error);
    CHECK_THROWS_AS(shoot(1.0, 10.0), Error);

    // the fixed-step oracle agrees
    CHECK(testing::shoot_oracle(1.0, 20.0, 5e-4) == 0);
    CHECK(testing::shoot_oracle(3.0, 20.0, 5e-4) == 1);
}

TEST_CASE("bisection limit decays below 1e-7 at r = 20") {
    const ShootResult res = shoot(profile().w0, 20.0);
    CHECK(res.outcome == ShootOutcome::Decays);
    CHECK(profile().eval(20.0) < 1e-7);
}

TEST_CASE("ground-state constants against the brute-force oracle") {
    const testing::RadialOracle oracle = testing::townes_oracle(5e-4);
    const TownesProfile& p = profile();
    CHECK(p.w0 == doctest::Approx(oracle.w0).epsilon(5e-5));
    CHECK(p.w0 == doctest::Approx(2.2062).epsilon(5e-4));
    CHECK(p.a_star == doctest::Approx(oracle.a_star).epsilon(1e-4));
    CHECK(p.a_star == doctest::Approx(11.7009).epsilon(1e-3));
    CHECK(p.i2 == doctest::Approx(oracle.i2).epsilon(1e-3));
}

TEST_CASE("virial identities of the radial solution") {
    const TownesProfile& p = profile();
    CHECK(p.norm_grad2 == doctest::Approx(p.norm_l2).epsilon(1e-6));
    CHECK(p.norm_grad2 == doctest::Approx(0.5 * p.norm_l4).epsilon(1e-6));
    CHECK(p.norm_grad2 / p.norm_l2 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("profile table is positive, decreasing, and exponentially small") {
    const TownesProfile& p = profile();
    for (size_t k = 1; k < p.w_samples.size(); ++k) {
        CHECK(p.w_samples[k] > 0.0);
        CHECK(p.w_samples[k] < p.w_samples[k - 1]);
    }
    // tail bound: w(r) <= C r^{-1/2} e^{-r} with C within a factor 2 of the fit
    for (double r = 10.0; r <= 20.0; r += 0.5) {
        const double bound = p.tail_c * std::exp(-r) / std::sqrt(r);
        CHECK(p.eval(r) <= 2.0 * bound);
        CHECK(p.eval(r) >= 0.5 * bound);
    }
    CHECK(p.eval(20.0) < 1e-7);
    CHECK(p.eval(25.0) < p.eval(20.0));
}

TEST_CASE("repeated solves agree to the bisection tolerance") {
    const TownesProfile p1 = solve_townes(1e-10, 20.0);
    const TownesProfile p2 = solve_townes(1e-10, 20.0);
    CHECK(p1.w0 == p2.w0);  // deterministic
    CHECK(std::abs(p1.w0 - profile().w0) < 1e-9);
}

TEST_CASE("tolerance preconditions") {
    CHECK_THROWS_AS(solve_townes(1e-15, 20.0), Error);
    CHECK_THROWS_AS(solve_townes(1e-3, 20.0), Error);
    try {
        solve_townes(1e-3, 20.0);
    } catch (const Error& e) {
        CHECK(e.kind() == "invalid-parameter");
    }
}

TEST_CASE("lambda_param formula and the quadrature oracle") {
    const TownesProfile& p = profile();
    CHECK(lambda_param(p, 1.0) == doctest::Approx(std::pow(p.i2, 0.25)).epsilon(1e-12));
    CHECK(lambda_param(p, 3.0) == doctest::Approx(std::pow(2.0 * p.i2, 0.25)).epsilon(1e-12));
    CHECK_THROWS_AS(lambda_param(p, 0.0), Error);
    CHECK_THROWS_AS(lambda_param(p, -1.0), Error);

    const testing::RadialOracle oracle = testing::townes_oracle(5e-4);
    CHECK(p.i2 == doctest::Approx(oracle.i2).epsilon(1e-3));
}

TEST_CASE("interp_to_grid: mass, tail, masking") {
    const TownesProfile& p = profile();
    GridPtr big = build_grid(DomainSpec::rectangle(-15, 15, -15, 15), 301, 301);
    ComplexField w = interp_to_grid(p, big, 1.0, {0, 0});
    CHECK(mass(w) == doctest::Approx(p.a_star).epsilon(5e-3));

    // cross-quadrature: grid integral of w^2 vs the radial 2*pi*int w^2 r dr
    std::vector<double> w2(big->size());
    for (int k = 0; k < big->size(); ++k) w2[k] = std::norm(w.values[k]);
    CHECK(integrate(*big, w2) == doctest::Approx(p.a_star).epsilon(5e-3));

    GridPtr disk = build_grid(DomainSpec::disk(1.0), 65, 65);
    ComplexField wd = interp_to_grid(p, disk, 1.0, {0, 0});
    wd.validate();  // exterior exactly zero

    CHECK_THROWS_AS(interp_to_grid(p, disk, 0.0, {0, 0}), Error);
}

TEST_CASE("Gagliardo-Nirenberg sharpness of the interpolated profile") {
    const TownesProfile& p = profile();
    GridPtr big = build_grid(DomainSpec::rectangle(-12, 12, -12, 12), 481, 481);
    const ComplexField w = interp_to_grid(p, big, 1.0, {0, 0});
    std::vector<double> w2(big->size()), w4(big->size());
    for (int k = 0; k < big->size(); ++k) {
        w2[k] = std::norm(w.values[k]);
        w4[k] = w2[k] * w2[k];
    }
    // ratio int w^4 / (int |grad w|^2 int w^2) should hit 2/a* at the optimizer
    const auto [gx, gy] = gradient_apply(w);
    std::vector<double> g2(big->size());
    for (int k = 0; k < big->size(); ++k)
        g2[k] = std::norm(gx.values[k]) + std::norm(gy.values[k]);
    const double ratio =
        integrate(*big, w4) / (integrate(*big, g2) * integrate(*big, w2));
    CHECK(ratio == doctest::Approx(2.0 / p.a_star).epsilon(5e-3));
}

TEST_CASE("radial quadrature cross-check of the moment integrals") {
    // independent trapezoid over the emitted table
    const TownesProfile& p = profile();
    double m0 = 0.0, m2 = 0.0;
    for (size_t k = 1; k < p.r_samples.size(); ++k) {
        const double ra = p.r_samples[k - 1], rb = p.r_samples[k];
        const double wa = p.w_samples[k - 1], wb = p.w_samples[k];
        m0 += 0.5 * (rb - ra) * (wa * wa * ra + wb * wb * rb);
        m2 += 0.5 * (rb - ra) * (wa * wa * ra * ra * ra + wb * wb * rb * rb * rb);
    }
    CHECK(2.0 * kPi * m0 == doctest::Approx(p.a_star).epsilon(1e-3));
    CHECK(2.0 * kPi * m2 == doctest::Approx(p.i2).epsilon(1e-3));
}
