#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "levstab/error.hpp"
#include "levstab/model.hpp"
#include "oracles.hpp"

using namespace levstab;

TEST_CASE("baseline parameters") {
    const PhysicalParams p = baseline_params();
    CHECK(p.m == 7650.0);
    CHECK(p.C == 0.05);
    CHECK(p.R == 9.71);
    CHECK(p.z0 == 0.015);
    CHECK(p.L == 3.0);
    CHECK(p.J == doctest::Approx(7650.0 * 9.0 / 12.0).epsilon(1e-15));
    CHECK(p.inertia_defaulted);
    const ExcitationParams e = baseline_excitation(1.0);
    CHECK(e.A == 0.005);
    CHECK(e.Omega == 80.0);
    CHECK(e.theta == 1.0);
}

TEST_CASE("natural frequencies follow the Hopf frequency of the linearized cubic") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        PhysicalParams p = PhysicalParams::with_default_inertia(1000.0 + 20000.0 * u(rng),
                                                                1.0 + 9.0 * u(rng),
                                                                0.01 + 0.2 * u(rng),
                                                                1.0 + 20.0 * u(rng),
                                                                9.81,
                                                                0.005 + 0.02 * u(rng));
        const double Kd = 10.0 + 1e5 * u(rng);
        const NaturalFrequencies w = natural_frequencies(p, Kd);
        CHECK(oracle::rel(w.omega1, oracle::hopf_omega(p, oracle::heave_mass(p), Kd)) < 1e-12);
        CHECK(oracle::rel(w.omega2, oracle::hopf_omega(p, oracle::pitch_mass(p), Kd)) < 1e-12);
        CHECK(oracle::rel(w.omega2 / w.omega1, std::sqrt(3.0)) < 1e-12);
        CHECK(oracle::rel(kd_for_translational_frequency(p, w.omega1), Kd) < 1e-12);
    }
}

TEST_CASE("natural frequencies do not depend on R, z0 or L") {
    PhysicalParams p = baseline_params();
    const double w = natural_frequencies(p, 3000.0).omega1;
    p.R = 1.0;
    p.z0 = 0.1;
    p.L = 20.0;
    CHECK(natural_frequencies(p, 3000.0).omega1 == doctest::Approx(w).epsilon(1e-14));
}

TEST_CASE("normalize_angle") {
    CHECK(normalize_angle(0.0) == 0.0);
    CHECK(normalize_angle(2.0 * std::numbers::pi) == doctest::Approx(0.0));
    CHECK(normalize_angle(-std::numbers::pi / 2) == doctest::Approx(1.5 * std::numbers::pi));
    CHECK(normalize_angle(7.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
    const double x = normalize_angle(-1e-300);
    CHECK(x >= 0.0);
    CHECK(x < 2.0 * std::numbers::pi);
}

TEST_CASE("parameter validation") {
    PhysicalParams p = baseline_params();
    CHECK_NOTHROW(validate(p));
    for (double PhysicalParams::* field : {&PhysicalParams::m,
                                           &PhysicalParams::J,
                                           &PhysicalParams::L,
                                           &PhysicalParams::C,
                                           &PhysicalParams::R,
                                           &PhysicalParams::g,
                                           &PhysicalParams::z0}) {
        PhysicalParams q = p;
        q.*field = 0.0;
        CHECK_THROWS_AS(validate(q), InvalidParameter);
        q.*field = std::nan("");
        CHECK_THROWS_AS(validate(q), InvalidParameter);
    }
    ExcitationParams e = baseline_excitation();
    CHECK_NOTHROW(validate(p, e));
    e.A = p.z0;
    CHECK_THROWS_AS(validate(p, e), InvalidParameter);
    e = baseline_excitation();
    e.A = 0.0;
    CHECK_NOTHROW(validate(p, e));
    e.Omega = 0.0;
    CHECK_THROWS_AS(validate(p, e), InvalidParameter);
    CHECK_THROWS_AS(validate(ControlGains{std::nan(""), 1.0}), InvalidParameter);
    CHECK_NOTHROW(validate(ControlGains{-1e9, -5.0}));
}

TEST_CASE("kinematic excitation") {
    const ExcitationParams e = kinematic_excitation(30.0, 4.5, 3.0, 0.002);
    CHECK(e.Omega == doctest::Approx(2.0 * std::numbers::pi * 30.0 / 3.0));
    CHECK(e.theta == doctest::Approx(normalize_angle(2.0 * std::numbers::pi * 4.5 / 3.0)));
    REQUIRE(e.origin);
    CHECK(e.origin->v == 30.0);
    CHECK(e.origin->d == 4.5);
    CHECK_THROWS_AS(kinematic_excitation(0.0, 1.0, 3.0, 0.001), InvalidParameter);
}

TEST_CASE("P and Q") {
    ExcitationParams e = baseline_excitation(std::numbers::pi / 3);
    CHECK(e.P() == doctest::Approx(0.0025));
    CHECK(e.Q() == doctest::Approx(0.005 * std::sqrt(3.0) / 2));
}
