#include <cmath>
#include <numbers>

#include "doctest.h"
#include "levstab/error.hpp"
#include "levstab/hill.hpp"
#include "oracles.hpp"

using namespace levstab;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("static boundary lines agree with the Routh-Hurwitz conditions") {
    const PhysicalParams p = baseline_params();
    const StaticBoundaryLines s = static_boundary_lines(p);
    CHECK(oracle::rel(h0_gain(p), oracle::h0(p)) < 1e-14);
    CHECK(oracle::rel(s.vertical_kp, oracle::h0(p)) < 1e-14);
    for (double kd : {0.0, 500.0, 7000.0, 60000.0}) {
        CHECK(oracle::rel(s.inclined_kp(kd), oracle::hopf_kp(p, kd)) < 1e-13);
    }
}

TEST_CASE("ellipse centres at the reference vehicle") {
    const PhysicalParams p = baseline_params();
    const ExcitationParams e = baseline_excitation(pi / 2);
    const double h0 = oracle::h0(p);
    // reference values rounded to the digits shown
    const std::array<std::pair<char, double>, 4> ref = {
        std::pair{'a', 2354.8}, {'b', 7064.5}, {'c', 3785.9}, {'d', 52731.0}};
    for (auto [kind, approx] : ref) {
        const Ellipse el = ellipse(ellipse_kind_from_char(kind), p, e);
        CHECK(oracle::rel(el.h2, oracle::centre_kd(p, kind, e.Omega)) < 1e-9);
        CHECK(std::abs(el.h2 - approx) < 0.1 + 1e-5 * approx);
        CHECK(oracle::rel(el.h1, h0 + (p.R * p.z0 / (2 * p.C)) * el.h2) < 1e-12);
    }
}

TEST_CASE("axis ratios and Kd semi-axes") {
    const PhysicalParams p = baseline_params();
    for (double theta : {0.3, pi / 2, 2.5}) {
        const ExcitationParams e = baseline_excitation(theta);
        const auto el = all_ellipses(p, e);
        CHECK(oracle::rel(el[1].k1 / el[0].k1, 3.0) < 1e-12);
        CHECK(oracle::rel(el[3].k1 / el[2].k1, 7.0 + 4.0 * std::sqrt(3.0)) < 1e-12);
        for (const Ellipse& x : el) {
            CHECK(oracle::rel(x.k1, axis_ratio(x.kind) * e.Omega * x.k2) < 1e-12);
        }
    }
}

TEST_CASE("degenerate ellipses are exact zeros") {
    const PhysicalParams p = baseline_params();
    const auto at0 = all_ellipses(p, baseline_excitation(0.0));
    CHECK(at0[2].k1 == 0.0);
    CHECK(at0[3].k1 == 0.0);
    CHECK(at0[2].degenerate());
    CHECK_FALSE(at0[0].degenerate());
    const auto atpi = all_ellipses(p, baseline_excitation(pi));
    CHECK(atpi[0].k1 == 0.0);
    CHECK(atpi[1].k1 == 0.0);
    CHECK_FALSE(atpi[3].degenerate());
}

TEST_CASE("relative size: geometric is twice the printed form") {
    const PhysicalParams p = baseline_params();
    for (double theta : {0.2, pi / 2, 2.9}) {
        const ExcitationParams e = baseline_excitation(theta);
        for (const Ellipse& x : all_ellipses(p, e)) {
            const bool principal = x.kind == EllipseKind::A || x.kind == EllipseKind::B;
            const RelativeSize r = relative_size(x, p);
            const double printed = oracle::printed_eta(e.A, theta, p.z0, principal);
            CHECK(oracle::rel(r.printed, printed) < 1e-12);
            CHECK(oracle::rel(x.k1 / (x.h1 - oracle::h0(p)), r.geometric) < 1e-12);
            CHECK(oracle::rel(r.geometric / r.printed, 2.0) < 1e-9);
        }
    }
}

TEST_CASE("relative size does not depend on Omega") {
    const PhysicalParams p = baseline_params();
    ExcitationParams e = baseline_excitation(1.0);
    const double ref = relative_size(principal_ellipse_b(p, e), p).geometric;
    for (double w : {20.0, 320.0}) {
        e.Omega = w;
        CHECK(oracle::rel(relative_size(principal_ellipse_b(p, e), p).geometric, ref) < 1e-12);
    }
}

TEST_CASE("principal harmonic-balance determinant vanishes on the ellipse") {
    const PhysicalParams p = baseline_params();
    const ExcitationParams e = baseline_excitation(0.8);
    for (EllipseKind k : {EllipseKind::A, EllipseKind::B}) {
        const Ellipse el = ellipse(k, p, e);
        const double inside = hb_determinant_principal(p, e, {el.h1, el.h2}, k).determinant;
        CHECK(inside < 0.0);
        for (const GainPoint& g : ellipse_boundary(el, 12)) {
            const double d = hb_determinant_principal(p, e, {g.Kp, g.Kd}, k).determinant;
            CHECK(std::abs(d) <= 1e-8 * std::abs(inside));
        }
        const double outside =
            hb_determinant_principal(p, e, {el.h1 + 2.0 * el.k1, el.h2}, k).determinant;
        CHECK(outside > 0.0);
    }
    CHECK_THROWS_AS(hb_determinant_principal(p, e, {1, 1}, EllipseKind::C), InvalidParameter);
}

TEST_CASE("combination residual vanishes on the ellipse") {
    const PhysicalParams p = baseline_params();
    const ExcitationParams e = baseline_excitation(2.2);
    for (auto [k, pair] : {std::pair{EllipseKind::C, CombinationPair::Sum},
                           {EllipseKind::D, CombinationPair::Difference}}) {
        const Ellipse el = ellipse(k, p, e);
        const CombinationHill centre = hill_determinant_combination(p, e, {el.h1, el.h2}, pair);
        CHECK(centre.ellipse_residual < 0.0);
        for (const GainPoint& g : ellipse_boundary(el, 8)) {
            const CombinationHill h = hill_determinant_combination(p, e, {g.Kp, g.Kd}, pair);
            CHECK(std::abs(h.ellipse_residual) <= 1e-7 * std::abs(centre.ellipse_residual));
        }
    }
}

TEST_CASE("combination frequencies") {
    const CombinationFrequencies f = combination_frequencies(80.0);
    CHECK(f.sum.omega1 + f.sum.omega2 == doctest::Approx(80.0));
    CHECK(f.difference.omega2 - f.difference.omega1 == doctest::Approx(80.0));
    CHECK(f.sum.omega2 / f.sum.omega1 == doctest::Approx(std::sqrt(3.0)));
    CHECK(f.difference.omega2 / f.difference.omega1 == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("ellipse boundary and level") {
    const Ellipse el = principal_ellipse_b(baseline_params(), baseline_excitation(0.0));
    const auto pts = ellipse_boundary(el, 16);
    REQUIRE(pts.size() == 16);
    CHECK(pts[0].Kp == doctest::Approx(el.h1 + el.k1));
    for (const GainPoint& g : pts) CHECK(el.level(g.Kp, g.Kd) == doctest::Approx(1.0));
    CHECK(el.level(el.h1, el.h2) == 0.0);
}

TEST_CASE("kind characters") {
    for (EllipseKind k : kAllEllipseKinds) CHECK(ellipse_kind_from_char(to_char(k)) == k);
    CHECK_THROWS_AS(ellipse_kind_from_char('e'), InvalidParameter);
}

TEST_CASE("resonance chart intersections") {
    const PhysicalParams p = baseline_params();
    const ResonanceChart c = resonance_chart(p, 80.0, 0.0, 1e5, 11);
    CHECK(c.samples.size() == 11);
    int observed = 0;
    for (const ChartIntersection& x : c.intersections) {
        if (!x.observed) continue;
        ++observed;
        CHECK(x.in_range);
        CHECK(oracle::rel(x.Kd, oracle::centre_kd(p, x.ellipse, 80.0)) < 1e-12);
    }
    CHECK(observed == 4);
    const ResonanceChart empty = resonance_chart(p, 80.0, 10.0, 10.0, 11);
    CHECK(empty.samples.empty());
    for (const ChartIntersection& x : empty.intersections) CHECK_FALSE(x.in_range);
}
