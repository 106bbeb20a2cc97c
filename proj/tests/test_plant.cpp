#include <cmath>
#include <numbers>

#include "doctest.h"
#include "levstab/error.hpp"
#include "levstab/plant.hpp"
#include "oracles.hpp"

using namespace levstab;

namespace {

PlantModel baseline_model(double theta = 0.7) {
    PlantModel m;
    m.params = baseline_params();
    m.exc = baseline_excitation(theta);
    m.gains = {30000.0, 1500.0};
    return m;
}

}  // namespace

TEST_CASE("force law") {
    const PhysicalParams p = baseline_params();
    CHECK(em_force(100.0, 0.01, p) == doctest::Approx(0.05 * 1e4 / 1e-4));
    CHECK_THROWS_AS(em_force(1.0, 0.0, p), GapClosed);
    CHECK_THROWS_AS(em_force(1.0, -1e-3, p), GapClosed);
}

TEST_CASE("steady state carries half the weight per magnet") {
    const PhysicalParams p = baseline_params();
    const ExcitationParams e = baseline_excitation(1.1);
    for (double t : {0.0, 0.013, 0.05}) {
        const SteadyStateSample s = steady_state(p, e, t);
        const SupportMotion w = support_motion(e, t);
        CHECK(s.gap[0] == doctest::Approx(p.z0 - w.w1).epsilon(1e-14));
        CHECK(s.gap[1] == doctest::Approx(p.z0 - w.w2).epsilon(1e-14));
        for (int i = 0; i < 2; ++i) {
            CHECK(em_force(s.current[i], s.gap[i], p) ==
                  doctest::Approx(0.5 * p.m * p.g).epsilon(1e-13));
            CHECK(s.voltage[i] == doctest::Approx(p.R * s.current[i]));
        }
    }
}

TEST_CASE("steady state is an exact solution of the plant") {
    for (double theta : {0.0, 1.0, std::numbers::pi}) {
        const PlantModel m = baseline_model(theta);
        for (double t : {0.0, 0.011, 0.037, 0.07}) {
            const StateVector x = steady_vehicle_state(m, t).as_vector();
            const StateVector dx = rhs(m, t, x);
            const SteadyStateSample s = steady_state(m, t);
            CHECK(std::abs(dx[0]) < 1e-12);
            CHECK(std::abs(dx[1]) < 1e-9);
            CHECK(std::abs(dx[2]) < 1e-12);
            CHECK(std::abs(dx[3]) < 1e-9);
            CHECK(dx[4] == doctest::Approx(s.current_rate[0]).epsilon(1e-9));
            CHECK(dx[5] == doctest::Approx(s.current_rate[1]).epsilon(1e-9));
        }
    }
}

TEST_CASE("integration from the steady state stays there") {
    const PlantModel m = baseline_model(std::numbers::pi / 2);
    IntegrationOptions o;
    o.samples = 100;
    const Trajectory tr = integrate(steady_vehicle_state(m, 0.0), 0.0, 10.0 * m.exc.period(), m, o);
    REQUIRE(tr.completed());
    CHECK(tr.t.size() == 101);
    for (const VehicleState& s : tr.states) {
        CHECK(std::abs(s.z - m.params.z0) < 1e-8);
        CHECK(std::abs(s.phi) < 1e-8);
    }
    CHECK(tr.t.back() == doctest::Approx(10.0 * m.exc.period()).epsilon(1e-15));
}

TEST_CASE("gap closure ends the run with a partial trajectory") {
    PlantModel m = baseline_model(0.0);
    m.gains = {0.0, 0.0};  // open loop is unstable
    VehicleState x0 = steady_vehicle_state(m, 0.0);
    x0.z -= 1e-3;  // toward the track
    IntegrationOptions o;
    o.samples = 400;
    const Trajectory tr = integrate(x0, 0.0, 40.0 * m.exc.period(), m, o);
    CHECK(tr.status == TrajectoryStatus::GapClosed);
    CHECK_FALSE(tr.completed());
    CHECK(!tr.t.empty());
    CHECK(tr.t.back() < 40.0 * m.exc.period());
    CHECK(!tr.message.empty());
}

TEST_CASE("hybrid plant with zero offsets is the standard plant") {
    const PlantModel m = baseline_model();
    VehicleState x = steady_vehicle_state(m, 0.02);
    x.z += 1e-4;
    x.I2 += 2.0;
    const StateVector a = rhs(x, 0.02, m.params, m.exc, m.gains);
    const StateVector b = rhs_hybrid(x, 0.02, m.params, m.exc, m.gains, {0.0, 0.0});
    CHECK((a - b).norm() <= 1e-12 * a.norm());
}

TEST_CASE("hybrid transform maps the hybrid plant onto the shifted standard plant") {
    PlantModel h = baseline_model(1.3);
    const double beta = 0.01;
    h.mode = PlantMode::Hybrid;
    h.hybrid = {beta, hybrid_gamma(h.params, beta)};
    CHECK(h.hybrid.gamma == doctest::Approx(std::sqrt(h.params.m * h.params.g / (2 * h.params.C)) *
                                            (h.params.z0 + beta)));
    PlantModel s = h;
    s.mode = PlantMode::Standard;
    s.params = barred_params(h.params, h.hybrid);
    CHECK(s.params.z0 == doctest::Approx(h.params.z0 + beta));

    VehicleState x = steady_vehicle_state(h, 0.01);
    x.zdot += 1e-3;
    x.I1 -= 1.0;
    const StateVector dh = rhs(h, 0.01, x.as_vector());
    const VehicleState xs = hybrid_transform(x, h.hybrid);
    const StateVector ds = rhs(s, 0.01, xs.as_vector());
    CHECK((dh - ds).norm() <= 1e-10 * dh.norm());

    const VehicleState back = hybrid_inverse_transform(xs, h.hybrid);
    CHECK((back.as_vector() - x.as_vector()).norm() < 1e-12);
}

TEST_CASE("control voltage on and off the steady state") {
    const PlantModel m = baseline_model();
    const SteadyStateSample s = steady_state(m, 0.03);
    const auto u = control_voltage(m.gains, s.gap, s.gap_rate, s);
    CHECK(u[0] == doctest::Approx(s.voltage[0]));
    CHECK(u[1] == doctest::Approx(s.voltage[1]));
    auto gap = s.gap;
    gap[0] += 1e-4;
    const auto v = control_voltage(m.gains, gap, s.gap_rate, s);
    CHECK(v[0] - s.voltage[0] == doctest::Approx(m.gains.Kp * 1e-4));
}
