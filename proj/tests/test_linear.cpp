#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "levstab/hill.hpp"
#include "levstab/linear.hpp"
#include "oracles.hpp"

using namespace levstab;

TEST_CASE("periodic matrix matches a central-difference Jacobian") {
    PlantModel m;
    m.params = baseline_params();
    m.exc = baseline_excitation(2.0);
    m.gains = {25000.0, 2000.0};
    const PeriodicMatrix a(m.params, m.exc, m.gains);
    for (int k = 0; k < 8; ++k) {
        const double t = k * m.exc.period() / 8.0;
        const Matrix6 an = a(t);
        const Matrix6 nu = numerical_jacobian(m, t);
        for (int i = 0; i < 6; ++i) {
            const double floor = 1e-3 * an.row(i).cwiseAbs().maxCoeff();
            for (int j = 0; j < 6; ++j) {
                CHECK(std::abs(an(i, j) - nu(i, j)) <= 1e-6 * std::max(std::abs(an(i, j)), floor));
            }
        }
    }
}

TEST_CASE("hybrid linearization matches the hybrid Jacobian") {
    PlantModel m;
    m.params = baseline_params();
    m.exc = baseline_excitation(0.4);
    m.gains = {25000.0, 2000.0};
    m.mode = PlantMode::Hybrid;
    m.hybrid = {0.01, hybrid_gamma(m.params, 0.01)};
    const PeriodicMatrix a(m.params, m.exc, m.gains, m.hybrid);
    for (double t : {0.0, 0.02, 0.05}) {
        const Matrix6 an = a(t);
        const Matrix6 nu = numerical_jacobian(m, t);
        CHECK((an - nu).norm() <= 1e-6 * an.norm());
    }
}

TEST_CASE("unexcited spectrum equals the roots of the hand-derived cubics") {
    const PhysicalParams p = baseline_params();
    for (auto [kp, kd] : {std::pair{30000.0, 1500.0}, {5000.0, 100.0}, {60000.0, 9000.0}}) {
        const UnexcitedSpectrum s = unexcited_spectrum(p, {kp, kd});
        const auto heave = oracle::roots(oracle::cubic(p, oracle::heave_mass(p), kp, kd));
        const auto pitch = oracle::roots(oracle::cubic(p, oracle::pitch_mass(p), kp, kd));
        for (const auto& r : heave) {
            double best = 1e300;
            for (const auto& x : s.translational) best = std::min(best, std::abs(x - r));
            CHECK(best <= 1e-8 * std::abs(r));
        }
        for (const auto& r : pitch) {
            double best = 1e300;
            for (const auto& x : s.rotational) best = std::min(best, std::abs(x - r));
            CHECK(best <= 1e-8 * std::abs(r));
        }
    }
}

TEST_CASE("static stability regions") {
    const PhysicalParams p = baseline_params();
    const double h0 = oracle::h0(p);
    CHECK(is_statically_stable(p, {oracle::hopf_kp(p, 2000.0) * 0.5 + h0 * 0.5, 2000.0}).stable);
    CHECK_FALSE(is_statically_stable(p, {0.99 * h0, 2000.0}).stable);
    CHECK_FALSE(is_statically_stable(p, {oracle::hopf_kp(p, 2000.0) * 1.01, 2000.0}).stable);
}

TEST_CASE("aggregate coordinates decouple heave and pitch without excitation") {
    const PhysicalParams p = baseline_params();
    ExcitationParams e = baseline_excitation(1.0);
    e.A = 0.0;
    const Matrix6 agg = to_aggregate(PeriodicMatrix(p, e, {20000.0, 1000.0})(0.01), p.L);
    CHECK(agg.topRightCorner<3, 3>().norm() < 1e-9 * agg.norm());
    CHECK(agg.bottomLeftCorner<3, 3>().norm() < 1e-9 * agg.norm());
}

TEST_CASE("linear trajectories satisfy the reduced third-order equations") {
    const PhysicalParams p = baseline_params();
    const ExcitationParams e = baseline_excitation(0.9);
    const ControlGains g{25000.0, 1800.0};
    const PeriodicMatrix a(p, e, g);
    std::vector<double> times;
    for (int i = 0; i <= 40; ++i) times.push_back(i * e.period() / 20.0);
    Vector6 x0;
    x0 << 1e-4, 0.0, 0.5, -5e-5, 1e-3, 0.0;
    const auto traj = integrate_linear(a, x0, times);
    REQUIRE(traj.size() == times.size());
    CHECK(reduced_residual(traj, p, e, g).max_scaled() < 1e-8);
}

TEST_CASE("perturbation state round trip") {
    PerturbationState s{1, 2, 3, 4, 5, 6};
    const PerturbationState r = PerturbationState::from_vector(s.as_vector());
    CHECK(r.d2 == 4);
    CHECK(r.heave() == 2.5);
    CHECK(r.pitch(3.0) == doctest::Approx(-1.0));
}
