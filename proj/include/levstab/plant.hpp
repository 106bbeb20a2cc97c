#pragma once

// Nonlinear two-magnet plant: electromagnetic forces, PD-controlled coil
// currents, base excitation, the exact periodic steady state, time integration
// and the hybrid (permanent + electro) magnet variant.

#include <Eigen/Core>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "levstab/model.hpp"
#include "levstab/ode.hpp"

namespace levstab {

using StateVector = Eigen::Matrix<double, 6, 1>;

/// Rigid-body and coil state. Layout of as_vector(): z, zdot, phi, phidot, I1, I2.
struct VehicleState {
    double z = 0.0;       ///< centre-of-mass position, positive down (m)
    double zdot = 0.0;    ///< m/s
    double phi = 0.0;     ///< rotation (rad)
    double phidot = 0.0;  ///< rad/s
    double I1 = 0.0;      ///< coil current, support 1 (A)
    double I2 = 0.0;      ///< coil current, support 2 (A)

    [[nodiscard]] StateVector as_vector() const;
    static VehicleState from_vector(const StateVector& v);
};

struct SupportMotion {
    double w1 = 0.0;
    double w2 = 0.0;
};

/// One instant of the periodic steady state. Index 0 is support 1.
struct SteadyStateSample {
    double t = 0.0;
    std::array<double, 2> gap{};           ///< m
    std::array<double, 2> gap_rate{};      ///< m/s
    std::array<double, 2> current{};       ///< A
    std::array<double, 2> current_rate{};  ///< A/s
    std::array<double, 2> voltage{};       ///< V
    std::array<double, 2> voltage_rate{};  ///< V/s
};

enum class PlantMode { Standard, Hybrid };

/// Everything the right-hand side needs. `hybrid` is consulted only in
/// PlantMode::Hybrid.
struct PlantModel {
    PhysicalParams params;
    ExcitationParams exc;
    ControlGains gains;
    PlantMode mode = PlantMode::Standard;
    HybridParams hybrid;
};

/// w1 = A cos(Omega t), w2 = A cos(Omega t - theta)
SupportMotion support_motion(const ExcitationParams& exc, double t);
SupportMotion support_velocity(const ExcitationParams& exc, double t);

/// C I^2 / gap^2. Throws GapClosed for gap <= 0.
double em_force(double current, double gap, const PhysicalParams& params);

/// Steady state of the standard plant: body at z = z0, phi = 0; gaps follow
/// the track, I = sqrt(mg/2C) gap, U = R I.
SteadyStateSample steady_state(const PhysicalParams& params, const ExcitationParams& exc, double t);

/// Steady state of the hybrid plant with the same body position; currents and
/// voltages are the standard ones for gap + beta, minus gamma and R gamma.
SteadyStateSample hybrid_steady_state(const PhysicalParams& params, const ExcitationParams& exc,
                                      const HybridParams& hyb, double t);

/// Steady state matching the model's mode.
SteadyStateSample steady_state(const PlantModel& model, double t);

/// The vehicle state that sits exactly on the steady state at time t.
VehicleState steady_vehicle_state(const PlantModel& model, double t);

/// U = Uss + Kp (gap - gap_ss) + Kd (gap_rate - gap_rate_ss), per support.
std::array<double, 2> control_voltage(const ControlGains& gains, const std::array<double, 2>& gap,
                                      const std::array<double, 2>& gap_rate,
                                      const SteadyStateSample& ss);

/// Gaps and gap rates of a vehicle state at time t.
struct GapKinematics {
    std::array<double, 2> gap{};
    std::array<double, 2> gap_rate{};
};
GapKinematics gap_kinematics(const VehicleState& s, const PhysicalParams& params,
                             const ExcitationParams& exc, double t);

/// Time derivative of the standard plant state. Throws GapClosed.
StateVector rhs(const VehicleState& state, double t, const PhysicalParams& params,
                const ExcitationParams& exc, const ControlGains& gains);

/// Time derivative of the hybrid plant state. Throws GapClosed when
/// gap + beta <= 0. With beta = gamma = 0 this is rhs().
StateVector rhs_hybrid(const VehicleState& state, double t, const PhysicalParams& params,
                       const ExcitationParams& exc, const ControlGains& gains,
                       const HybridParams& hyb);

/// Dispatches on model.mode.
StateVector rhs(const PlantModel& model, double t, const StateVector& y);

/// Non-throwing variant; false when a gap (plus beta) is not positive.
bool try_rhs(const PlantModel& model, double t, const StateVector& y, StateVector& dydt);

/// gamma = sqrt(mg/2C) (z0 + beta): permanent magnets carry the static load.
double hybrid_gamma(const PhysicalParams& params, double beta);

/// Hybrid state -> barred (standard-form) state: gaps +beta, currents +gamma.
VehicleState hybrid_transform(const VehicleState& state, const HybridParams& hyb);
VehicleState hybrid_inverse_transform(const VehicleState& state, const HybridParams& hyb);
/// Voltage counterpart of hybrid_transform: U + R gamma.
double hybrid_transform_voltage(double voltage, const HybridParams& hyb,
                                const PhysicalParams& params);

/// Standard-plant parameters describing the hybrid plant in barred variables
/// (nominal gap z0 + beta).
PhysicalParams barred_params(const PhysicalParams& params, const HybridParams& hyb);

struct IntegrationOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Explicit output times, strictly increasing and > t0. When empty,
    /// `samples` evenly spaced times covering (t0, t1] are used.
    std::vector<double> sample_times;
    int samples = 200;
};

enum class TrajectoryStatus { Completed, GapClosed, StepUnderflow, MaxSteps };

struct Trajectory {
    std::vector<double> t;
    std::vector<VehicleState> states;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    std::string message;
    double rtol = 0.0;
    double atol = 0.0;
    ode::Stats stats;
    /// First sample time at which a coil current was negative, if any.
    std::optional<double> negative_current_time;

    [[nodiscard]] bool completed() const { return status == TrajectoryStatus::Completed; }
};

/// Integrates the plant from `initial` at t0 to t1. The first sample is the
/// initial state. A gap closure ends the run early with the samples so far.
Trajectory integrate(const VehicleState& initial, double t0, double t1, const PlantModel& model,
                     const IntegrationOptions& opts = {});

const char* to_string(TrajectoryStatus status);

}  // namespace levstab
