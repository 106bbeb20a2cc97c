#include "levstab/plant.hpp"

#include <cmath>
#include <sstream>

#include "levstab/error.hpp"

namespace levstab {

StateVector VehicleState::as_vector() const {
    StateVector v;
    v << z, zdot, phi, phidot, I1, I2;
    return v;
}

VehicleState VehicleState::from_vector(const StateVector& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

SupportMotion support_motion(const ExcitationParams& exc, double t) {
    const double wt = exc.Omega * t;
    return {exc.A * std::cos(wt), exc.A * std::cos(wt - exc.theta)};
}

SupportMotion support_velocity(const ExcitationParams& exc, double t) {
    const double wt = exc.Omega * t;
    return {-exc.A * exc.Omega * std::sin(wt), -exc.A * exc.Omega * std::sin(wt - exc.theta)};
}

double em_force(double current, double gap, const PhysicalParams& params) {
    if (!(gap > 0.0)) throw GapClosed(0.0, "gap closed");
    return params.C * current * current / (gap * gap);
}

namespace {

SteadyStateSample steady_state_offset(const PhysicalParams& p, const ExcitationParams& exc,
                                      double beta, double gamma, double t) {
    const SupportMotion w = support_motion(exc, t);
    const SupportMotion wdot = support_velocity(exc, t);
    const double k = p.current_per_gap();
    SteadyStateSample s;
    s.t = t;
    s.gap = {p.z0 - w.w1, p.z0 - w.w2};
    s.gap_rate = {-wdot.w1, -wdot.w2};
    for (int i = 0; i < 2; ++i) {
        s.current[i] = k * (s.gap[i] + beta) - gamma;
        s.current_rate[i] = k * s.gap_rate[i];
        s.voltage[i] = p.R * s.current[i];
        s.voltage_rate[i] = p.R * s.current_rate[i];
    }
    return s;
}

std::string gap_closed_message(double t) {
    std::ostringstream os;
    os.precision(17);
    os << "gap closed at t=" << t;
    return os.str();
}

// Shared by the standard and hybrid plants; beta = gamma = 0 for the former.
bool plant_derivative(const PhysicalParams& p, const ExcitationParams& exc,
                      const ControlGains& gains, double beta, double gamma, double t,
                      const StateVector& y, StateVector& dydt) {
    const double half_l = 0.5 * p.L;
    const SupportMotion w = support_motion(exc, t);
    const SupportMotion wdot = support_velocity(exc, t);
    const std::array<double, 2> gap = {y[0] + y[2] * half_l - w.w1, y[0] - y[2] * half_l - w.w2};
    const std::array<double, 2> gap_rate = {y[1] + y[3] * half_l - wdot.w1,
                                            y[1] - y[3] * half_l - wdot.w2};
    const std::array<double, 2> eff_gap = {gap[0] + beta, gap[1] + beta};
    if (!(eff_gap[0] > 0.0) || !(eff_gap[1] > 0.0)) return false;

    const std::array<double, 2> current = {y[4], y[5]};
    std::array<double, 2> force{};
    for (int i = 0; i < 2; ++i) {
        const double ratio = (current[i] + gamma) / eff_gap[i];
        force[i] = p.C * ratio * ratio;
    }

    const SteadyStateSample ss = steady_state_offset(p, exc, beta, gamma, t);
    const std::array<double, 2> u = control_voltage(gains, gap, gap_rate, ss);

    dydt[0] = y[1];
    dydt[1] = (p.m * p.g - force[0] - force[1]) / p.m;
    dydt[2] = y[3];
    dydt[3] = -(force[0] - force[1]) * half_l / p.J;
    for (int i = 0; i < 2; ++i) {
        dydt[4 + i] = eff_gap[i] / (2.0 * p.C) * (u[i] - p.R * current[i]) +
                      (current[i] + gamma) / eff_gap[i] * gap_rate[i];
    }
    return true;
}

}  // namespace

SteadyStateSample steady_state(const PhysicalParams& params, const ExcitationParams& exc,
                               double t) {
    return steady_state_offset(params, exc, 0.0, 0.0, t);
}

SteadyStateSample hybrid_steady_state(const PhysicalParams& params, const ExcitationParams& exc,
                                      const HybridParams& hyb, double t) {
    return steady_state_offset(params, exc, hyb.beta, hyb.gamma, t);
}

SteadyStateSample steady_state(const PlantModel& model, double t) {
    return model.mode == PlantMode::Hybrid
               ? hybrid_steady_state(model.params, model.exc, model.hybrid, t)
               : steady_state(model.params, model.exc, t);
}

VehicleState steady_vehicle_state(const PlantModel& model, double t) {
    const SteadyStateSample ss = steady_state(model, t);
    VehicleState s;
    s.z = model.params.z0;
    s.I1 = ss.current[0];
    s.I2 = ss.current[1];
    return s;
}

std::array<double, 2> control_voltage(const ControlGains& gains, const std::array<double, 2>& gap,
                                      const std::array<double, 2>& gap_rate,
                                      const SteadyStateSample& ss) {
    std::array<double, 2> u{};
    for (int i = 0; i < 2; ++i) {
        u[i] = ss.voltage[i] + gains.Kp * (gap[i] - ss.gap[i]) +
               gains.Kd * (gap_rate[i] - ss.gap_rate[i]);
    }
    return u;
}

GapKinematics gap_kinematics(const VehicleState& s, const PhysicalParams& params,
                             const ExcitationParams& exc, double t) {
    const double half_l = 0.5 * params.L;
    const SupportMotion w = support_motion(exc, t);
    const SupportMotion wdot = support_velocity(exc, t);
    GapKinematics k;
    k.gap = {s.z + s.phi * half_l - w.w1, s.z - s.phi * half_l - w.w2};
    k.gap_rate = {s.zdot + s.phidot * half_l - wdot.w1, s.zdot - s.phidot * half_l - wdot.w2};
    return k;
}

StateVector rhs(const VehicleState& state, double t, const PhysicalParams& params,
                const ExcitationParams& exc, const ControlGains& gains) {
    StateVector d;
    if (!plant_derivative(params, exc, gains, 0.0, 0.0, t, state.as_vector(), d)) {
        throw GapClosed(t, gap_closed_message(t));
    }
    return d;
}

StateVector rhs_hybrid(const VehicleState& state, double t, const PhysicalParams& params,
                       const ExcitationParams& exc, const ControlGains& gains,
                       const HybridParams& hyb) {
    StateVector d;
    if (!plant_derivative(params, exc, gains, hyb.beta, hyb.gamma, t, state.as_vector(), d)) {
        throw GapClosed(t, gap_closed_message(t));
    }
    return d;
}

bool try_rhs(const PlantModel& model, double t, const StateVector& y, StateVector& dydt) {
    const bool hybrid = model.mode == PlantMode::Hybrid;
    return plant_derivative(model.params,
                            model.exc,
                            model.gains,
                            hybrid ? model.hybrid.beta : 0.0,
                            hybrid ? model.hybrid.gamma : 0.0,
                            t,
                            y,
                            dydt);
}

StateVector rhs(const PlantModel& model, double t, const StateVector& y) {
    StateVector d;
    if (!try_rhs(model, t, y, d)) throw GapClosed(t, gap_closed_message(t));
    return d;
}

double hybrid_gamma(const PhysicalParams& params, double beta) {
    if (!(params.z0 + beta > 0.0)) throw InvalidParameter("z0 + beta must be positive");
    return params.current_per_gap() * (params.z0 + beta);
}

VehicleState hybrid_transform(const VehicleState& s, const HybridParams& hyb) {
    VehicleState r = s;
    r.z += hyb.beta;
    r.I1 += hyb.gamma;
    r.I2 += hyb.gamma;
    return r;
}

VehicleState hybrid_inverse_transform(const VehicleState& s, const HybridParams& hyb) {
    VehicleState r = s;
    r.z -= hyb.beta;
    r.I1 -= hyb.gamma;
    r.I2 -= hyb.gamma;
    return r;
}

double hybrid_transform_voltage(double voltage, const HybridParams& hyb,
                                const PhysicalParams& params) {
    return voltage + params.R * hyb.gamma;
}

PhysicalParams barred_params(const PhysicalParams& params, const HybridParams& hyb) {
    PhysicalParams p = params;
    p.z0 += hyb.beta;
    return p;
}

const char* to_string(TrajectoryStatus status) {
    switch (status) {
        case TrajectoryStatus::Completed: return "completed";
        case TrajectoryStatus::GapClosed: return "gap_closed";
        case TrajectoryStatus::StepUnderflow: return "step_underflow";
        case TrajectoryStatus::MaxSteps: return "max_steps";
    }
    return "unknown";
}

Trajectory integrate(const VehicleState& initial, double t0, double t1, const PlantModel& model,
                     const IntegrationOptions& opts) {
    if (!(t1 > t0)) throw InvalidParameter("integration span must have t1 > t0");
    std::vector<double> samples = opts.sample_times;
    if (samples.empty()) {
        const int n = std::max(opts.samples, 1);
        samples.reserve(n);
        for (int i = 1; i <= n; ++i) samples.push_back(t0 + (t1 - t0) * i / n);
        samples.back() = t1;
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] > (i == 0 ? t0 : samples[i - 1]))) {
            throw InvalidParameter("sample times must be strictly increasing and after t0");
        }
    }

    Trajectory traj;
    traj.rtol = opts.rtol;
    traj.atol = opts.atol;
    traj.t.reserve(samples.size() + 1);
    traj.states.reserve(samples.size() + 1);

    const double gamma = model.mode == PlantMode::Hybrid ? model.hybrid.gamma : 0.0;
    auto record = [&](double t, const StateVector& y) {
        traj.t.push_back(t);
        traj.states.push_back(VehicleState::from_vector(y));
        if (!traj.negative_current_time && (y[4] + gamma < 0.0 || y[5] + gamma < 0.0)) {
            traj.negative_current_time = t;
        }
    };
    const StateVector y0 = initial.as_vector();
    record(t0, y0);

    ode::Options oo;
    oo.rtol = opts.rtol;
    oo.atol = opts.atol;
    auto f = [&](double t, const StateVector& y, StateVector& d) {
        return try_rhs(model, t, y, d);
    };
    const ode::Result res = ode::integrate<6>(f, t0, y0, samples, oo, record);
    traj.stats = res.stats;

    std::ostringstream os;
    os.precision(17);
    switch (res.status) {
        case ode::Status::Success: traj.status = TrajectoryStatus::Completed; break;
        case ode::Status::InvalidState:
            traj.status = TrajectoryStatus::GapClosed;
            traj.message = gap_closed_message(res.t);
            break;
        case ode::Status::StepUnderflow:
            traj.status = TrajectoryStatus::StepUnderflow;
            os << "step size underflow at t=" << res.t;
            traj.message = os.str();
            break;
        case ode::Status::MaxSteps:
            traj.status = TrajectoryStatus::MaxSteps;
            os << "step limit reached at t=" << res.t;
            traj.message = os.str();
            break;
    }
    return traj;
}

}  // namespace levstab
