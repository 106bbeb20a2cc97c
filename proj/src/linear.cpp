#include "levstab/linear.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levstab/error.hpp"
#include "levstab/ode.hpp"

namespace levstab {

Vector6 PerturbationState::as_vector() const {
    Vector6 x;
    x << d1, v1, i1, d2, v2, i2;
    return x;
}

PerturbationState PerturbationState::from_vector(const Vector6& x) {
    return {x[0], x[1], x[2], x[3], x[4], x[5]};
}

PeriodicMatrix::PeriodicMatrix(const PhysicalParams& params, const ExcitationParams& exc,
                               const ControlGains& gains)
    : params_(params), exc_(exc), gains_(gains) {}

PeriodicMatrix::PeriodicMatrix(const PhysicalParams& params, const ExcitationParams& exc,
                               const ControlGains& gains, const HybridParams& hyb)
    : params_(params), exc_(exc), gains_(gains), beta_(hyb.beta) {}

Matrix6 PeriodicMatrix::operator()(double t) const {
    const PhysicalParams& p = params_;
    const double wt = exc_.Omega * t;
    const double aw = exc_.A * exc_.Omega;
    // steady-state gaps and rates, shifted to the magnet's effective gap
    const std::array<double, 2> gap = {p.z0 - exc_.A * std::cos(wt) + beta_,
                                       p.z0 - exc_.A * std::cos(wt - exc_.theta) + beta_};
    const std::array<double, 2> gap_rate = {aw * std::sin(wt), aw * std::sin(wt - exc_.theta)};
    const double k = p.current_per_gap();

    Matrix6 a = Matrix6::Zero();
    std::array<double, 2> stiffness{};  // 2 C Iss^2 / gap^3
    std::array<double, 2> gain{};       // 2 C Iss / gap^2
    for (int i = 0; i < 2; ++i) {
        // Iss + gamma = sqrt(mg/2C) (gap_ss + beta) for either magnet type
        const double cur = k * gap[i];
        const int o = 3 * i;
        stiffness[i] = 2.0 * p.C * cur * cur / (gap[i] * gap[i] * gap[i]);
        gain[i] = 2.0 * p.C * cur / (gap[i] * gap[i]);

        a(o, o + 1) = 1.0;
        a(o + 2, o) = gains_.Kp * gap[i] / (2.0 * p.C) - gap_rate[i] * cur / (gap[i] * gap[i]);
        a(o + 2, o + 1) = (gains_.Kd / (2.0 * p.C) + cur / (gap[i] * gap[i])) * gap[i];
        a(o + 2, o + 2) = -(p.R * gap[i] * gap[i] - 2.0 * p.C * gap_rate[i]) / (2.0 * p.C * gap[i]);
    }

    // m/2 (a1 + a2) = f1 + f2 and 2J/L^2 (a1 - a2) = f1 - f2, with
    // f_i = stiffness_i d_i - gain_i i_i; solved for the two accelerations.
    const double sum_coef = 1.0 / p.m;
    const double diff_coef = p.L * p.L / (4.0 * p.J);
    const double same = sum_coef + diff_coef;
    const double cross = sum_coef - diff_coef;
    a(1, 0) = same * stiffness[0];
    a(1, 2) = -same * gain[0];
    a(1, 3) = cross * stiffness[1];
    a(1, 5) = -cross * gain[1];
    a(4, 0) = cross * stiffness[0];
    a(4, 2) = -cross * gain[0];
    a(4, 3) = same * stiffness[1];
    a(4, 5) = -same * gain[1];
    return a;
}

Matrix6 PeriodicMatrix::derivative(double t) const {
    const double h = 1e-4 * period();
    return ((*this)(t - 2 * h) - 8.0 * (*this)(t - h) + 8.0 * (*this)(t + h) - (*this)(t + 2 * h)) /
           (12.0 * h);
}

PeriodicMatrix periodic_matrix(const PhysicalParams& params, const ExcitationParams& exc,
                               const ControlGains& gains) {
    if (exc.A >= params.z0) throw InvalidParameter("A >= z0: steady-state gap closes");
    return PeriodicMatrix(params, exc, gains);
}

Matrix6 aggregate_transform(double L) {
    Matrix6 s = Matrix6::Zero();
    s(0, 0) = 0.5;
    s(0, 3) = 0.5;
    s(1, 1) = 0.5;
    s(1, 4) = 0.5;
    s(2, 2) = 0.5;
    s(2, 5) = 0.5;
    s(3, 0) = 1.0 / L;
    s(3, 3) = -1.0 / L;
    s(4, 1) = 1.0 / L;
    s(4, 4) = -1.0 / L;
    s(5, 2) = 0.5;
    s(5, 5) = -0.5;
    return s;
}

Matrix6 to_aggregate(const Matrix6& a, double L) {
    const Matrix6 s = aggregate_transform(L);
    return s * a * s.inverse();
}

std::vector<LinearSample> integrate_linear(const PeriodicMatrix& a, const Vector6& x0,
                                           const std::vector<double>& times, double rtol,
                                           double atol) {
    std::vector<LinearSample> out;
    out.push_back({0.0, x0});
    std::vector<double> samples;
    for (double t : times) {
        if (t > 0.0) samples.push_back(t);
    }
    ode::Options opts;
    opts.rtol = rtol;
    opts.atol = atol;
    auto f = [&](double t, const Vector6& x, Vector6& dx) {
        dx.noalias() = a(t) * x;
        return true;
    };
    auto obs = [&](double t, const Vector6& x) { out.push_back({t, x}); };
    const ode::Result r = ode::integrate<6>(f, 0.0, x0, samples, opts, obs);
    if (r.status != ode::Status::Success) throw NumericalError("linear integration failed");
    return out;
}

ReducedResidual reduced_residual(const std::vector<LinearSample>& traj, const PhysicalParams& p,
                                 const ExcitationParams& exc, const ControlGains& gains) {
    const PeriodicMatrix a(p, exc, gains);
    const double sq = std::sqrt(p.C * p.g * p.m);
    const double r2 = std::numbers::sqrt2;
    const double L = p.L;

    ReducedResidual res;
    for (const LinearSample& s : traj) {
        const Matrix6 at = a(s.t);
        const Vector6 x1 = at * s.x;
        const Vector6 x2 = (a.derivative(s.t) + at * at) * s.x;

        const double heave = 0.5 * (s.x[0] + s.x[3]);
        const double heave_d = 0.5 * (s.x[1] + s.x[4]);
        const double heave_dd = 0.5 * (x1[1] + x1[4]);
        const double heave_ddd = 0.5 * (x2[1] + x2[4]);
        const double pitch = (s.x[0] - s.x[3]) / L;
        const double pitch_d = (s.x[1] - s.x[4]) / L;
        const double pitch_dd = (x1[1] - x1[4]) / L;
        const double pitch_ddd = (x2[1] - x2[4]) / L;

        const double wt = exc.Omega * s.t;
        const double g1 = p.z0 - exc.A * std::cos(wt);
        const double g2 = p.z0 - (exc.P() * std::cos(wt) + exc.Q() * std::sin(wt));

        const std::array<double, 5> heave_terms = {
            (-8.0 * gains.Kp * L * sq + 4.0 * r2 * p.g * L * p.m * p.R) * heave,
            -8.0 * gains.Kd * L * sq * heave_d,
            -(r2 * L * p.m * p.R * g1 + r2 * L * p.m * p.R * g2) * heave_dd,
            -(2.0 * r2 * p.J * p.R * g1 - 2.0 * r2 * p.J * p.R * g2) * pitch_dd,
            -4.0 * r2 * p.C * L * p.m * heave_ddd,
        };
        const std::array<double, 5> pitch_terms = {
            (-4.0 * gains.Kp * L * L * sq + 2.0 * r2 * p.g * L * L * p.m * p.R) * pitch,
            -4.0 * gains.Kd * L * L * sq * pitch_d,
            -(r2 * L * p.m * p.R * g1 - r2 * L * p.m * p.R * g2) * heave_dd,
            -(2.0 * r2 * p.J * p.R * g1 + 2.0 * r2 * p.J * p.R * g2) * pitch_dd,
            -8.0 * r2 * p.C * p.J * pitch_ddd,
        };

        auto accumulate =
            [](const std::array<double, 5>& terms, double& abs_max, double& scaled_max) {
                double sum = 0.0;
                double scale = 0.0;
                for (double v : terms) {
                    sum += v;
                    scale = std::max(scale, std::abs(v));
                }
                abs_max = std::max(abs_max, std::abs(sum));
                if (scale > 0.0) scaled_max = std::max(scaled_max, std::abs(sum) / scale);
            };
        accumulate(heave_terms, res.heave_abs, res.heave_scaled);
        accumulate(pitch_terms, res.pitch_abs, res.pitch_scaled);
    }
    return res;
}

double UnexcitedSpectrum::max_real() const {
    double r = -std::numeric_limits<double>::infinity();
    for (const auto& z : translational) r = std::max(r, z.real());
    for (const auto& z : rotational) r = std::max(r, z.real());
    return r;
}

std::array<std::complex<double>, 6> UnexcitedSpectrum::all() const {
    return {translational[0],
            translational[1],
            translational[2],
            rotational[0],
            rotational[1],
            rotational[2]};
}

UnexcitedSpectrum unexcited_spectrum(const PhysicalParams& params, const ControlGains& gains) {
    ExcitationParams still;
    still.A = 0.0;
    still.Omega = 1.0;
    const Matrix6 agg = to_aggregate(PeriodicMatrix(params, still, gains)(0.0), params.L);

    auto eig3 = [](const Eigen::Matrix3d& m) {
        Eigen::EigenSolver<Eigen::Matrix3d> es(m, false);
        std::array<std::complex<double>, 3> ev;
        for (int i = 0; i < 3; ++i) ev[i] = es.eigenvalues()[i];
        std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
            if (x.real() != y.real()) return x.real() > y.real();
            return x.imag() > y.imag();
        });
        return ev;
    };
    UnexcitedSpectrum s;
    s.translational = eig3(agg.topLeftCorner<3, 3>());
    s.rotational = eig3(agg.bottomRightCorner<3, 3>());
    return s;
}

StaticStability is_statically_stable(const PhysicalParams& params, const ControlGains& gains) {
    const double mr = unexcited_spectrum(params, gains).max_real();
    return {mr < 0.0, -mr};
}

Matrix6 numerical_jacobian(const PlantModel& model, double t, double step) {
    const PhysicalParams& p = model.params;
    const SteadyStateSample ss = steady_state(model, t);

    // per-support perturbation -> plant state
    auto to_plant = [&](const Vector6& x) {
        StateVector y;
        y[0] = p.z0 + 0.5 * (x[0] + x[3]);
        y[1] = 0.5 * (x[1] + x[4]);
        y[2] = (x[0] - x[3]) / p.L;
        y[3] = (x[1] - x[4]) / p.L;
        y[4] = ss.current[0] + x[2];
        y[5] = ss.current[1] + x[5];
        return y;
    };
    // plant derivative -> per-support perturbation derivative
    auto from_plant = [&](const StateVector& y, const StateVector& dy) {
        const double half_l = 0.5 * p.L;
        Vector6 dx;
        dx[0] = y[1] + y[3] * half_l;
        dx[1] = dy[1] + dy[3] * half_l;
        dx[2] = dy[4] - ss.current_rate[0];
        dx[3] = y[1] - y[3] * half_l;
        dx[4] = dy[1] - dy[3] * half_l;
        dx[5] = dy[5] - ss.current_rate[1];
        return dx;
    };
    auto f = [&](const Vector6& x) {
        const StateVector y = to_plant(x);
        return from_plant(y, rhs(model, t, y));
    };

    Matrix6 jac;
    for (int j = 0; j < 6; ++j) {
        Vector6 xp = Vector6::Zero();
        Vector6 xm = Vector6::Zero();
        xp[j] = step;
        xm[j] = -step;
        jac.col(j) = (f(xp) - f(xm)) / (2.0 * step);
    }
    return jac;
}

}  // namespace levstab
