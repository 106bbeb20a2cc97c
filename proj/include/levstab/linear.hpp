#pragma once

// Linearization of the plant about its periodic steady state.
//
// Per-support state ordering used everywhere in this module:
//   x = (gap perturbation 1, its rate, current perturbation 1,
//        gap perturbation 2, its rate, current perturbation 2)

#include <Eigen/Core>
#include <array>
#include <complex>
#include <vector>

#include "levstab/model.hpp"
#include "levstab/plant.hpp"

namespace levstab {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

/// Perturbation about the steady state, stored per support. The heave and
/// pitch aggregates are computed on demand.
struct PerturbationState {
    double d1 = 0.0, v1 = 0.0, i1 = 0.0;
    double d2 = 0.0, v2 = 0.0, i2 = 0.0;

    [[nodiscard]] Vector6 as_vector() const;
    static PerturbationState from_vector(const Vector6& x);

    /// (d1 + d2) / 2
    [[nodiscard]] double heave() const { return 0.5 * (d1 + d2); }
    /// (d1 - d2) / L
    [[nodiscard]] double pitch(double L) const { return (d1 - d2) / L; }
};

/// t -> A(t) for x' = A(t) x, periodic with T = 2 pi / Omega.
class PeriodicMatrix {
public:
    PeriodicMatrix(const PhysicalParams& params, const ExcitationParams& exc,
                   const ControlGains& gains);
    /// Linearization of the hybrid plant about its own steady state. The
    /// result does not depend on gamma.
    PeriodicMatrix(const PhysicalParams& params, const ExcitationParams& exc,
                   const ControlGains& gains, const HybridParams& hyb);

    [[nodiscard]] Matrix6 operator()(double t) const;
    /// dA/dt by a fourth-order central difference.
    [[nodiscard]] Matrix6 derivative(double t) const;
    [[nodiscard]] double period() const { return exc_.period(); }

    [[nodiscard]] const PhysicalParams& params() const { return params_; }
    [[nodiscard]] const ExcitationParams& excitation() const { return exc_; }
    [[nodiscard]] const ControlGains& gains() const { return gains_; }

private:
    PhysicalParams params_;
    ExcitationParams exc_;
    ControlGains gains_;
    double beta_ = 0.0;
};

PeriodicMatrix periodic_matrix(const PhysicalParams& params, const ExcitationParams& exc,
                               const ControlGains& gains);

/// Similarity transform from per-support to aggregate coordinates
/// (heave, heave rate, mean current, pitch, pitch rate, half current difference).
Matrix6 aggregate_transform(double L);

/// A(t) expressed in aggregate coordinates; the upper-left 3x3 block is the
/// translational subsystem and the lower-right the rotational one.
Matrix6 to_aggregate(const Matrix6& a, double L);

struct LinearSample {
    double t = 0.0;
    Vector6 x = Vector6::Zero();
};

struct ReducedResidual {
    double heave_abs = 0.0;     ///< max |residual| of the heave equation
    double pitch_abs = 0.0;     ///< max |residual| of the pitch equation
    double heave_scaled = 0.0;  ///< max |residual| / max |term| of the heave equation
    double pitch_scaled = 0.0;
    [[nodiscard]] double max_scaled() const { return std::max(heave_scaled, pitch_scaled); }
};

/// Evaluates the third-order heave and pitch equations obtained by eliminating
/// the current perturbations, along samples of a linearized trajectory.
/// Higher derivatives come from x' = A x and x'' = (A' + A^2) x.
ReducedResidual reduced_residual(const std::vector<LinearSample>& traj,
                                 const PhysicalParams& params, const ExcitationParams& exc,
                                 const ControlGains& gains);

/// Integrates x' = A(t) x and returns samples at the given times (t = 0 first).
std::vector<LinearSample> integrate_linear(const PeriodicMatrix& a, const Vector6& x0,
                                           const std::vector<double>& times, double rtol = 1e-10,
                                           double atol = 1e-12);

struct UnexcitedSpectrum {
    std::array<std::complex<double>, 3> translational;
    std::array<std::complex<double>, 3> rotational;

    [[nodiscard]] double max_real() const;
    [[nodiscard]] std::array<std::complex<double>, 6> all() const;
};

/// Eigenvalues of the constant system with zero excitation amplitude, split
/// into the two decoupled subsystems and sorted by descending real part.
UnexcitedSpectrum unexcited_spectrum(const PhysicalParams& params, const ControlGains& gains);

struct StaticStability {
    bool stable = false;
    double margin = 0.0;  ///< -max real part
};

StaticStability is_statically_stable(const PhysicalParams& params, const ControlGains& gains);

/// Central-difference Jacobian of the nonlinear plant (standard or hybrid,
/// per model.mode) along its steady state, in per-support coordinates.
/// Independent of PeriodicMatrix.
Matrix6 numerical_jacobian(const PlantModel& model, double t, double step = 1e-7);

}  // namespace levstab
