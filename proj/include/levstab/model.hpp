#pragma once

// Parameter types for the two-magnet suspended vehicle and the quantities that
// follow directly from them.
//
// Sign convention throughout: z points down from the track, so the airgap at a
// support is (support position) - (track displacement) and gravity enters +mg.
// SI units everywhere.

#include <numbers>
#include <optional>
#include <string_view>
#include <utility>

namespace levstab {

/// Vehicle and electromagnet constants.
struct PhysicalParams {
    double m = 0.0;   ///< mass (kg)
    double J = 0.0;   ///< rotational inertia about the centre of mass (kg m^2)
    double L = 0.0;   ///< electromagnet spacing (m)
    double C = 0.0;   ///< electromagnetic constant (N m^2 / A^2)
    double R = 0.0;   ///< coil resistance (Ohm)
    double g = 9.81;  ///< gravitational acceleration (m/s^2)
    double z0 = 0.0;  ///< nominal steady-state gap (m)
    bool inertia_defaulted = false;

    /// Builds a parameter set whose inertia is the uniform-bar value m L^2 / 12.
    static PhysicalParams with_default_inertia(double m, double L, double C, double R, double g,
                                               double z0);

    /// sqrt(m g / 2C): steady-state current per metre of gap (A/m).
    [[nodiscard]] double current_per_gap() const;

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

/// Where a base excitation came from when it was specified kinematically.
struct KinematicOrigin {
    double v = 0.0;  ///< vehicle speed (m/s)
    double d = 0.0;  ///< surface wavelength (m)
    friend bool operator==(const KinematicOrigin&, const KinematicOrigin&) = default;
};

/// Harmonic support motion w1 = A cos(Omega t), w2 = A cos(Omega t - theta).
struct ExcitationParams {
    double A = 0.0;      ///< amplitude (m)
    double Omega = 0.0;  ///< angular frequency (rad/s)
    double theta = 0.0;  ///< phase lag of support 2, kept in [0, 2 pi)
    std::optional<KinematicOrigin> origin;

    [[nodiscard]] double period() const { return 2.0 * std::numbers::pi / Omega; }
    /// P = A cos(theta)
    [[nodiscard]] double P() const;
    /// Q = A sin(theta)
    [[nodiscard]] double Q() const;

    friend bool operator==(const ExcitationParams&, const ExcitationParams&) = default;
};

/// PD gains on the airgap error. Any finite value is admissible.
struct ControlGains {
    double Kp = 0.0;  ///< V/m
    double Kd = 0.0;  ///< V s/m
    friend bool operator==(const ControlGains&, const ControlGains&) = default;
};

/// Permanent-magnet offsets of the hybrid magnet model.
struct HybridParams {
    double beta = 0.0;   ///< gap offset (m)
    double gamma = 0.0;  ///< current offset (A)
    friend bool operator==(const HybridParams&, const HybridParams&) = default;
};

struct NaturalFrequencies {
    double omega1 = 0.0;  ///< translational (rad/s)
    double omega2 = 0.0;  ///< rotational (rad/s)
};

/// Wraps an angle into [0, 2 pi).
double normalize_angle(double theta);

/// Throws InvalidParameter naming the first violated invariant.
void validate(const PhysicalParams& params);
void validate(const PhysicalParams& params, const ExcitationParams& exc);
void validate(const PhysicalParams& params, const HybridParams& hyb);
void validate(const ControlGains& gains);

/// Checks both parameter sets and hands them back unchanged.
std::pair<PhysicalParams, ExcitationParams> validated(const PhysicalParams& params,
                                                      const ExcitationParams& exc);

/// m L^2 / 12, the inertia of a uniform bar of length L.
double default_inertia(double m, double L);

/// Natural frequencies on the oscillatory (Hopf) boundary of the unexcited
/// system: omega1 = sqrt(Kd) (2g/(mC))^(1/4), omega2 = sqrt(3) omega1.
/// Depends on Kd, g, m, C only.
NaturalFrequencies natural_frequencies(const PhysicalParams& params, double Kd);

/// Inverse of the translational branch: the Kd at which omega1 == omega.
double kd_for_translational_frequency(const PhysicalParams& params, double omega);

/// Excitation from vehicle speed and surface wavelength, using
/// Omega = 2 pi v / L and theta = 2 pi d / L. See kKinematicAdvisory.
ExcitationParams kinematic_excitation(double v, double d, double L, double A);

inline constexpr std::string_view kKinematicAdvisory =
    "kinematic excitation uses Omega = 2*pi*v/L and theta = 2*pi*d/L; dimensional "
    "analysis suggests Omega = 2*pi*v/d and theta = 2*pi*L/d may be intended. "
    "Specify Omega and theta directly to avoid the ambiguity.";

/// Reference configuration: m = 7650 kg, C = 0.05, R = 9.71, z0 = 0.015,
/// g = 9.81, L = 3 with J = m L^2 / 12.
PhysicalParams baseline_params();
/// A = 0.005 m, Omega = 80 rad/s, the given theta.
ExcitationParams baseline_excitation(double theta = 0.0);

}  // namespace levstab
