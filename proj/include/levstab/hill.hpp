#pragma once

// Closed-form stability boundaries in the (Kp, Kd) gain plane: the static
// divergence and Hopf lines of the unexcited system, and the four
// parametric-resonance ellipses obtained from first-order harmonic balance.

#include <Eigen/Core>
#include <array>
#include <string>
#include <vector>

#include "levstab/model.hpp"

namespace levstab {

/// a: principal, rotational (omega2 = Omega/2)
/// b: principal, translational (omega1 = Omega/2)
/// c: combination, omega1 + omega2 = Omega
/// d: combination, omega2 - omega1 = Omega
enum class EllipseKind { A, B, C, D };

inline constexpr std::array<EllipseKind, 4> kAllEllipseKinds = {
    EllipseKind::A, EllipseKind::B, EllipseKind::C, EllipseKind::D};

char to_char(EllipseKind kind);
EllipseKind ellipse_kind_from_char(char c);

struct Ellipse {
    EllipseKind kind = EllipseKind::A;
    double h1 = 0.0;  ///< centre Kp (V/m)
    double h2 = 0.0;  ///< centre Kd (V s/m)
    double k1 = 0.0;  ///< semi-axis along Kp (V/m)
    double k2 = 0.0;  ///< semi-axis along Kd (V s/m)
    /// excitation the ellipse was built for
    double A = 0.0;
    double Omega = 0.0;
    double theta = 0.0;

    [[nodiscard]] bool degenerate() const { return k1 == 0.0 && k2 == 0.0; }
    /// (Kp - h1)^2 / k1^2 + (Kd - h2)^2 / k2^2; < 1 inside.
    [[nodiscard]] double level(double Kp, double Kd) const;
};

struct GainPoint {
    double Kp = 0.0;
    double Kd = 0.0;
};

/// mRg / (sqrt(2) sqrt(Cgm)): the divergence boundary Kp.
double h0_gain(const PhysicalParams& params);

struct StaticBoundaryLines {
    double vertical_kp = 0.0;  ///< divergence line Kp = h0
    double slope = 0.0;        ///< R z0 / (2C)
    /// Hopf line Kp = h0 + slope * Kd
    [[nodiscard]] double inclined_kp(double Kd) const { return vertical_kp + slope * Kd; }
};

StaticBoundaryLines static_boundary_lines(const PhysicalParams& params);

Ellipse principal_ellipse_a(const PhysicalParams& params, const ExcitationParams& exc);
Ellipse principal_ellipse_b(const PhysicalParams& params, const ExcitationParams& exc);
Ellipse combination_ellipse_c(const PhysicalParams& params, const ExcitationParams& exc);
Ellipse combination_ellipse_d(const PhysicalParams& params, const ExcitationParams& exc);
Ellipse ellipse(EllipseKind kind, const PhysicalParams& params, const ExcitationParams& exc);
std::array<Ellipse, 4> all_ellipses(const PhysicalParams& params, const ExcitationParams& exc);

/// k1 = ratio * Omega * k2 for the given kind.
double axis_ratio(EllipseKind kind);

/// Points (h1 + k1 cos s, h2 + k2 sin s) for s = 2 pi i / n.
std::vector<GainPoint> ellipse_boundary(const Ellipse& e, int n = 64);

enum class CombinationPair { Sum, Difference };

struct FrequencyPair {
    double omega1 = 0.0;
    double omega2 = 0.0;
};

struct CombinationFrequencies {
    FrequencyPair sum;         ///< omega1 + omega2 = Omega
    FrequencyPair difference;  ///< omega2 - omega1 = Omega
};

CombinationFrequencies combination_frequencies(double Omega);

struct RelativeSize {
    double geometric = 0.0;  ///< k1 / (h1 - h0) from the ellipse fields
    double printed = 0.0;    ///< A sqrt(1 +- cos theta) / (4 sqrt(2) z0)
};

/// Both measures of ellipse size relative to the local width of the stable
/// band. They differ by exactly a factor 2; the geometric one agrees with the
/// Floquet boundaries. Throws when h1 == h0.
RelativeSize relative_size(const Ellipse& e, const PhysicalParams& params);

/// 2x2 harmonic-balance coefficient matrix of a principal resonance and its
/// determinant. The determinant is negative inside the ellipse, zero on it.
struct PrincipalHill {
    Eigen::Matrix2d matrix;
    double determinant = 0.0;
};

/// kind must be A or B.
PrincipalHill hb_determinant_principal(const PhysicalParams& params, const ExcitationParams& exc,
                                       const ControlGains& gains, EllipseKind kind);

struct CombinationHill {
    double M1 = 0.0, M2 = 0.0, M3 = 0.0;
    double L1 = 0.0, L2 = 0.0, L3 = 0.0, L4 = 0.0;
    Eigen::Matrix4d matrix;
    double determinant = 0.0;
    /// M1^2 + M2 M3 - sqrt((L1^2 + L2^2)(L3^2 + L4^2)); negative inside.
    double ellipse_residual = 0.0;
};

CombinationHill hill_determinant_combination(const PhysicalParams& params,
                                             const ExcitationParams& exc, const ControlGains& gains,
                                             CombinationPair pair);

enum class ChartCurve { Omega1, Omega2, Sum, Difference };
enum class ChartLevel { Omega, HalfOmega };

const char* to_string(ChartCurve c);
const char* to_string(ChartLevel l);

struct ChartSample {
    double Kd = 0.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double sum = 0.0;
    double difference = 0.0;
};

struct ChartIntersection {
    ChartCurve curve = ChartCurve::Omega1;
    ChartLevel level = ChartLevel::Omega;
    double Kd = 0.0;
    bool in_range = false;
    /// one of the four resonances that produce an ellipse
    bool observed = false;
    /// the ellipse it produces, when observed
    char ellipse = '\0';
};

struct ResonanceChart {
    double Omega = 0.0;
    std::vector<ChartSample> samples;
    std::array<ChartIntersection, 8> intersections;
};

/// Samples the natural-frequency curves over [kd_lo, kd_hi] and intersects
/// each with Omega and Omega/2 in closed form. An empty range gives no
/// samples and no in-range intersections.
ResonanceChart resonance_chart(const PhysicalParams& params, double Omega, double kd_lo,
                               double kd_hi, int n);

}  // namespace levstab
