#include "levstab/hill.hpp"

#include <Eigen/LU>
#include <cmath>
#include <numbers>

#include "levstab/error.hpp"

namespace levstab {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

double sqrt_cgm(const PhysicalParams& p) { return std::sqrt(p.C * p.g * p.m); }

Ellipse stamp(EllipseKind kind, const ExcitationParams& exc) {
    Ellipse e;
    e.kind = kind;
    e.A = exc.A;
    e.Omega = exc.Omega;
    e.theta = exc.theta;
    return e;
}

// Principal ellipses differ only in the denominators (24, 12, 2304) for a
// and (8, 4, 256) for b.
Ellipse principal(EllipseKind kind, double d_center, double d_kd, double d_axis,
                  const PhysicalParams& p, const ExcitationParams& exc) {
    const double sq = sqrt_cgm(p);
    const double w2 = exc.Omega * exc.Omega;
    Ellipse e = stamp(kind, exc);
    e.h1 = p.m * p.R * (d_center * p.g + p.z0 * w2) / (d_center * kSqrt2 * sq);
    e.h2 = p.C * p.m * w2 / (d_kd * kSqrt2 * sq);
    e.k2 = std::sqrt(exc.A * exc.A * p.m * p.R * p.R * w2 * (1.0 + std::cos(exc.theta)) /
                     (d_axis * p.C * p.g));
    e.k1 = exc.Omega / 2.0 * e.k2;
    return e;
}

// Combination ellipses; f = 2 - sqrt(3) for c and 2 + sqrt(3) for d.
Ellipse combination(EllipseKind kind, double f, const PhysicalParams& p,
                    const ExcitationParams& exc) {
    const double sq = sqrt_cgm(p);
    const double w2 = exc.Omega * exc.Omega;
    Ellipse e = stamp(kind, exc);
    e.h1 = p.m * p.R * (4.0 * p.g + f * p.z0 * w2) / (4.0 * kSqrt2 * sq);
    e.h2 = f * p.C * p.m * w2 / (2.0 * kSqrt2 * sq);
    e.k2 = std::sqrt(f * exc.A * exc.A * p.m * p.R * p.R * w2 * (1.0 - std::cos(exc.theta)) /
                     (128.0 * kSqrt3 * p.C * p.g));
    e.k1 = std::sqrt(kSqrt3 * f / 2.0) * exc.Omega * e.k2;
    return e;
}

}  // namespace

char to_char(EllipseKind kind) {
    switch (kind) {
        case EllipseKind::A: return 'a';
        case EllipseKind::B: return 'b';
        case EllipseKind::C: return 'c';
        case EllipseKind::D: return 'd';
    }
    return '?';
}

EllipseKind ellipse_kind_from_char(char c) {
    switch (c) {
        case 'a':
        case 'A': return EllipseKind::A;
        case 'b':
        case 'B': return EllipseKind::B;
        case 'c':
        case 'C': return EllipseKind::C;
        case 'd':
        case 'D': return EllipseKind::D;
        default: throw InvalidParameter(std::string("unknown ellipse kind '") + c + "'");
    }
}

double Ellipse::level(double Kp, double Kd) const {
    const double u = (Kp - h1) / k1;
    const double v = (Kd - h2) / k2;
    return u * u + v * v;
}

double h0_gain(const PhysicalParams& p) { return p.m * p.R * p.g / (kSqrt2 * sqrt_cgm(p)); }

StaticBoundaryLines static_boundary_lines(const PhysicalParams& p) {
    return {h0_gain(p), p.R * p.z0 / (2.0 * p.C)};
}

Ellipse principal_ellipse_a(const PhysicalParams& p, const ExcitationParams& exc) {
    return principal(EllipseKind::A, 24.0, 12.0, 2304.0, p, exc);
}

Ellipse principal_ellipse_b(const PhysicalParams& p, const ExcitationParams& exc) {
    return principal(EllipseKind::B, 8.0, 4.0, 256.0, p, exc);
}

Ellipse combination_ellipse_c(const PhysicalParams& p, const ExcitationParams& exc) {
    return combination(EllipseKind::C, 2.0 - kSqrt3, p, exc);
}

Ellipse combination_ellipse_d(const PhysicalParams& p, const ExcitationParams& exc) {
    return combination(EllipseKind::D, 2.0 + kSqrt3, p, exc);
}

Ellipse ellipse(EllipseKind kind, const PhysicalParams& p, const ExcitationParams& exc) {
    switch (kind) {
        case EllipseKind::A: return principal_ellipse_a(p, exc);
        case EllipseKind::B: return principal_ellipse_b(p, exc);
        case EllipseKind::C: return combination_ellipse_c(p, exc);
        case EllipseKind::D: return combination_ellipse_d(p, exc);
    }
    throw InvalidParameter("unknown ellipse kind");
}

std::array<Ellipse, 4> all_ellipses(const PhysicalParams& p, const ExcitationParams& exc) {
    return {principal_ellipse_a(p, exc),
            principal_ellipse_b(p, exc),
            combination_ellipse_c(p, exc),
            combination_ellipse_d(p, exc)};
}

double axis_ratio(EllipseKind kind) {
    switch (kind) {
        case EllipseKind::A:
        case EllipseKind::B: return 0.5;
        case EllipseKind::C: return std::sqrt(kSqrt3 * (2.0 - kSqrt3) / 2.0);
        case EllipseKind::D: return std::sqrt(kSqrt3 * (2.0 + kSqrt3) / 2.0);
    }
    return 0.0;
}

std::vector<GainPoint> ellipse_boundary(const Ellipse& e, int n) {
    if (n < 1) throw InvalidParameter("boundary sample count must be positive");
    std::vector<GainPoint> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double s = 2.0 * std::numbers::pi * i / n;
        pts.push_back({e.h1 + e.k1 * std::cos(s), e.h2 + e.k2 * std::sin(s)});
    }
    return pts;
}

CombinationFrequencies combination_frequencies(double Omega) {
    if (!(Omega > 0.0)) throw InvalidParameter("Omega must be positive");
    const double lo = std::sqrt((2.0 - kSqrt3) / 2.0) * Omega;
    const double hi = std::sqrt((2.0 + kSqrt3) / 2.0) * Omega;
    return {{lo, kSqrt3 * lo}, {hi, kSqrt3 * hi}};
}

RelativeSize relative_size(const Ellipse& e, const PhysicalParams& p) {
    const double width = e.h1 - h0_gain(p);
    if (width == 0.0) throw Error(ErrorKind::BadInput, "relative size undefined: h1 == h0");
    const bool principal_kind = e.kind == EllipseKind::A || e.kind == EllipseKind::B;
    const double c = std::cos(e.theta);
    RelativeSize r;
    r.geometric = e.k1 / width;
    r.printed = e.A * std::sqrt(principal_kind ? 1.0 + c : 1.0 - c) / (4.0 * kSqrt2 * p.z0);
    return r;
}

PrincipalHill hb_determinant_principal(const PhysicalParams& p, const ExcitationParams& exc,
                                       const ControlGains& k, EllipseKind kind) {
    const double sq = sqrt_cgm(p);
    const double L = p.L;
    const double A = exc.A;
    const double P = exc.P();
    const double Q = exc.Q();
    const double w = exc.Omega / 2.0;
    const double w2 = w * w;
    const double w3 = w2 * w;

    PrincipalHill h;
    if (kind == EllipseKind::A) {
        // rotational mode, phi = b0 cos(w t) + b1 sin(w t), heave zero
        const double J = p.J;
        const double R = p.R;
        h.matrix(0, 0) = -4.0 * k.Kp * L * L * sq + 2.0 * kSqrt2 * p.g * L * L * p.m * R -
                         kSqrt2 * A * J * R * w2 - kSqrt2 * J * P * R * w2 +
                         4.0 * kSqrt2 * J * R * p.z0 * w2;
        h.matrix(0, 1) =
            -4.0 * k.Kd * L * L * sq * w - kSqrt2 * J * Q * R * w2 + 8.0 * kSqrt2 * p.C * J * w3;
        h.matrix(1, 0) =
            4.0 * k.Kd * L * L * sq * w - kSqrt2 * J * Q * R * w2 - 8.0 * kSqrt2 * p.C * J * w3;
        h.matrix(1, 1) = -4.0 * k.Kp * L * L * sq + 2.0 * kSqrt2 * p.g * L * L * p.m * R +
                         kSqrt2 * A * J * R * w2 + kSqrt2 * J * P * R * w2 +
                         4.0 * kSqrt2 * J * R * p.z0 * w2;
    } else if (kind == EllipseKind::B) {
        // translational mode, heave = a0 cos(w t) + a1 sin(w t), pitch zero
        const double lmr = L * p.m * p.R;
        h.matrix(0, 0) = -8.0 * k.Kp * L * sq + 4.0 * kSqrt2 * p.g * lmr - A * lmr * w2 / kSqrt2 -
                         lmr * P * w2 / kSqrt2 + 2.0 * kSqrt2 * lmr * p.z0 * w2;
        h.matrix(0, 1) =
            -(8.0 * k.Kd * L * sq * w + lmr * Q * w2 / kSqrt2 - 4.0 * kSqrt2 * p.C * L * p.m * w3);
        h.matrix(1, 0) =
            8.0 * k.Kd * L * sq * w - lmr * Q * w2 / kSqrt2 - 4.0 * kSqrt2 * p.C * L * p.m * w3;
        h.matrix(1, 1) = -(8.0 * k.Kp * L * sq - 4.0 * kSqrt2 * p.g * lmr - A * lmr * w2 / kSqrt2 -
                           lmr * P * w2 / kSqrt2 - 2.0 * kSqrt2 * lmr * p.z0 * w2);
    } else {
        throw InvalidParameter("principal harmonic balance needs ellipse kind a or b");
    }
    h.determinant = h.matrix.determinant();
    return h;
}

CombinationHill hill_determinant_combination(const PhysicalParams& p, const ExcitationParams& exc,
                                             const ControlGains& k, CombinationPair pair) {
    const CombinationFrequencies cf = combination_frequencies(exc.Omega);
    const double w = pair == CombinationPair::Sum ? cf.sum.omega1 : cf.difference.omega1;
    const double w2 = w * w;
    const double w3 = w2 * w;
    const double sq = sqrt_cgm(p);
    const double L = p.L;
    const double m = p.m;
    const double R = p.R;
    const double A = exc.A;
    const double P = exc.P();
    const double Q = exc.Q();

    CombinationHill h;
    h.M1 = 2.0 * L * (-4.0 * k.Kp * sq + kSqrt2 * m * R * (2.0 * p.g + p.z0 * w2));
    h.M2 = 8.0 * k.Kd * L * sq * w - 4.0 * kSqrt2 * p.C * L * m * w3;
    h.M3 = 8.0 * kSqrt3 * k.Kd * L * sq * w - 4.0 * std::sqrt(6.0) * p.C * L * m * w3;
    h.L1 = L * L * m * (-A + P) * R * w2 / (2.0 * kSqrt2);
    h.L2 = L * L * m * Q * R * w2 / (2.0 * kSqrt2);
    h.L3 = kSqrt2 * m * (-A + P) * R * w2;
    h.L4 = kSqrt2 * m * Q * R * w2;

    h.matrix << h.M1, -h.M2, h.L1, h.L2, h.M2, h.M1, h.L2, -h.L1, h.L3, h.L4, h.M1, -h.M3, h.L4,
        -h.L3, h.M3, h.M1;
    h.determinant = h.matrix.determinant();
    h.ellipse_residual = h.M1 * h.M1 + h.M2 * h.M3 -
                         std::sqrt((h.L1 * h.L1 + h.L2 * h.L2) * (h.L3 * h.L3 + h.L4 * h.L4));
    return h;
}

const char* to_string(ChartCurve c) {
    switch (c) {
        case ChartCurve::Omega1: return "omega1";
        case ChartCurve::Omega2: return "omega2";
        case ChartCurve::Sum: return "omega1+omega2";
        case ChartCurve::Difference: return "omega2-omega1";
    }
    return "?";
}

const char* to_string(ChartLevel l) { return l == ChartLevel::Omega ? "Omega" : "Omega/2"; }

ResonanceChart resonance_chart(const PhysicalParams& p, double Omega, double kd_lo, double kd_hi,
                               int n) {
    if (n < 2) throw InvalidParameter("resonance chart needs n >= 2");
    if (!(Omega > 0.0)) throw InvalidParameter("Omega must be positive");
    ResonanceChart chart;
    chart.Omega = Omega;
    const bool empty = !(kd_hi > kd_lo);

    if (!empty) {
        chart.samples.reserve(n);
        for (int i = 0; i < n; ++i) {
            const double kd = kd_lo + (kd_hi - kd_lo) * i / (n - 1);
            const NaturalFrequencies nf = natural_frequencies(p, std::max(kd, 0.0));
            chart.samples.push_back(
                {kd, nf.omega1, nf.omega2, nf.omega1 + nf.omega2, nf.omega2 - nf.omega1});
        }
    }

    // each curve is (factor) * omega1, so the crossing is at omega1 = level / factor
    struct Curve {
        ChartCurve curve;
        double factor;
    };
    const std::array<Curve, 4> curves = {Curve{ChartCurve::Omega1, 1.0},
                                         Curve{ChartCurve::Omega2, kSqrt3},
                                         Curve{ChartCurve::Sum, 1.0 + kSqrt3},
                                         Curve{ChartCurve::Difference, kSqrt3 - 1.0}};
    std::size_t idx = 0;
    for (const Curve& s : curves) {
        for (ChartLevel level : {ChartLevel::HalfOmega, ChartLevel::Omega}) {
            ChartIntersection x;
            x.curve = s.curve;
            x.level = level;
            const double target = level == ChartLevel::Omega ? Omega : Omega / 2.0;
            x.Kd = kd_for_translational_frequency(p, target / s.factor);
            x.in_range = !empty && x.Kd >= kd_lo && x.Kd <= kd_hi;
            if (level == ChartLevel::HalfOmega && s.curve == ChartCurve::Omega2) x.ellipse = 'a';
            if (level == ChartLevel::HalfOmega && s.curve == ChartCurve::Omega1) x.ellipse = 'b';
            if (level == ChartLevel::Omega && s.curve == ChartCurve::Sum) x.ellipse = 'c';
            if (level == ChartLevel::Omega && s.curve == ChartCurve::Difference) x.ellipse = 'd';
            x.observed = x.ellipse != '\0';
            chart.intersections[idx++] = x;
        }
    }
    return chart;
}

}  // namespace levstab
