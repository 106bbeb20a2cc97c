#include "levstab/model.hpp"

#include <cmath>
#include <string>

#include "levstab/error.hpp"

namespace levstab {

namespace {

void require_positive(double value, const char* name) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw InvalidParameter(std::string(name) + " must be positive");
    }
}

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw InvalidParameter(std::string(name) + " must be finite");
    }
}

}  // namespace

PhysicalParams PhysicalParams::with_default_inertia(double m, double L, double C, double R,
                                                    double g, double z0) {
    PhysicalParams p;
    p.m = m;
    p.L = L;
    p.C = C;
    p.R = R;
    p.g = g;
    p.z0 = z0;
    p.J = default_inertia(m, L);
    p.inertia_defaulted = true;
    return p;
}

double PhysicalParams::current_per_gap() const { return std::sqrt(m * g / (2.0 * C)); }

double ExcitationParams::P() const { return A * std::cos(theta); }
double ExcitationParams::Q() const { return A * std::sin(theta); }

double normalize_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(theta, two_pi);
    if (r < 0.0) r += two_pi;
    // fmod of a value just below a multiple of 2 pi can round up to 2 pi
    if (r >= two_pi) r = 0.0;
    return r;
}

void validate(const PhysicalParams& p) {
    require_positive(p.m, "m");
    require_positive(p.J, "J");
    require_positive(p.L, "L");
    require_positive(p.C, "C");
    require_positive(p.R, "R");
    require_positive(p.g, "g");
    require_positive(p.z0, "z0");
    if (p.inertia_defaulted && p.J != default_inertia(p.m, p.L)) {
        throw InvalidParameter("J was defaulted but differs from m*L^2/12");
    }
}

void validate(const PhysicalParams& p, const ExcitationParams& e) {
    validate(p);
    require_finite(e.A, "A");
    if (e.A < 0.0) throw InvalidParameter("A must be non-negative");
    if (e.A >= p.z0) throw InvalidParameter("A >= z0: steady-state gap closes");
    require_positive(e.Omega, "Omega");
    require_finite(e.theta, "theta");
    if (e.theta < 0.0 || e.theta >= 2.0 * std::numbers::pi) {
        throw InvalidParameter("theta must be normalized to [0, 2*pi)");
    }
}

void validate(const PhysicalParams& p, const HybridParams& h) {
    require_finite(h.beta, "beta");
    require_finite(h.gamma, "gamma");
    if (h.beta < 0.0) throw InvalidParameter("beta must be non-negative");
    if (!(p.z0 + h.beta > 0.0)) throw InvalidParameter("z0 + beta must be positive");
}

void validate(const ControlGains& k) {
    require_finite(k.Kp, "Kp");
    require_finite(k.Kd, "Kd");
}

std::pair<PhysicalParams, ExcitationParams> validated(const PhysicalParams& params,
                                                      const ExcitationParams& exc) {
    validate(params, exc);
    return {params, exc};
}

double default_inertia(double m, double L) { return m * L * L / 12.0; }

NaturalFrequencies natural_frequencies(const PhysicalParams& p, double Kd) {
    if (Kd < 0.0) throw InvalidParameter("Kd must be non-negative for natural frequencies");
    const double omega1 = std::sqrt(Kd) * std::pow(2.0 * p.g / (p.m * p.C), 0.25);
    return {omega1, std::numbers::sqrt3 * omega1};
}

double kd_for_translational_frequency(const PhysicalParams& p, double omega) {
    // omega^2 = Kd sqrt(2g/(mC))
    return omega * omega / std::sqrt(2.0 * p.g / (p.m * p.C));
}

ExcitationParams kinematic_excitation(double v, double d, double L, double A) {
    require_positive(v, "v");
    require_positive(d, "d");
    require_positive(L, "L");
    ExcitationParams e;
    e.A = A;
    e.Omega = 2.0 * std::numbers::pi * v / L;
    e.theta = normalize_angle(2.0 * std::numbers::pi * d / L);
    e.origin = KinematicOrigin{v, d};
    return e;
}

PhysicalParams baseline_params() {
    return PhysicalParams::with_default_inertia(7650.0, 3.0, 0.05, 9.71, 9.81, 0.015);
}

ExcitationParams baseline_excitation(double theta) {
    ExcitationParams e;
    e.A = 0.005;
    e.Omega = 80.0;
    e.theta = normalize_angle(theta);
    return e;
}

}  // namespace levstab
