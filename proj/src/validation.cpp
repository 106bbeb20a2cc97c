#include "levstab/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "levstab/error.hpp"
#include "levstab/linear.hpp"
#include "levstab/plant.hpp"

namespace levstab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSqrt3 = std::numbers::sqrt3;

double rel(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

ExcitationParams with_theta(const ExcitationParams& exc, double theta) {
    ExcitationParams e;
    e.A = exc.A;
    e.Omega = exc.Omega;
    e.theta = normalize_angle(theta);
    return e;
}

// Oracles written out independently of the library's closed forms.
double oracle_h0(const PhysicalParams& p) {
    return p.m * p.R * p.g / (kSqrt2 * std::sqrt(p.C * p.g * p.m));
}
double oracle_slope(const PhysicalParams& p) { return p.R * p.z0 / (2.0 * p.C); }
/// Kd at which the translational natural frequency equals omega.
double oracle_kd(const PhysicalParams& p, double omega) {
    return omega * omega * std::sqrt(p.m * p.C / (2.0 * p.g));
}

/// Random parameter set in a broad band around the reference vehicle.
struct Sampler {
    std::mt19937_64 rng;
    explicit Sampler(std::uint64_t seed) : rng(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng); }
    PhysicalParams params() {
        return PhysicalParams::with_default_inertia(uniform(500.0, 30000.0),
                                                    uniform(1.0, 12.0),
                                                    uniform(0.01, 0.2),
                                                    uniform(1.0, 20.0),
                                                    uniform(9.0, 10.5),
                                                    uniform(0.005, 0.03));
    }
    ExcitationParams excitation(const PhysicalParams& p) {
        ExcitationParams e;
        e.A = uniform(0.05, 0.9) * p.z0;
        e.Omega = uniform(10.0, 400.0);
        e.theta = uniform(0.0, 2.0 * kPi);
        return e;
    }
};

/// Stable gain point below every resonance: Kd = h2,a / 2, halfway between
/// the divergence and Hopf lines.
ControlGains quiet_gains(const PhysicalParams& p, const ExcitationParams& exc) {
    const double kd = 0.5 * oracle_kd(p, exc.Omega / (2.0 * kSqrt3));
    return {oracle_h0(p) + 0.5 * oracle_slope(p) * kd, kd};
}

/// Map region holding ellipses a and c at theta = pi/2 and both static lines.
std::pair<GridAxis, GridAxis> map_region(const PhysicalParams& p, const ExcitationParams& exc,
                                         int n) {
    const ExcitationParams e = with_theta(exc, kPi / 2.0);
    const Ellipse c = combination_ellipse_c(p, e);
    const double h0 = oracle_h0(p);
    return {GridAxis{0.9 * h0, c.h1 + 3.0 * std::max(c.k1, 0.05 * (c.h1 - h0)), n},
            GridAxis{0.0, 1.5 * c.h2, n}};
}

const std::array<const char*, kCriterionCount> kNames = {
    "natural-frequency ratio omega2/omega1 = sqrt(3)",
    "ellipse centres equal the resonance Kd of the natural-frequency law",
    "centres on the inclined line; line matches the Hopf boundary",
    "axis ratios k1,b/k1,a = 3 and k1,d/k1,c = 7 + 4 sqrt(3)",
    "k1/(h1 - h0) independent of Omega",
    "exact zero axes: c, d at theta = 0; a, b at theta = pi",
    "Floquet instability intervals match the ellipses",
    "nonlinear integration from the steady state stays on it",
    "hybrid plant equals the shifted standard plant",
    "analytic linearization equals the numerical Jacobian",
    "stability map independent of L with J = m L^2 / 12",
    "geometric / printed relative size = 2",
    "dominant multiplier type at the ellipse centres",
};

CriterionResult start(int id) {
    CriterionResult r;
    r.id = id;
    r.name = kNames[id - 1];
    return r;
}

struct Battery {
    const PhysicalParams& p;
    const ExcitationParams& exc;
    const ValidationOptions& opts;

    Ellipse ell(EllipseKind k, const PhysicalParams& params, const ExcitationParams& e) const {
        return opts.ellipses ? opts.ellipses(k, params, e) : ellipse(k, params, e);
    }

    CriterionResult frequency_ratio() const {
        CriterionResult r = start(1);
        Sampler s(opts.seed);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const PhysicalParams q = i == 0 ? p : s.params();
            const double kd = s.uniform(1.0, 1e5);
            const NaturalFrequencies nf = natural_frequencies(q, kd);
            worst = std::max(worst, rel(nf.omega2 / nf.omega1, kSqrt3));
        }
        r.measured = worst;
        r.tolerance = 1e-12;
        r.detail = "max relative deviation over 100 draws";
        return r;
    }

    CriterionResult centres() const {
        CriterionResult r = start(2);
        const double W = exc.Omega;
        const std::array<double, 4> omega1 = {
            W / (2.0 * kSqrt3), W / 2.0, W / (1.0 + kSqrt3), W / (kSqrt3 - 1.0)};
        const ExcitationParams e = with_theta(exc, kPi / 2.0);
        double worst = 0.0;
        std::string detail;
        for (std::size_t i = 0; i < 4; ++i) {
            const Ellipse el = ell(kAllEllipseKinds[i], p, e);
            const double oracle = oracle_kd(p, omega1[i]);
            worst = std::max(worst, rel(el.h2, oracle));
            detail += std::string(i ? ", " : "") + "h2," + to_char(el.kind) + "=" + fmt(el.h2);
        }
        r.measured = worst;
        r.tolerance = 1e-9;
        r.detail = detail;
        return r;
    }

    CriterionResult centre_line() const {
        CriterionResult r = start(3);
        Sampler s(opts.seed + 3);
        double worst_identity = 0.0;
        for (int i = 0; i < 50; ++i) {
            const PhysicalParams q = i == 0 ? p : s.params();
            const ExcitationParams e = i == 0 ? with_theta(exc, kPi / 2.0) : s.excitation(q);
            for (EllipseKind k : kAllEllipseKinds) {
                const Ellipse el = ell(k, q, e);
                worst_identity =
                    std::max(worst_identity, rel(oracle_h0(q) + oracle_slope(q) * el.h2, el.h1));
            }
        }
        // Bisect the sign change of the largest real part in Kp at fixed Kd.
        const double h0 = oracle_h0(p);
        const double slope = oracle_slope(p);
        double worst_hopf = 0.0;
        for (double kd : {250.0, 1000.0, 2500.0, 6000.0, 15000.0}) {
            double lo = h0 + 0.5 * slope * kd;
            double hi = h0 + 2.0 * slope * kd;
            for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (unexcited_spectrum(p, {mid, kd}).max_real() < 0.0 ? lo : hi) = mid;
            }
            worst_hopf = std::max(worst_hopf, rel(0.5 * (lo + hi), h0 + slope * kd));
        }
        const bool ok = worst_identity <= 1e-12 && worst_hopf <= 1e-6;
        r.status = ok ? CriterionStatus::Pass : CriterionStatus::Fail;
        r.measured = std::max(worst_identity / 1e-12, worst_hopf / 1e-6);
        r.tolerance = 1.0;
        r.detail = "worst deviation as a fraction of its tolerance; identity deviation " +
                   fmt(worst_identity) + " (tol 1e-12, 50 sets); Hopf bisection deviation " +
                   fmt(worst_hopf) + " (tol 1e-6, 5 probes)";
        return r;
    }

    CriterionResult axis_ratios() const {
        CriterionResult r = start(4);
        Sampler s(opts.seed + 4);
        double worst = 0.0;
        int checked = 0;
        for (int i = 0; i < 50; ++i) {
            const PhysicalParams q = i == 0 ? p : s.params();
            ExcitationParams e = i == 0 ? with_theta(exc, kPi / 2.0) : s.excitation(q);
            if (i == 0) e.A = exc.A;
            const Ellipse a = ell(EllipseKind::A, q, e), b = ell(EllipseKind::B, q, e);
            const Ellipse c = ell(EllipseKind::C, q, e), d = ell(EllipseKind::D, q, e);
            if (a.k1 > 0.0 && b.k1 > 0.0) {
                worst = std::max(worst, rel(b.k1 / a.k1, 3.0));
                ++checked;
            }
            if (c.k1 > 0.0 && d.k1 > 0.0) {
                worst = std::max(worst, rel(d.k1 / c.k1, 7.0 + 4.0 * kSqrt3));
                ++checked;
            }
        }
        r.measured = worst;
        r.tolerance = 1e-12;
        r.detail = std::to_string(checked) + " ratios checked";
        return r;
    }

    CriterionResult eta_frequency() const {
        CriterionResult r = start(5);
        double worst = 0.0;
        const double h0 = oracle_h0(p);
        std::string detail;
        for (EllipseKind k : kAllEllipseKinds) {
            std::array<double, 3> eta{};
            const std::array<double, 3> omegas = {20.0, 80.0, 320.0};
            for (std::size_t i = 0; i < 3; ++i) {
                ExcitationParams e = with_theta(exc, kPi / 2.0);
                e.Omega = omegas[i];
                const Ellipse el = ell(k, p, e);
                eta[i] = el.k1 / (el.h1 - h0);
            }
            worst = std::max({worst, rel(eta[0], eta[1]), rel(eta[2], eta[1])});
            detail +=
                std::string(detail.empty() ? "" : ", ") + "eta_" + to_char(k) + "=" + fmt(eta[1]);
        }
        r.measured = worst;
        r.tolerance = 1e-12;
        r.detail = detail + " (theta = pi/2)";
        return r;
    }

    CriterionResult degeneracy() const {
        CriterionResult r = start(6);
        const ExcitationParams e0 = with_theta(exc, 0.0);
        const ExcitationParams epi = with_theta(exc, kPi);
        const std::array<double, 4> zeros = {ell(EllipseKind::C, p, e0).k1,
                                             ell(EllipseKind::D, p, e0).k1,
                                             ell(EllipseKind::A, p, epi).k1,
                                             ell(EllipseKind::B, p, epi).k1};
        double worst = 0.0;
        for (double z : zeros) worst = std::max(worst, std::abs(z));
        r.measured = worst;
        r.tolerance = 0.0;
        r.status = worst == 0.0 ? CriterionStatus::Pass : CriterionStatus::Fail;
        r.detail = "max |k1| over the four degenerate cases";
        return r;
    }

    CriterionResult floquet_boundaries(std::optional<double>& factor_out) const {
        CriterionResult r = start(7);
        const auto start = std::chrono::steady_clock::now();
        PlantModel model;
        model.params = p;

        struct Job {
            double theta;
            EllipseKind kind;
        };
        const std::vector<Job> jobs = {{0.0, EllipseKind::A},
                                       {0.0, EllipseKind::B},
                                       {kPi / 2, EllipseKind::A},
                                       {kPi / 2, EllipseKind::B},
                                       {kPi / 2, EllipseKind::C},
                                       {kPi / 2, EllipseKind::D},
                                       {kPi, EllipseKind::C},
                                       {kPi, EllipseKind::D}};
        double worst_centre = 0.0;
        std::vector<double> factors;
        std::string detail;
        for (const Job& job : jobs) {
            model.exc = with_theta(exc, job.theta);
            const Ellipse el = ell(job.kind, p, model.exc);
            ScanLine scan{{el.h1 - 3.0 * el.k1, el.h2},
                          {el.h1 + 3.0 * el.k1, el.h2},
                          41,
                          opts.scan_tolerance};
            const std::vector<BoundaryCrossing> xs = boundary_crossings(model, scan, opts.floquet);
            std::ostringstream os;
            os.precision(5);
            os << to_char(job.kind) << "@theta=" << job.theta << ": ";
            if (xs.size() < 2) {
                os << "no interval";
                worst_centre = std::numeric_limits<double>::infinity();
                factors.push_back(0.0);
            } else {
                const double lo = xs.front().point.Kp;
                const double hi = xs.back().point.Kp;
                const double centre_dev = std::abs(0.5 * (lo + hi) - el.h1) / el.k1;
                const double f = 0.5 * (hi - lo) / el.k1;
                worst_centre = std::max(worst_centre, centre_dev);
                factors.push_back(f);
                os << "centre offset " << centre_dev << " k1, half-width " << f << " k1";
            }
            detail += (detail.empty() ? "" : "; ") + os.str();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::optional<double> factor;
        for (double c : {1.0, 2.0}) {
            if (std::all_of(factors.begin(), factors.end(), [c](double f) {
                    return std::abs(f - c) <= 0.02 * c;
                })) {
                factor = c;
            }
        }
        double mean = 0.0;
        for (double f : factors) mean += f;
        mean /= static_cast<double>(factors.size());
        factor_out = mean;

        const bool ok = factor.has_value() && worst_centre <= 0.01 && secs <= 60.0;
        r.status = ok ? CriterionStatus::Pass : CriterionStatus::Fail;
        r.measured = mean;
        r.tolerance = 0.02;
        r.detail = "measured factor " + (factor ? fmt(*factor) : std::string("inconsistent")) +
                   " (mean " + fmt(mean) + "), worst centre offset " + fmt(worst_centre) +
                   " k1 (tol 0.01), " + fmt(secs) + " s; " + detail;
        return r;
    }

    CriterionResult steady_state_exact() const {
        CriterionResult r = start(8);
        double worst_z = 0.0, worst_phi = 0.0;
        for (double theta : {0.0, kPi / 2.0, kPi}) {
            PlantModel m;
            m.params = p;
            m.exc = with_theta(exc, theta);
            m.gains = quiet_gains(p, exc);
            IntegrationOptions io;
            io.samples = 500;
            const Trajectory tr =
                integrate(steady_vehicle_state(m, 0.0), 0.0, 10.0 * m.exc.period(), m, io);
            if (!tr.completed()) {
                r.status = CriterionStatus::Fail;
                r.detail = tr.message;
                return r;
            }
            for (const VehicleState& s : tr.states) {
                worst_z = std::max(worst_z, std::abs(s.z - p.z0));
                worst_phi = std::max(worst_phi, std::abs(s.phi));
            }
        }
        r.measured = std::max(worst_z, worst_phi);
        r.tolerance = 1e-8;
        r.detail = "max|z - z0| = " + fmt(worst_z) + " m, max|phi| = " + fmt(worst_phi) +
                   " rad over 10 periods at theta = 0, pi/2, pi";
        return r;
    }

    CriterionResult hybrid_equivalence() const {
        CriterionResult r = start(9);
        const HybridParams hyb{opts.hybrid_beta, hybrid_gamma(p, opts.hybrid_beta)};
        PlantModel hybrid;
        hybrid.params = p;
        hybrid.exc = with_theta(exc, kPi / 2.0);
        hybrid.gains = quiet_gains(p, exc);
        hybrid.mode = PlantMode::Hybrid;
        hybrid.hybrid = hyb;
        PlantModel standard = hybrid;
        standard.mode = PlantMode::Standard;
        standard.params = barred_params(p, hyb);

        VehicleState x0 = steady_vehicle_state(hybrid, 0.0);
        x0.z += 0.05 * p.z0;
        x0.I1 += 0.01 * hyb.gamma;
        IntegrationOptions io;
        io.rtol = 1e-12;
        io.atol = 1e-14;
        io.samples = 500;
        const double t1 = 10.0 * hybrid.exc.period();
        const Trajectory th = integrate(x0, 0.0, t1, hybrid, io);
        const Trajectory ts = integrate(hybrid_transform(x0, hyb), 0.0, t1, standard, io);
        if (!th.completed() || !ts.completed()) {
            r.status = CriterionStatus::Fail;
            r.detail = "integration failed: " + th.message + ts.message;
            return r;
        }
        std::array<double, 6> scale{}, diff{};
        for (std::size_t i = 0; i < ts.t.size(); ++i) {
            const StateVector a = hybrid_transform(th.states[i], hyb).as_vector();
            const StateVector b = ts.states[i].as_vector();
            for (int c = 0; c < 6; ++c) {
                scale[c] = std::max(scale[c], std::abs(b[c]));
                diff[c] = std::max(diff[c], std::abs(a[c] - b[c]));
            }
        }
        double traj_dev = 0.0;
        for (int c = 0; c < 6; ++c) {
            if (scale[c] > 0.0) traj_dev = std::max(traj_dev, diff[c] / scale[c]);
        }

        const auto [kp, kd] = map_region(p, exc, opts.map_grid);
        const StabilityMap mh = sweep(hybrid, kp, kd, opts.floquet);
        const StabilityMap ms = sweep(standard, kp, kd, opts.floquet);
        std::size_t mismatched = 0;
        for (std::size_t i = 0; i < mh.cls.size(); ++i) mismatched += mh.cls[i] != ms.cls[i];
        const bool errors = mh.error_count() + ms.error_count() > 0;

        const bool ok = traj_dev <= 1e-8 && mismatched == 0 && !errors;
        r.status = ok ? CriterionStatus::Pass : CriterionStatus::Fail;
        r.measured = traj_dev;
        r.tolerance = 1e-8;
        r.detail = "max relative trajectory deviation " + fmt(traj_dev) + " over 10 periods; " +
                   std::to_string(mismatched) + " of " + std::to_string(mh.cls.size()) +
                   " map cells differ (beta = " + fmt(hyb.beta) + ", gamma = " + fmt(hyb.gamma) +
                   ")";
        return r;
    }

    CriterionResult jacobian() const {
        CriterionResult r = start(10);
        PlantModel m;
        m.params = p;
        m.exc = with_theta(exc, kPi / 2.0);
        m.gains = quiet_gains(p, exc);
        const PeriodicMatrix a(p, m.exc, m.gains);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double t = m.exc.period() * k / 20.0;
            const Matrix6 an = a(t);
            const Matrix6 fd = numerical_jacobian(m, t);
            for (int i = 0; i < 6; ++i) {
                const double floor = 1e-3 * an.row(i).cwiseAbs().maxCoeff();
                for (int j = 0; j < 6; ++j) {
                    const double denom = std::max(std::abs(an(i, j)), floor);
                    if (denom > 0.0) worst = std::max(worst, std::abs(an(i, j) - fd(i, j)) / denom);
                }
            }
        }
        r.measured = worst;
        r.tolerance = 1e-6;
        r.detail =
            "max entrywise relative difference at 20 phases (entries below 1e-3 of the "
            "row maximum compared against that floor)";
        return r;
    }

    CriterionResult l_invariance() const {
        CriterionResult r = start(11);
        const auto [kp, kd] = map_region(p, exc, opts.map_grid);
        std::vector<StabilityMap> maps;
        for (double L : {1.0, 3.0, 10.0}) {
            PlantModel m;
            m.params = PhysicalParams::with_default_inertia(p.m, L, p.C, p.R, p.g, p.z0);
            m.exc = with_theta(exc, kPi / 2.0);
            maps.push_back(sweep(m, kp, kd, opts.floquet));
        }
        std::size_t mismatched = 0;
        for (std::size_t i = 0; i < maps[0].cls.size(); ++i) {
            mismatched += maps[0].cls[i] != maps[1].cls[i] || maps[0].cls[i] != maps[2].cls[i];
        }
        const bool errors = maps[0].error_count() + maps[1].error_count() + maps[2].error_count();
        r.status = mismatched == 0 && !errors ? CriterionStatus::Pass : CriterionStatus::Fail;
        r.measured = static_cast<double>(mismatched);
        r.tolerance = 0.0;
        r.detail = std::to_string(mismatched) + " of " + std::to_string(maps[0].cls.size()) +
                   " cells differ across L = 1, 3, 10 m";
        return r;
    }

    CriterionResult printed_ratio() const {
        CriterionResult r = start(12);
        const ExcitationParams e = with_theta(exc, kPi / 2.0);
        const double h0 = oracle_h0(p);
        double worst = 0.0;
        std::string detail;
        for (EllipseKind k : kAllEllipseKinds) {
            const Ellipse el = ell(k, p, e);
            const double geometric = el.k1 / (el.h1 - h0);
            const bool principal = k == EllipseKind::A || k == EllipseKind::B;
            const double printed = e.A *
                                   std::sqrt(1.0 + (principal ? 1.0 : -1.0) * std::cos(e.theta)) /
                                   (4.0 * kSqrt2 * p.z0);
            const double ratio = geometric / printed;
            worst = std::max(worst, std::abs(ratio - 2.0));
            detail += std::string(detail.empty() ? "" : ", ") + to_char(k) + ": " + fmt(ratio);
        }
        r.measured = worst;
        r.tolerance = 1e-9;
        r.detail = "ratios " + detail +
                   " (theta = pi/2); the printed closed form is half the "
                   "geometric size, and the Floquet scans side with the geometric one";
        return r;
    }

    CriterionResult signatures() const {
        CriterionResult r = start(13);
        bool ok = true;
        double weakest = std::numeric_limits<double>::infinity();
        std::string detail;
        for (EllipseKind k : kAllEllipseKinds) {
            const bool principal = k == EllipseKind::A || k == EllipseKind::B;
            const ExcitationParams e = with_theta(exc, principal ? 0.0 : kPi);
            const Ellipse el = ell(k, p, e);
            const MonodromyResult mr = monodromy(p, e, {el.h1, el.h2}, opts.floquet);
            const std::complex<double> mu = mr.dominant();
            const bool real = std::abs(mu.imag()) <= kRealTolerance * std::abs(mu);
            const bool outside = std::abs(mu) > 1.0 + opts.floquet.eps;
            const bool shape = principal ? (real && mu.real() < 0.0) : !real;
            ok = ok && outside && shape;
            weakest = std::min(weakest, std::abs(mu) - 1.0);
            std::ostringstream os;
            os.precision(8);
            os << to_char(k) << ": mu = " << mu.real() << (mu.imag() < 0 ? "" : "+") << mu.imag()
               << "i";
            detail += (detail.empty() ? "" : ", ") + os.str();
        }
        r.status = ok ? CriterionStatus::Pass : CriterionStatus::Fail;
        r.measured = weakest;
        r.tolerance = opts.floquet.eps;
        r.detail = detail +
                   " (a, b at theta = 0 must be real negative; c, d at theta = pi "
                   "complex; all outside the unit circle)";
        return r;
    }
};

bool parametric(int id) { return id == 4 || id == 5 || id == 6 || id == 7 || id == 12 || id == 13; }

CriterionResult settle(CriterionResult r) {
    // criteria that did not set a status compare measured against tolerance
    if (r.status == CriterionStatus::Skipped) {
        r.status = std::isfinite(r.measured) && r.measured <= r.tolerance ? CriterionStatus::Pass
                                                                          : CriterionStatus::Fail;
    }
    return r;
}

CriterionResult run_one(int id, const Battery& b, std::optional<double>& factor) {
    switch (id) {
        case 1: return settle(b.frequency_ratio());
        case 2: return settle(b.centres());
        case 3: return b.centre_line();
        case 4: return settle(b.axis_ratios());
        case 5: return settle(b.eta_frequency());
        case 6: return b.degeneracy();
        case 7: return b.floquet_boundaries(factor);
        case 8: return settle(b.steady_state_exact());
        case 9: return b.hybrid_equivalence();
        case 10: return settle(b.jacobian());
        case 11: return b.l_invariance();
        case 12: return settle(b.printed_ratio());
        case 13: return b.signatures();
        default:
            throw InvalidParameter("criterion id must be 1.." + std::to_string(kCriterionCount));
    }
}

CriterionResult guarded(int id, const Battery& b, std::optional<double>& factor) {
    if (id < 1 || id > kCriterionCount) {
        throw InvalidParameter("criterion id must be 1.." + std::to_string(kCriterionCount));
    }
    if (parametric(id) && b.exc.A == 0.0) {
        CriterionResult r = start(id);
        r.status = CriterionStatus::Skipped;
        r.detail = "skipped: excitation amplitude A = 0, no parametric forcing";
        return r;
    }
    try {
        return run_one(id, b, factor);
    } catch (const InvalidParameter&) {
        throw;
    } catch (const std::exception& e) {
        CriterionResult r = start(id);
        r.status = CriterionStatus::Fail;
        r.detail = std::string("error: ") + e.what();
        return r;
    }
}

}  // namespace

const char* to_string(CriterionStatus s) {
    switch (s) {
        case CriterionStatus::Pass: return "pass";
        case CriterionStatus::Fail: return "fail";
        case CriterionStatus::Skipped: return "skipped";
    }
    return "fail";
}

bool ValidationReport::passed() const { return failures() == 0; }

int ValidationReport::failures() const {
    return static_cast<int>(std::count_if(criteria.begin(), criteria.end(), [](const auto& c) {
        return c.status == CriterionStatus::Fail;
    }));
}

CriterionResult run_criterion(int id, const PhysicalParams& params, const ExcitationParams& exc,
                              const ValidationOptions& opts) {
    validate(params, exc);
    const Battery b{params, exc, opts};
    std::optional<double> factor;
    return guarded(id, b, factor);
}

ValidationReport run_validation(const PhysicalParams& params, const ExcitationParams& exc,
                                const ValidationOptions& opts) {
    validate(params, exc);
    const Battery b{params, exc, opts};
    ValidationReport report;
    for (int id = 1; id <= kCriterionCount; ++id) {
        std::optional<double> factor;
        report.criteria.push_back(guarded(id, b, factor));
        if (factor) report.measured_factor = factor;
    }
    return report;
}

nlohmann::json report_json(const ValidationReport& report) {
    nlohmann::json items = nlohmann::json::array();
    for (const CriterionResult& c : report.criteria) {
        items.push_back({{"id", c.id},
                         {"name", c.name},
                         {"status", to_string(c.status)},
                         {"measured", c.measured},
                         {"tolerance", c.tolerance},
                         {"detail", c.detail}});
    }
    nlohmann::json j = {
        {"passed", report.passed()}, {"failures", report.failures()}, {"criteria", items}};
    j["measured_factor"] =
        report.measured_factor ? nlohmann::json(*report.measured_factor) : nlohmann::json(nullptr);
    return j;
}

}  // namespace levstab
