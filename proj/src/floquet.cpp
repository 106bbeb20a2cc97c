#include "levstab/floquet.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "levstab/error.hpp"
#include "levstab/parallel.hpp"

namespace levstab {

int MonodromyResult::unstable_count() const {
    return static_cast<int>(std::count_if(
        multipliers.begin(), multipliers.end(), [](const auto& mu) { return std::abs(mu) > 1.0; }));
}

std::array<std::complex<double>, 6> sorted_multipliers(const Matrix6& m) {
    Eigen::EigenSolver<Matrix6> es(m, false);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigenvalue computation did not converge");
    std::array<std::complex<double>, 6> mu;
    for (int i = 0; i < 6; ++i) mu[i] = es.eigenvalues()[i];
    std::sort(mu.begin(), mu.end(), [](const auto& a, const auto& b) {
        const double aa = std::abs(a);
        const double ab = std::abs(b);
        if (aa != ab) return aa > ab;
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return mu;
}

MonodromyResult monodromy(const PeriodicMatrix& a, const FloquetOptions& opts) {
    MonodromyResult r;
    r.period = a.period();
    const std::array<double, 1> end = {r.period};

    ode::Options oo;
    oo.rtol = opts.rtol;
    oo.atol = opts.atol;
    auto f = [&](double t, const Vector6& x, Vector6& dx) {
        dx.noalias() = a(t) * x;
        return true;
    };

    for (int j = 0; j < 6; ++j) {
        Vector6 x0 = Vector6::Zero();
        x0[j] = 1.0;
        Vector6 xT = Vector6::Zero();
        auto obs = [&](double, const Vector6& x) { xT = x; };
        const ode::Result res = ode::integrate<6>(f, 0.0, x0, end, oo, obs);
        r.stats.accepted += res.stats.accepted;
        r.stats.rejected += res.stats.rejected;
        r.stats.evaluations += res.stats.evaluations;
        if (res.status != ode::Status::Success || !xT.allFinite()) {
            throw NumericalError("monodromy integration failed for column " + std::to_string(j) +
                                 " at t=" + std::to_string(res.t));
        }
        r.M.col(j) = xT;
    }
    r.multipliers = sorted_multipliers(r.M);
    return r;
}

MonodromyResult monodromy(const PhysicalParams& params, const ExcitationParams& exc,
                          const ControlGains& gains, const FloquetOptions& opts) {
    return monodromy(periodic_matrix(params, exc, gains), opts);
}

const char* to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::Stable: return "stable";
        case StabilityClass::Divergence: return "divergence";
        case StabilityClass::ParametricOscillatory: return "parametric-oscillatory";
        case StabilityClass::Marginal: return "marginal";
        case StabilityClass::Error: return "error";
    }
    return "error";
}

StabilityClass stability_class_from_string(std::string_view s) {
    for (StabilityClass c : {StabilityClass::Stable,
                             StabilityClass::Divergence,
                             StabilityClass::ParametricOscillatory,
                             StabilityClass::Marginal,
                             StabilityClass::Error}) {
        if (s == to_string(c)) return c;
    }
    throw InvalidParameter("unknown stability class '" + std::string(s) + "'");
}

namespace {

bool is_real(const std::complex<double>& mu) {
    return std::abs(mu.imag()) <= kRealTolerance * std::abs(mu);
}

}  // namespace

StabilityClass classify(const MonodromyResult& result, double eps) {
    const double m = result.max_abs();
    if (!std::isfinite(m)) return StabilityClass::Error;
    if (m < 1.0 - eps) return StabilityClass::Stable;
    if (m <= 1.0 + eps) return StabilityClass::Marginal;
    const std::complex<double> d = result.dominant();
    if (is_real(d) && d.real() > 0.0) return StabilityClass::Divergence;
    return StabilityClass::ParametricOscillatory;
}

PeriodicMatrix linear_system(const PlantModel& model, const ControlGains& gains) {
    if (model.exc.A >= model.params.z0) throw InvalidParameter("A >= z0: steady-state gap closes");
    if (model.mode == PlantMode::Hybrid) {
        return PeriodicMatrix(model.params, model.exc, gains, model.hybrid);
    }
    return PeriodicMatrix(model.params, model.exc, gains);
}

double GridAxis::at(int i) const {
    if (i == n - 1) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

std::size_t StabilityMap::error_count() const {
    return static_cast<std::size_t>(std::count(cls.begin(), cls.end(), StabilityClass::Error));
}

bool StabilityMap::same_classes(const StabilityMap& other) const {
    return kp == other.kp && kd == other.kd && cls == other.cls;
}

StabilityMap sweep(const PlantModel& model, const GridAxis& kp, const GridAxis& kd,
                   const FloquetOptions& opts) {
    for (const GridAxis* ax : {&kp, &kd}) {
        if (ax->n < 2) throw InvalidParameter("grid needs at least 2 points per axis");
        if (!std::isfinite(ax->lo) || !std::isfinite(ax->hi) || !(ax->hi > ax->lo)) {
            throw InvalidParameter("grid range must satisfy lo < hi");
        }
    }
    StabilityMap map;
    map.kp_axis = kp;
    map.kd_axis = kd;
    for (int i = 0; i < kp.n; ++i) map.kp.push_back(kp.at(i));
    for (int i = 0; i < kd.n; ++i) map.kd.push_back(kd.at(i));
    const std::size_t cells = map.nx() * map.ny();
    map.cls.assign(cells, StabilityClass::Error);
    map.max_mu.assign(cells, std::nan(""));
    map.errors.assign(cells, std::string());

    parallel_for(cells, opts.threads, [&](std::size_t idx) {
        const ControlGains g{map.kp[idx % map.nx()], map.kd[idx / map.nx()]};
        try {
            const MonodromyResult r = monodromy(linear_system(model, g), opts);
            map.cls[idx] = classify(r, opts.eps);
            map.max_mu[idx] = r.max_abs();
        } catch (const std::exception& e) {
            map.cls[idx] = StabilityClass::Error;
            map.errors[idx] = e.what();
        }
    });
    return map;
}

namespace {

enum class DominantType { None, RealPositive, RealNegative, Complex };

struct Signature {
    int unstable = 0;
    DominantType type = DominantType::None;
    bool operator==(const Signature&) const = default;
};

Signature signature(const PlantModel& model, const GainPoint& p, const FloquetOptions& opts) {
    const MonodromyResult r = monodromy(linear_system(model, {p.Kp, p.Kd}), opts);
    Signature s;
    s.unstable = r.unstable_count();
    if (s.unstable > 0) {
        const auto d = r.dominant();
        s.type = !is_real(d)      ? DominantType::Complex
                 : d.real() > 0.0 ? DominantType::RealPositive
                                  : DominantType::RealNegative;
    }
    return s;
}

}  // namespace

std::vector<BoundaryCrossing> boundary_crossings(const PlantModel& model, const ScanLine& scan,
                                                 const FloquetOptions& opts) {
    if (scan.samples < 2) throw InvalidParameter("scan needs at least 2 samples");
    if (!(scan.tolerance > 0.0)) throw InvalidParameter("scan tolerance must be positive");
    auto point = [&](double s) {
        return GainPoint{scan.from.Kp + s * (scan.to.Kp - scan.from.Kp),
                         scan.from.Kd + s * (scan.to.Kd - scan.from.Kd)};
    };
    const auto n = static_cast<std::size_t>(scan.samples);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    std::vector<Signature> sig(n);
    parallel_for(
        n, opts.threads, [&](std::size_t i) { sig[i] = signature(model, point(s[i]), opts); });

    std::vector<std::size_t> brackets;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(sig[i] == sig[i + 1])) brackets.push_back(i);
    }
    std::vector<BoundaryCrossing> out(brackets.size());
    parallel_for(brackets.size(), opts.threads, [&](std::size_t b) {
        const std::size_t i = brackets[b];
        double lo = s[i];
        double hi = s[i + 1];
        const Signature left = sig[i];
        while (hi - lo > scan.tolerance) {
            const double mid = 0.5 * (lo + hi);
            if (signature(model, point(mid), opts) == left) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        BoundaryCrossing c;
        c.s = 0.5 * (lo + hi);
        c.point = point(c.s);
        c.unstable_before = sig[i].unstable;
        c.unstable_after = sig[i + 1].unstable;
        out[b] = c;
    });
    return out;
}

}  // namespace levstab
