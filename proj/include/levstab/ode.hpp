#pragma once

// Adaptive Dormand-Prince 5(4) integrator with FSAL and step-size control
// on the embedded error estimate. Output is produced by landing steps exactly
// on the requested sample times, so samples carry full step accuracy.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace levstab::ode {

struct Options {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  ///< 0 selects a step automatically
    double max_step = 0.0;      ///< 0 means unbounded
    long max_steps = 10'000'000;
};

enum class Status {
    Success,
    StepUnderflow,  ///< step size fell below the representable resolution at t
    InvalidState,   ///< the right-hand side rejected the state even for tiny steps
    MaxSteps,
};

struct Stats {
    long accepted = 0;
    long rejected = 0;
    long evaluations = 0;
};

struct Result {
    Status status = Status::Success;
    double t = 0.0;  ///< time reached (last accepted step)
    Stats stats;
};

namespace detail {
// Dormand & Prince (1980) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                        b6 = 11.0 / 84;
// b - b_hat
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace detail

/// Integrates y' = f(t, y) from (t0, y0) through every time in `samples`
/// (strictly increasing, all > t0), calling observer(t, y) at each.
///
/// `f(t, y, dydt)` returns false when y is outside the model's domain; the
/// step is then shrunk as if its error were too large.
template <int N, class Rhs, class Observer>
Result integrate(Rhs&& f, double t0, const Eigen::Matrix<double, N, 1>& y0,
                 std::span<const double> samples, const Options& opts, Observer&& observer) {
    using Vec = Eigen::Matrix<double, N, 1>;
    using namespace detail;

    Result res;
    res.t = t0;
    if (samples.empty()) return res;

    const Eigen::Index n = y0.size();
    Vec y = y0;
    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);

    auto eval = [&](double t, const Vec& state, Vec& out) {
        ++res.stats.evaluations;
        return f(t, state, out);
    };

    auto scaled_norm = [&](const Vec& e, const Vec& a, const Vec& b) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc = opts.atol + opts.rtol * std::max(std::abs(a[i]), std::abs(b[i]));
            const double r = e[i] / sc;
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(n));
    };

    double t = t0;
    if (!eval(t, y, k1)) {
        res.status = Status::InvalidState;
        return res;
    }

    const double span = samples.back() - t0;
    double h = opts.initial_step;
    if (h <= 0.0) {
        // Hairer, Norsett & Wanner, starting step heuristic.
        const Vec zero = Vec::Zero(n);
        const double d0 = scaled_norm(y, y, zero);
        const double d1 = scaled_norm(k1, y, zero);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        ytmp = y + h0 * k1;
        if (!eval(t + h0, ytmp, k2)) {
            h = h0 * 1e-3;
        } else {
            const double d2 = scaled_norm(Vec(k2 - k1), y, zero) / h0;
            const double dm = std::max(d1, d2);
            const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
            h = std::min(100.0 * h0, h1);
        }
    }
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);

    std::size_t next = 0;
    while (next < samples.size()) {
        if (res.stats.accepted + res.stats.rejected >= opts.max_steps) {
            res.status = Status::MaxSteps;
            return res;
        }
        const double target = samples[next];
        bool lands = false;
        double step = h;
        if (t + step >= target) {
            step = target - t;
            lands = true;
        }
        const double resolution = 16.0 * std::numeric_limits<double>::epsilon() *
                                  std::max({std::abs(t), std::abs(target), 1e-300});
        if (step < resolution && !lands) {
            res.status = Status::StepUnderflow;
            return res;
        }

        bool ok = true;
        ytmp = y + step * a21 * k1;
        ok = ok && eval(t + c2 * step, ytmp, k2);
        if (ok) {
            ytmp = y + step * (a31 * k1 + a32 * k2);
            ok = eval(t + c3 * step, ytmp, k3);
        }
        if (ok) {
            ytmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
            ok = eval(t + c4 * step, ytmp, k4);
        }
        if (ok) {
            ytmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            ok = eval(t + c5 * step, ytmp, k5);
        }
        if (ok) {
            ytmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            ok = eval(t + step, ytmp, k6);
        }
        if (ok) {
            ynew = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            ok = eval(t + step, ynew, k7);
        }
        if (!ok) {
            ++res.stats.rejected;
            h = 0.25 * step;
            if (h < resolution) {
                res.status = Status::InvalidState;
                return res;
            }
            continue;
        }

        err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = scaled_norm(err, y, ynew);
        if (!std::isfinite(en)) {
            ++res.stats.rejected;
            h = 0.25 * step;
            continue;
        }
        const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
        if (en <= 1.0) {
            ++res.stats.accepted;
            t = lands ? target : t + step;
            y = ynew;
            k1 = k7;
            res.t = t;
            // a step clipped onto a sample keeps the controller's proposal
            h = (lands && step < h) ? h : step * factor;
            if (lands) {
                observer(t, static_cast<const Vec&>(y));
                ++next;
            }
            if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
        } else {
            ++res.stats.rejected;
            h = step * std::min(1.0, factor);
        }
    }
    return res;
}

}  // namespace levstab::ode
