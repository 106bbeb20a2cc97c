#pragma once

// Floquet analysis of the linearized periodic system: monodromy matrices,
// multipliers, stability classes, gain-plane sweeps and boundary scans.

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "levstab/hill.hpp"
#include "levstab/linear.hpp"
#include "levstab/ode.hpp"
#include "levstab/plant.hpp"

namespace levstab {

struct FloquetOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double eps = 1e-6;  ///< classification band around |mu| = 1
    int threads = 0;    ///< 0: LEVSTAB_THREADS or hardware concurrency
};

struct MonodromyResult {
    Matrix6 M = Matrix6::Zero();
    /// Eigenvalues of M sorted by decreasing modulus; within a conjugate
    /// pair the one with positive imaginary part comes first.
    std::array<std::complex<double>, 6> multipliers{};
    ode::Stats stats;
    double period = 0.0;

    [[nodiscard]] double max_abs() const { return std::abs(multipliers[0]); }
    [[nodiscard]] std::complex<double> dominant() const { return multipliers[0]; }
    /// Number of multipliers with modulus > 1.
    [[nodiscard]] int unstable_count() const;
};

/// Integrates the six unit vectors over one period. Throws NumericalError
/// naming the failing column.
MonodromyResult monodromy(const PeriodicMatrix& a, const FloquetOptions& opts = {});
MonodromyResult monodromy(const PhysicalParams& params, const ExcitationParams& exc,
                          const ControlGains& gains, const FloquetOptions& opts = {});

/// Eigenvalues of a real 6x6 matrix in the MonodromyResult ordering.
std::array<std::complex<double>, 6> sorted_multipliers(const Matrix6& m);

enum class StabilityClass { Stable, Divergence, ParametricOscillatory, Marginal, Error };

const char* to_string(StabilityClass c);
StabilityClass stability_class_from_string(std::string_view s);

/// A multiplier is treated as real when |Im mu| <= this times |mu|.
inline constexpr double kRealTolerance = 1e-7;

StabilityClass classify(const MonodromyResult& result, double eps = 1e-6);

/// The linear system for a model at given gains: the standard linearization,
/// or the hybrid one about the hybrid plant's own steady state.
PeriodicMatrix linear_system(const PlantModel& model, const ControlGains& gains);

/// Evenly spaced axis; n >= 2 and hi > lo.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    int n = 2;
    [[nodiscard]] double at(int i) const;
};

/// Cells are stored row-major with Kd selecting the row: index = iy * nx + ix.
struct StabilityMap {
    GridAxis kp_axis;
    GridAxis kd_axis;
    std::vector<double> kp;
    std::vector<double> kd;
    std::vector<StabilityClass> cls;
    std::vector<double> max_mu;
    std::vector<std::string> errors;  ///< non-empty only for Error cells

    [[nodiscard]] std::size_t nx() const { return kp.size(); }
    [[nodiscard]] std::size_t ny() const { return kd.size(); }
    [[nodiscard]] std::size_t index(std::size_t ix, std::size_t iy) const { return iy * nx() + ix; }
    [[nodiscard]] StabilityClass at(std::size_t ix, std::size_t iy) const {
        return cls[index(ix, iy)];
    }
    [[nodiscard]] std::size_t error_count() const;
    /// Same grid and same class in every cell.
    [[nodiscard]] bool same_classes(const StabilityMap& other) const;
};

/// Classifies every grid cell of the model's linearization (model.gains is
/// ignored). A failing cell is recorded as Error and does not stop the sweep.
StabilityMap sweep(const PlantModel& model, const GridAxis& kp, const GridAxis& kd,
                   const FloquetOptions& opts = {});

/// Straight segment in the gain plane.
struct ScanLine {
    GainPoint from;
    GainPoint to;
    int samples = 41;         ///< coarse evaluations, endpoints included
    double tolerance = 1e-3;  ///< bisection stop, relative to the scan length
};

struct BoundaryCrossing {
    double s = 0.0;  ///< fraction of the scan in [0, 1]
    GainPoint point;
    int unstable_before = 0;
    int unstable_after = 0;
};

/// Locates changes of the Floquet signature along the scan by coarse
/// sampling and bisection. The signature is the number of multipliers outside
/// the unit circle together with the type of the dominant one (real positive,
/// real negative or complex); a change in the latter catches boundaries where
/// a real pair merges into a complex pair already outside the circle.
std::vector<BoundaryCrossing> boundary_crossings(const PlantModel& model, const ScanLine& scan,
                                                 const FloquetOptions& opts = {});

}  // namespace levstab
