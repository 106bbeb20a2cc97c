#pragma once

// Cross-validation battery: closed forms against independent oracles, Floquet
// numerics against the ellipses, and the nonlinear plant against its
// linearization. Each criterion reports what it measured and the tolerance.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "levstab/floquet.hpp"
#include "levstab/hill.hpp"

namespace levstab {

enum class CriterionStatus { Pass, Fail, Skipped };

const char* to_string(CriterionStatus s);

struct CriterionResult {
    int id = 0;
    std::string name;
    CriterionStatus status = CriterionStatus::Skipped;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CriterionResult> criteria;
    /// half-width / k1 measured by the boundary scans, when they ran
    std::optional<double> measured_factor;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] int failures() const;
};

/// Source of the ellipses under test. Replaceable so the harness itself can be
/// checked by feeding it a deliberately wrong formula.
using EllipseProvider =
    std::function<Ellipse(EllipseKind, const PhysicalParams&, const ExcitationParams&)>;

struct ValidationOptions {
    FloquetOptions floquet;
    EllipseProvider ellipses;  ///< empty: the library's closed forms
    std::uint64_t seed = 20240607;
    /// bisection stop for the boundary scans, relative to scan length
    double scan_tolerance = 1e-5;
    int map_grid = 21;
    double hybrid_beta = 0.01;  ///< m
};

inline constexpr int kCriterionCount = 13;

/// Runs criterion `id` (1..13) for the given parameters. Only A and Omega are
/// taken from `exc`; each criterion picks the phases it needs. Parametric
/// criteria are skipped when A == 0.
CriterionResult run_criterion(int id, const PhysicalParams& params, const ExcitationParams& exc,
                              const ValidationOptions& opts = {});

ValidationReport run_validation(const PhysicalParams& params, const ExcitationParams& exc,
                                const ValidationOptions& opts = {});

nlohmann::json report_json(const ValidationReport& report);

}  // namespace levstab
