#pragma once

// Run configuration: parameters plus command options, loaded from and
// written back to JSON.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "levstab/floquet.hpp"
#include "levstab/model.hpp"
#include "levstab/plant.hpp"

namespace levstab {

struct GridSpec {
    std::array<double, 2> kp{};
    std::array<double, 2> kd{};
    int nx = 101;
    int ny = 101;
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct RunOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double eps = 1e-6;
    int threads = 0;
    PlantMode mode = PlantMode::Standard;
    std::optional<GridSpec> grid;
    /// Kd range of the resonance chart
    std::array<double, 2> kd_range = {0.0, 1e5};
    int chart_samples = 201;
    /// simulate: length in excitation periods and output density
    double periods = 10.0;
    int samples_per_period = 50;
    /// simulate: added to the steady state at t = 0 (z, zdot, phi, phidot, I1, I2)
    std::array<double, 6> perturbation{};
    /// boundary samples per ellipse
    int ellipse_points = 64;
    friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

struct RunConfig {
    PhysicalParams physical;
    ExcitationParams excitation;
    std::optional<ControlGains> gains;
    std::optional<HybridParams> hybrid;
    RunOptions options;

    [[nodiscard]] FloquetOptions floquet() const;
    /// PlantModel for the configured mode; gains default to zero when absent.
    [[nodiscard]] PlantModel plant() const;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates. A document carrying a "config" object (as written in
/// export metadata) is accepted and that object is used. Throws
/// InvalidParameter on schema or invariant violations.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(std::string_view text);
RunConfig load_config(const std::string& path);

/// Inverse of parse_config: reloading the result gives an equal RunConfig.
nlohmann::json to_json(const RunConfig& cfg);

/// Checks every invariant; throws InvalidParameter.
void validate(const RunConfig& cfg);

const char* to_string(PlantMode mode);

}  // namespace levstab
