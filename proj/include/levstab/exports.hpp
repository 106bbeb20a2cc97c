#pragma once

// Plot-ready data products. CSV: ',' separator, '.' decimal, LF endings,
// doubles with 17 significant digits so they reload bit for bit.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "levstab/config.hpp"
#include "levstab/floquet.hpp"
#include "levstab/hill.hpp"
#include "levstab/linear.hpp"
#include "levstab/plant.hpp"

namespace levstab {

inline constexpr std::string_view kVersion = "1.0.0";

/// Shortest form of %.17g; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// {"tool", "version", "command", "config"}
nlohmann::json export_metadata(const RunConfig& cfg, std::string_view command);

/// Header "t,z,zdot,phi,phidot,I1,I2,gap1,gap2".
std::string trajectory_csv(const Trajectory& traj, const PhysicalParams& params,
                           const ExcitationParams& exc);
nlohmann::json trajectory_json(const Trajectory& traj, const PhysicalParams& params,
                               const ExcitationParams& exc);

/// Header "Kp,Kd,class,max_mu_abs"; rows in the map's row-major order.
std::string map_csv(const StabilityMap& map);
nlohmann::json map_json(const StabilityMap& map);
/// Grid, options, class counts and per-cell error messages.
nlohmann::json map_summary(const StabilityMap& map, const FloquetOptions& opts);

/// {kind, h1, h2, k1, k2, eta_geometric, eta_printed, degenerate}
nlohmann::json ellipse_json(const Ellipse& e, const PhysicalParams& params);
/// Header "kind,h1,h2,k1,k2,eta_geometric,eta_printed,degenerate".
std::string ellipses_csv(const std::vector<Ellipse>& ellipses, const PhysicalParams& params);
/// Header "s,Kp,Kd".
std::string ellipse_boundary_csv(const Ellipse& e, int n);
/// Header "kind,s,Kp,Kd": all non-degenerate boundaries, for overlay on a map.
std::string ellipse_overlay_csv(const std::vector<Ellipse>& ellipses, int n);

/// {"translational": [{re, im}...], "rotational": [...]}
nlohmann::json spectrum_json(const UnexcitedSpectrum& s);
/// Header "subsystem,re,im".
std::string spectrum_csv(const UnexcitedSpectrum& s);

nlohmann::json chart_json(const ResonanceChart& chart);
/// Header "Kd,omega1,omega2,sum,difference".
std::string chart_samples_csv(const ResonanceChart& chart);
/// Header "curve,level,Kd,in_range,observed,ellipse".
std::string chart_intersections_csv(const ResonanceChart& chart);

/// Header "t,gap1,gap2,gap_rate1,gap_rate2,current1,current2,current_rate1,
/// current_rate2,voltage1,voltage2,voltage_rate1,voltage_rate2".
std::string steady_state_csv(const std::vector<SteadyStateSample>& samples);
nlohmann::json steady_state_json(const std::vector<SteadyStateSample>& samples);

}  // namespace levstab
