#include "levstab/exports.hpp"

#include <charconv>
#include <cmath>
#include <map>

namespace levstab {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

namespace {

class CsvWriter {
public:
    explicit CsvWriter(std::string_view header) { out_.append(header).push_back('\n'); }

    CsvWriter& num(double v) { return field(format_double(v)); }
    CsvWriter& field(std::string_view s) {
        if (!first_) out_.push_back(',');
        out_.append(s);
        first_ = false;
        return *this;
    }
    void end_row() {
        out_.push_back('\n');
        first_ = true;
    }
    std::string str() && { return std::move(out_); }

private:
    std::string out_;
    bool first_ = true;
};

json complex_list(const std::array<std::complex<double>, 3>& v) {
    json a = json::array();
    for (const auto& z : v) a.push_back({{"re", z.real()}, {"im", z.imag()}});
    return a;
}

}  // namespace

json export_metadata(const RunConfig& cfg, std::string_view command) {
    return {
        {"tool", "levstab"}, {"version", kVersion}, {"command", command}, {"config", to_json(cfg)}};
}

std::string trajectory_csv(const Trajectory& traj, const PhysicalParams& params,
                           const ExcitationParams& exc) {
    CsvWriter w("t,z,zdot,phi,phidot,I1,I2,gap1,gap2");
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const VehicleState& s = traj.states[i];
        const GapKinematics g = gap_kinematics(s, params, exc, traj.t[i]);
        w.num(traj.t[i]).num(s.z).num(s.zdot).num(s.phi).num(s.phidot).num(s.I1).num(s.I2);
        w.num(g.gap[0]).num(g.gap[1]);
        w.end_row();
    }
    return std::move(w).str();
}

json trajectory_json(const Trajectory& traj, const PhysicalParams& params,
                     const ExcitationParams& exc) {
    json rows = json::array();
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const VehicleState& s = traj.states[i];
        const GapKinematics g = gap_kinematics(s, params, exc, traj.t[i]);
        rows.push_back({traj.t[i], s.z, s.zdot, s.phi, s.phidot, s.I1, s.I2, g.gap[0], g.gap[1]});
    }
    json j = {{"columns", {"t", "z", "zdot", "phi", "phidot", "I1", "I2", "gap1", "gap2"}},
              {"rows", rows},
              {"status", to_string(traj.status)},
              {"message", traj.message},
              {"rtol", traj.rtol},
              {"atol", traj.atol},
              {"accepted_steps", traj.stats.accepted},
              {"rejected_steps", traj.stats.rejected}};
    j["negative_current_time"] =
        traj.negative_current_time ? json(*traj.negative_current_time) : json(nullptr);
    return j;
}

std::string map_csv(const StabilityMap& map) {
    CsvWriter w("Kp,Kd,class,max_mu_abs");
    for (std::size_t iy = 0; iy < map.ny(); ++iy) {
        for (std::size_t ix = 0; ix < map.nx(); ++ix) {
            const std::size_t i = map.index(ix, iy);
            w.num(map.kp[ix]).num(map.kd[iy]).field(to_string(map.cls[i])).num(map.max_mu[i]);
            w.end_row();
        }
    }
    return std::move(w).str();
}

json map_json(const StabilityMap& map) {
    json cells = json::array();
    for (std::size_t iy = 0; iy < map.ny(); ++iy) {
        for (std::size_t ix = 0; ix < map.nx(); ++ix) {
            const std::size_t i = map.index(ix, iy);
            cells.push_back({{"Kp", map.kp[ix]},
                             {"Kd", map.kd[iy]},
                             {"class", to_string(map.cls[i])},
                             {"max_mu_abs", map.max_mu[i]}});
        }
    }
    return {{"cells", cells}};
}

json map_summary(const StabilityMap& map, const FloquetOptions& opts) {
    std::map<std::string, int> counts;
    for (StabilityClass c : map.cls) ++counts[to_string(c)];
    json errors = json::array();
    for (std::size_t i = 0; i < map.cls.size(); ++i) {
        if (map.cls[i] == StabilityClass::Error) {
            errors.push_back({{"Kp", map.kp[i % map.nx()]},
                              {"Kd", map.kd[i / map.nx()]},
                              {"message", map.errors[i]}});
        }
    }
    return {{"grid",
             {{"kp", {map.kp_axis.lo, map.kp_axis.hi}},
              {"kd", {map.kd_axis.lo, map.kd_axis.hi}},
              {"nx", map.kp_axis.n},
              {"ny", map.kd_axis.n},
              {"order", "row-major, Kd selects the row"}}},
            {"floquet", {{"rtol", opts.rtol}, {"atol", opts.atol}, {"eps", opts.eps}}},
            {"class_counts", counts},
            {"cell_errors", errors}};
}

json ellipse_json(const Ellipse& e, const PhysicalParams& params) {
    const RelativeSize eta = relative_size(e, params);
    return {{"kind", std::string(1, to_char(e.kind))},
            {"h1", e.h1},
            {"h2", e.h2},
            {"k1", e.k1},
            {"k2", e.k2},
            {"eta_geometric", eta.geometric},
            {"eta_printed", eta.printed},
            {"degenerate", e.degenerate()}};
}

std::string ellipses_csv(const std::vector<Ellipse>& ellipses, const PhysicalParams& params) {
    CsvWriter w("kind,h1,h2,k1,k2,eta_geometric,eta_printed,degenerate");
    for (const Ellipse& e : ellipses) {
        const RelativeSize eta = relative_size(e, params);
        w.field(std::string(1, to_char(e.kind))).num(e.h1).num(e.h2).num(e.k1).num(e.k2);
        w.num(eta.geometric).num(eta.printed).field(e.degenerate() ? "true" : "false");
        w.end_row();
    }
    return std::move(w).str();
}

std::string ellipse_boundary_csv(const Ellipse& e, int n) {
    CsvWriter w("s,Kp,Kd");
    const std::vector<GainPoint> pts = ellipse_boundary(e, n);
    for (int i = 0; i < n; ++i) {
        w.num(2.0 * std::numbers::pi * i / n).num(pts[i].Kp).num(pts[i].Kd);
        w.end_row();
    }
    return std::move(w).str();
}

std::string ellipse_overlay_csv(const std::vector<Ellipse>& ellipses, int n) {
    CsvWriter w("kind,s,Kp,Kd");
    for (const Ellipse& e : ellipses) {
        if (e.degenerate()) continue;
        const std::vector<GainPoint> pts = ellipse_boundary(e, n);
        for (int i = 0; i < n; ++i) {
            w.field(std::string(1, to_char(e.kind)));
            w.num(2.0 * std::numbers::pi * i / n).num(pts[i].Kp).num(pts[i].Kd);
            w.end_row();
        }
    }
    return std::move(w).str();
}

json spectrum_json(const UnexcitedSpectrum& s) {
    return {{"translational", complex_list(s.translational)},
            {"rotational", complex_list(s.rotational)}};
}

std::string spectrum_csv(const UnexcitedSpectrum& s) {
    CsvWriter w("subsystem,re,im");
    for (const auto& z : s.translational) {
        w.field("translational").num(z.real()).num(z.imag());
        w.end_row();
    }
    for (const auto& z : s.rotational) {
        w.field("rotational").num(z.real()).num(z.imag());
        w.end_row();
    }
    return std::move(w).str();
}

json chart_json(const ResonanceChart& chart) {
    json samples = json::array();
    for (const ChartSample& s : chart.samples) {
        samples.push_back({{"Kd", s.Kd},
                           {"omega1", s.omega1},
                           {"omega2", s.omega2},
                           {"sum", s.sum},
                           {"difference", s.difference}});
    }
    json xs = json::array();
    for (const ChartIntersection& x : chart.intersections) {
        json item = {{"curve", to_string(x.curve)},
                     {"level", to_string(x.level)},
                     {"Kd", x.Kd},
                     {"in_range", x.in_range},
                     {"observed", x.observed}};
        item["ellipse"] = x.observed ? json(std::string(1, x.ellipse)) : json(nullptr);
        xs.push_back(item);
    }
    return {{"Omega", chart.Omega}, {"samples", samples}, {"intersections", xs}};
}

std::string chart_samples_csv(const ResonanceChart& chart) {
    CsvWriter w("Kd,omega1,omega2,sum,difference");
    for (const ChartSample& s : chart.samples) {
        w.num(s.Kd).num(s.omega1).num(s.omega2).num(s.sum).num(s.difference);
        w.end_row();
    }
    return std::move(w).str();
}

std::string chart_intersections_csv(const ResonanceChart& chart) {
    CsvWriter w("curve,level,Kd,in_range,observed,ellipse");
    for (const ChartIntersection& x : chart.intersections) {
        w.field(to_string(x.curve)).field(to_string(x.level)).num(x.Kd);
        w.field(x.in_range ? "true" : "false").field(x.observed ? "true" : "false");
        w.field(x.observed ? std::string(1, x.ellipse) : std::string());
        w.end_row();
    }
    return std::move(w).str();
}

std::string steady_state_csv(const std::vector<SteadyStateSample>& samples) {
    CsvWriter w(
        "t,gap1,gap2,gap_rate1,gap_rate2,current1,current2,current_rate1,current_rate2,"
        "voltage1,voltage2,voltage_rate1,voltage_rate2");
    for (const SteadyStateSample& s : samples) {
        w.num(s.t);
        for (const auto* a :
             {&s.gap, &s.gap_rate, &s.current, &s.current_rate, &s.voltage, &s.voltage_rate}) {
            w.num((*a)[0]).num((*a)[1]);
        }
        w.end_row();
    }
    return std::move(w).str();
}

json steady_state_json(const std::vector<SteadyStateSample>& samples) {
    json rows = json::array();
    for (const SteadyStateSample& s : samples) {
        rows.push_back({{"t", s.t},
                        {"gap", s.gap},
                        {"gap_rate", s.gap_rate},
                        {"current", s.current},
                        {"current_rate", s.current_rate},
                        {"voltage", s.voltage},
                        {"voltage_rate", s.voltage_rate}});
    }
    return {{"samples", rows}};
}

}  // namespace levstab
