#include "levstab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "levstab/error.hpp"
#include "levstab/exports.hpp"
#include "levstab/validation.hpp"

namespace levstab {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Output {
public:
    Output(const RunConfig& cfg, const CommandRequest& req) : cfg_(cfg), req_(req) {
        std::error_code ec;
        fs::create_directories(req.out_dir, ec);
        if (ec)
            throw Error(ErrorKind::Numerical, "cannot create " + req.out_dir + ": " + ec.message());
    }

    bool json_format() const { return req_.format == "json"; }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = fs::path(req_.out_dir) / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) throw Error(ErrorKind::Numerical, "failed to write " + path.string());
        result_.files.push_back(path.string());
    }

    void write_json(const std::string& name, json body) {
        body["metadata"] = export_metadata(cfg_, req_.command);
        write(name, body.dump(2) + "\n");
    }

    CommandResult finish(json summary, int exit_code) {
        json meta = export_metadata(cfg_, req_.command);
        meta["format"] = req_.format;
        meta["summary"] = summary;
        std::vector<std::string> files = result_.files;
        meta["files"] = files;
        write(req_.command + ".meta.json", meta.dump(2) + "\n");
        result_.summary = std::move(summary);
        result_.exit_code = exit_code;
        return std::move(result_);
    }

private:
    const RunConfig& cfg_;
    const CommandRequest& req_;
    CommandResult result_;
};

ControlGains require_gains(const RunConfig& cfg, const char* command) {
    if (!cfg.gains) throw InvalidParameter(std::string(command) + " needs \"gains\" {Kp, Kd}");
    return *cfg.gains;
}

CommandResult cmd_ellipses(const RunConfig& cfg, const CommandRequest& req) {
    Output out(cfg, req);
    const auto all = all_ellipses(cfg.physical, cfg.excitation);
    const std::vector<Ellipse> list(all.begin(), all.end());
    json records = json::array();
    for (const Ellipse& e : list) {
        json r = ellipse_json(e, cfg.physical);
        if (out.json_format()) {
            json pts = json::array();
            for (const GainPoint& g : ellipse_boundary(e, cfg.options.ellipse_points)) {
                pts.push_back({g.Kp, g.Kd});
            }
            r["boundary"] = pts;
        }
        records.push_back(r);
    }
    if (out.json_format()) {
        out.write_json("ellipses.json", {{"ellipses", records}});
    } else {
        out.write("ellipses.csv", ellipses_csv(list, cfg.physical));
        for (const Ellipse& e : list) {
            out.write(std::string("ellipse_") + to_char(e.kind) + ".csv",
                      ellipse_boundary_csv(e, cfg.options.ellipse_points));
        }
    }
    std::vector<Ellipse> sorted = list;
    std::stable_sort(sorted.begin(), sorted.end(), [](const Ellipse& a, const Ellipse& b) {
        return a.k1 < b.k1;
    });
    std::string order;
    for (const Ellipse& e : sorted) {
        if (e.degenerate()) continue;
        order += order.empty() ? "" : "<";
        order += to_char(e.kind);
    }
    json summary = {{"ellipses", records}, {"order_by_k1", order}};
    for (json& r : summary["ellipses"]) r.erase("boundary");
    return out.finish(summary, 0);
}

CommandResult cmd_map(const RunConfig& cfg, const CommandRequest& req) {
    if (!cfg.options.grid) {
        throw InvalidParameter(
            "map needs a grid (options.grid or --grid with --kp-range/--kd-range)");
    }
    const GridSpec& g = *cfg.options.grid;
    Output out(cfg, req);
    const FloquetOptions fo = cfg.floquet();
    const StabilityMap map =
        sweep(cfg.plant(), {g.kp[0], g.kp[1], g.nx}, {g.kd[0], g.kd[1], g.ny}, fo);
    if (out.json_format()) {
        out.write_json("map.json", map_json(map));
    } else {
        out.write("map.csv", map_csv(map));
    }
    if (req.overlay) {
        const auto all = all_ellipses(cfg.physical, cfg.excitation);
        out.write("map_ellipses.csv",
                  ellipse_overlay_csv({all.begin(), all.end()}, cfg.options.ellipse_points));
    }
    json summary = map_summary(map, fo);
    summary["mode"] = to_string(cfg.options.mode);
    summary["completed_with_cell_errors"] = map.error_count() > 0;
    return out.finish(summary, map.error_count() > 0 ? 3 : 0);
}

CommandResult cmd_validate(const RunConfig& cfg, const CommandRequest& req) {
    Output out(cfg, req);
    ValidationOptions vo;
    vo.floquet = cfg.floquet();
    if (cfg.hybrid) vo.hybrid_beta = cfg.hybrid->beta;
    const ValidationReport report = run_validation(cfg.physical, cfg.excitation, vo);
    const json body = report_json(report);
    out.write_json("validation.json", body);
    if (!out.json_format()) {
        std::string csv = "id,name,status,measured,tolerance\n";
        for (const CriterionResult& c : report.criteria) {
            csv += std::to_string(c.id) + ",\"" + c.name + "\"," + to_string(c.status) + "," +
                   format_double(c.measured) + "," + format_double(c.tolerance) + "\n";
        }
        out.write("validation.csv", csv);
    }
    return out.finish(body, report.passed() ? 0 : 1);
}

CommandResult cmd_simulate(const RunConfig& cfg, const CommandRequest& req) {
    PlantModel model = cfg.plant();
    model.gains = require_gains(cfg, "simulate");
    Output out(cfg, req);
    const RunOptions& o = cfg.options;
    VehicleState x0 = steady_vehicle_state(model, 0.0);
    StateVector v = x0.as_vector();
    for (int i = 0; i < 6; ++i) v[i] += o.perturbation[i];
    x0 = VehicleState::from_vector(v);

    IntegrationOptions io;
    io.rtol = o.rtol;
    io.atol = o.atol;
    io.samples = std::max(1, static_cast<int>(std::ceil(o.periods * o.samples_per_period)));
    const double t1 = o.periods * cfg.excitation.period();
    const Trajectory tr = integrate(x0, 0.0, t1, model, io);

    if (out.json_format()) {
        out.write_json("trajectory.json", trajectory_json(tr, model.params, model.exc));
    } else {
        out.write("trajectory.csv", trajectory_csv(tr, model.params, model.exc));
    }
    json summary = {{"status", to_string(tr.status)},
                    {"message", tr.message},
                    {"mode", to_string(model.mode)},
                    {"samples", tr.t.size()},
                    {"last_time", tr.t.back()},
                    {"accepted_steps", tr.stats.accepted},
                    {"rejected_steps", tr.stats.rejected}};
    summary["negative_current_time"] =
        tr.negative_current_time ? json(*tr.negative_current_time) : json(nullptr);
    return out.finish(summary, tr.completed() ? 0 : 3);
}

CommandResult cmd_resonance_chart(const RunConfig& cfg, const CommandRequest& req) {
    Output out(cfg, req);
    const RunOptions& o = cfg.options;
    const ResonanceChart chart = resonance_chart(
        cfg.physical, cfg.excitation.Omega, o.kd_range[0], o.kd_range[1], o.chart_samples);
    const json body = chart_json(chart);
    if (out.json_format()) {
        out.write_json("resonance_chart.json", body);
    } else {
        out.write("resonance_chart.csv", chart_samples_csv(chart));
        out.write("resonance_intersections.csv", chart_intersections_csv(chart));
    }
    return out.finish({{"Omega", chart.Omega},
                       {"samples", chart.samples.size()},
                       {"intersections", body["intersections"]}},
                      0);
}

CommandResult cmd_steady_state(const RunConfig& cfg, const CommandRequest& req) {
    Output out(cfg, req);
    const PlantModel model = cfg.plant();
    const RunOptions& o = cfg.options;
    const int n = std::max(2, static_cast<int>(std::ceil(o.periods * o.samples_per_period)) + 1);
    const double t1 = o.periods * cfg.excitation.period();
    std::vector<SteadyStateSample> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) samples.push_back(steady_state(model, t1 * i / (n - 1)));
    if (out.json_format()) {
        out.write_json("steady_state.json", steady_state_json(samples));
    } else {
        out.write("steady_state.csv", steady_state_csv(samples));
    }
    return out.finish({{"samples", n}, {"mode", to_string(model.mode)}}, 0);
}

CommandResult cmd_spectrum(const RunConfig& cfg, const CommandRequest& req) {
    const ControlGains gains = require_gains(cfg, "spectrum");
    Output out(cfg, req);
    const UnexcitedSpectrum s = unexcited_spectrum(cfg.physical, gains);
    const StaticStability st = is_statically_stable(cfg.physical, gains);
    json body = spectrum_json(s);
    if (out.json_format()) {
        out.write_json("spectrum.json", body);
    } else {
        out.write("spectrum.csv", spectrum_csv(s));
    }
    body["stable"] = st.stable;
    body["margin"] = st.margin;
    return out.finish(body, 0);
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {
        "ellipses", "map", "validate", "simulate", "resonance-chart", "steady-state", "spectrum"};
    return names;
}

CommandResult run_command(const RunConfig& cfg, const CommandRequest& req) {
    if (req.format != "csv" && req.format != "json") {
        throw InvalidParameter("format must be csv or json");
    }
    validate(cfg);
    if (req.command == "ellipses") return cmd_ellipses(cfg, req);
    if (req.command == "map") return cmd_map(cfg, req);
    if (req.command == "validate") return cmd_validate(cfg, req);
    if (req.command == "simulate") return cmd_simulate(cfg, req);
    if (req.command == "resonance-chart") return cmd_resonance_chart(cfg, req);
    if (req.command == "steady-state") return cmd_steady_state(cfg, req);
    if (req.command == "spectrum") return cmd_spectrum(cfg, req);
    throw InvalidParameter("unknown command '" + req.command + "'");
}

}  // namespace levstab
