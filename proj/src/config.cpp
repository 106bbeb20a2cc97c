#include "levstab/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "levstab/error.hpp"

namespace levstab {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw InvalidParameter(where + " must be a JSON object");
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (std::string_view a : allowed) ok = ok || key == a;
        if (!ok) throw InvalidParameter("unknown key \"" + key + "\" in " + where);
    }
}

double number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw InvalidParameter(where + "." + key + " is required");
    const json& v = j.at(key);
    if (!v.is_number()) throw InvalidParameter(where + "." + key + " must be a number");
    return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
    return j.contains(key) ? number(j, key, where) : fallback;
}

int integer_or(const json& j, const char* key, int fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw InvalidParameter(where + "." + key + " must be an integer");
    return v.get<int>();
}

std::array<double, 2> pair_of(const json& j, const char* key, const std::string& where) {
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw InvalidParameter(where + "." + key + " must be [lo, hi]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

PhysicalParams parse_physical(const json& j) {
    const std::string w = "physical";
    require_object(j, w);
    reject_unknown(j, w, {"m", "C", "R", "g", "z0", "L", "J"});
    PhysicalParams p;
    p.m = number(j, "m", w);
    p.C = number(j, "C", w);
    p.R = number(j, "R", w);
    p.g = number_or(j, "g", 9.81, w);
    p.z0 = number(j, "z0", w);
    p.L = number_or(j, "L", 3.0, w);
    if (j.contains("J")) {
        p.J = number(j, "J", w);
    } else {
        p.J = default_inertia(p.m, p.L);
        p.inertia_defaulted = true;
    }
    return p;
}

ExcitationParams parse_excitation(const json& j, const PhysicalParams& p) {
    const std::string w = "excitation";
    require_object(j, w);
    reject_unknown(j, w, {"A", "Omega", "theta", "v", "d"});
    const bool direct = j.contains("Omega") || j.contains("theta");
    const bool kinematic = j.contains("v") || j.contains("d");
    if (direct && kinematic) {
        throw InvalidParameter("excitation: give either Omega/theta or v/d, not both");
    }
    const double A = number(j, "A", w);
    if (kinematic) {
        validate(p);
        return kinematic_excitation(number(j, "v", w), number(j, "d", w), p.L, A);
    }
    ExcitationParams e;
    e.A = A;
    e.Omega = number(j, "Omega", w);
    const double theta = number_or(j, "theta", 0.0, w);
    if (!std::isfinite(theta)) throw InvalidParameter("theta must be finite");
    e.theta = normalize_angle(theta);
    return e;
}

RunOptions parse_options(const json& j) {
    const std::string w = "options";
    require_object(j, w);
    reject_unknown(j,
                   w,
                   {"rtol",
                    "atol",
                    "eps",
                    "threads",
                    "mode",
                    "grid",
                    "kd_range",
                    "chart_samples",
                    "periods",
                    "samples_per_period",
                    "perturbation",
                    "ellipse_points"});
    RunOptions o;
    o.rtol = number_or(j, "rtol", o.rtol, w);
    o.atol = number_or(j, "atol", o.atol, w);
    o.eps = number_or(j, "eps", o.eps, w);
    o.threads = integer_or(j, "threads", o.threads, w);
    if (j.contains("mode")) {
        const json& m = j.at("mode");
        if (m == "standard") {
            o.mode = PlantMode::Standard;
        } else if (m == "hybrid") {
            o.mode = PlantMode::Hybrid;
        } else {
            throw InvalidParameter("options.mode must be \"standard\" or \"hybrid\"");
        }
    }
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        require_object(g, "options.grid");
        reject_unknown(g, "options.grid", {"kp", "kd", "nx", "ny"});
        GridSpec s;
        s.kp = pair_of(g, "kp", "options.grid");
        s.kd = pair_of(g, "kd", "options.grid");
        s.nx = integer_or(g, "nx", s.nx, "options.grid");
        s.ny = integer_or(g, "ny", s.ny, "options.grid");
        o.grid = s;
    }
    if (j.contains("kd_range")) o.kd_range = pair_of(j, "kd_range", w);
    o.chart_samples = integer_or(j, "chart_samples", o.chart_samples, w);
    o.periods = number_or(j, "periods", o.periods, w);
    o.samples_per_period = integer_or(j, "samples_per_period", o.samples_per_period, w);
    if (j.contains("perturbation")) {
        const json& v = j.at("perturbation");
        if (!v.is_array() || v.size() != 6) {
            throw InvalidParameter("options.perturbation must be an array of 6 numbers");
        }
        for (std::size_t i = 0; i < 6; ++i) {
            if (!v[i].is_number()) throw InvalidParameter("options.perturbation must be numeric");
            o.perturbation[i] = v[i].get<double>();
        }
    }
    o.ellipse_points = integer_or(j, "ellipse_points", o.ellipse_points, w);
    return o;
}

}  // namespace

const char* to_string(PlantMode mode) { return mode == PlantMode::Hybrid ? "hybrid" : "standard"; }

FloquetOptions RunConfig::floquet() const {
    FloquetOptions f;
    f.rtol = options.rtol;
    f.atol = options.atol;
    f.eps = options.eps;
    f.threads = options.threads;
    return f;
}

PlantModel RunConfig::plant() const {
    PlantModel m;
    m.params = physical;
    m.exc = excitation;
    m.gains = gains.value_or(ControlGains{});
    m.mode = options.mode;
    if (hybrid) m.hybrid = *hybrid;
    return m;
}

void validate(const RunConfig& cfg) {
    validate(cfg.physical, cfg.excitation);
    if (cfg.gains) validate(*cfg.gains);
    if (cfg.hybrid) validate(cfg.physical, *cfg.hybrid);
    const RunOptions& o = cfg.options;
    if (o.mode == PlantMode::Hybrid && !cfg.hybrid) {
        throw InvalidParameter("options.mode \"hybrid\" needs a \"hybrid\" section");
    }
    if (!(o.rtol > 0.0) || !(o.atol > 0.0))
        throw InvalidParameter("rtol and atol must be positive");
    if (!(o.eps > 0.0)) throw InvalidParameter("eps must be positive");
    if (o.threads < 0) throw InvalidParameter("threads must be >= 0");
    if (o.grid) {
        const GridSpec& g = *o.grid;
        if (g.nx < 2 || g.ny < 2) throw InvalidParameter("grid needs nx, ny >= 2");
        if (!(g.kp[1] > g.kp[0]) || !(g.kd[1] > g.kd[0])) {
            throw InvalidParameter("grid ranges must satisfy lo < hi");
        }
    }
    if (!std::isfinite(o.kd_range[0]) || !std::isfinite(o.kd_range[1]) || o.kd_range[0] < 0.0) {
        throw InvalidParameter("kd_range must be finite with lo >= 0");
    }
    if (o.chart_samples < 2) throw InvalidParameter("chart_samples must be >= 2");
    if (!(o.periods > 0.0)) throw InvalidParameter("periods must be positive");
    if (o.samples_per_period < 1) throw InvalidParameter("samples_per_period must be >= 1");
    if (o.ellipse_points < 1) throw InvalidParameter("ellipse_points must be >= 1");
    for (double v : o.perturbation) {
        if (!std::isfinite(v)) throw InvalidParameter("perturbation must be finite");
    }
}

RunConfig parse_config(const json& input) {
    const json& doc = (input.is_object() && input.contains("config") && !input.contains("physical"))
                          ? input.at("config")
                          : input;
    require_object(doc, "config");
    reject_unknown(doc, "config", {"physical", "excitation", "gains", "hybrid", "options"});
    if (!doc.contains("physical")) throw InvalidParameter("config.physical is required");
    if (!doc.contains("excitation")) throw InvalidParameter("config.excitation is required");

    RunConfig cfg;
    cfg.physical = parse_physical(doc.at("physical"));
    cfg.excitation = parse_excitation(doc.at("excitation"), cfg.physical);
    if (doc.contains("gains")) {
        const json& g = doc.at("gains");
        require_object(g, "gains");
        reject_unknown(g, "gains", {"Kp", "Kd"});
        cfg.gains = ControlGains{number(g, "Kp", "gains"), number(g, "Kd", "gains")};
    }
    if (doc.contains("hybrid")) {
        const json& h = doc.at("hybrid");
        require_object(h, "hybrid");
        reject_unknown(h, "hybrid", {"beta", "gamma"});
        HybridParams hp;
        hp.beta = number(h, "beta", "hybrid");
        validate(cfg.physical, HybridParams{hp.beta, 0.0});
        hp.gamma = h.contains("gamma") ? number(h, "gamma", "hybrid")
                                       : hybrid_gamma(cfg.physical, hp.beta);
        cfg.hybrid = hp;
    }
    if (doc.contains("options")) cfg.options = parse_options(doc.at("options"));
    validate(cfg);
    return cfg;
}

RunConfig parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

json to_json(const RunConfig& cfg) {
    json doc;
    const PhysicalParams& p = cfg.physical;
    json phys = {{"m", p.m}, {"C", p.C}, {"R", p.R}, {"g", p.g}, {"z0", p.z0}, {"L", p.L}};
    if (!p.inertia_defaulted) phys["J"] = p.J;
    doc["physical"] = phys;

    const ExcitationParams& e = cfg.excitation;
    if (e.origin) {
        doc["excitation"] = {{"A", e.A}, {"v", e.origin->v}, {"d", e.origin->d}};
    } else {
        doc["excitation"] = {{"A", e.A}, {"Omega", e.Omega}, {"theta", e.theta}};
    }
    if (cfg.gains) doc["gains"] = {{"Kp", cfg.gains->Kp}, {"Kd", cfg.gains->Kd}};
    if (cfg.hybrid) doc["hybrid"] = {{"beta", cfg.hybrid->beta}, {"gamma", cfg.hybrid->gamma}};

    const RunOptions& o = cfg.options;
    json opts = {{"rtol", o.rtol},
                 {"atol", o.atol},
                 {"eps", o.eps},
                 {"threads", o.threads},
                 {"mode", to_string(o.mode)},
                 {"kd_range", o.kd_range},
                 {"chart_samples", o.chart_samples},
                 {"periods", o.periods},
                 {"samples_per_period", o.samples_per_period},
                 {"perturbation", o.perturbation},
                 {"ellipse_points", o.ellipse_points}};
    if (o.grid) {
        opts["grid"] = {
            {"kp", o.grid->kp}, {"kd", o.grid->kd}, {"nx", o.grid->nx}, {"ny", o.grid->ny}};
    }
    doc["options"] = opts;
    return doc;
}

}  // namespace levstab
