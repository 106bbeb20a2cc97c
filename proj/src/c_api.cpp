#include "levstab/levstab.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "levstab/commands.hpp"
#include "levstab/config.hpp"
#include "levstab/error.hpp"
#include "levstab/exports.hpp"
#include "levstab/floquet.hpp"

struct levstab_config {
    levstab::RunConfig cfg;
};

struct levstab_map {
    levstab::StabilityMap map;
};

struct levstab_trajectory {
    levstab::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

levstab_status fail(levstab_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
levstab_status guard(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const levstab::Error& e) {
        return fail(static_cast<levstab_status>(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(LEVSTAB_RUNTIME_ERROR, "out of memory");
    } catch (const std::exception& e) {
        return fail(LEVSTAB_RUNTIME_ERROR, e.what());
    } catch (...) {
        return fail(LEVSTAB_RUNTIME_ERROR, "unknown error");
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

levstab_class to_c(levstab::StabilityClass c) {
    switch (c) {
        case levstab::StabilityClass::Stable: return LEVSTAB_STABLE;
        case levstab::StabilityClass::Divergence: return LEVSTAB_DIVERGENCE;
        case levstab::StabilityClass::ParametricOscillatory: return LEVSTAB_PARAMETRIC_OSCILLATORY;
        case levstab::StabilityClass::Marginal: return LEVSTAB_MARGINAL;
        case levstab::StabilityClass::Error: return LEVSTAB_CELL_ERROR;
    }
    return LEVSTAB_CELL_ERROR;
}

void require(const void* p, const char* what) {
    if (!p) throw levstab::InvalidParameter(std::string(what) + " must not be NULL");
}

// Applies a change to a copy and keeps it only if the result validates.
template <class F>
levstab_status modify(levstab_config* cfg, F&& change) {
    return guard([&] {
        require(cfg, "cfg");
        levstab::RunConfig next = cfg->cfg;
        change(next);
        levstab::validate(next);
        cfg->cfg = std::move(next);
        return LEVSTAB_OK;
    });
}

levstab_status emit_config(levstab::RunConfig cfg, levstab_config** out) {
    require(out, "out");
    *out = new levstab_config{std::move(cfg)};
    return LEVSTAB_OK;
}

}  // namespace

extern "C" {

const char* levstab_version(void) { return levstab::kVersion.data(); }

const char* levstab_last_error(void) { return g_last_error.c_str(); }

void levstab_string_free(char* s) { std::free(s); }

levstab_status levstab_config_load(const char* path, levstab_config** out) {
    return guard([&] {
        require(path, "path");
        return emit_config(levstab::load_config(path), out);
    });
}

levstab_status levstab_config_parse(const char* json_text, levstab_config** out) {
    return guard([&] {
        require(json_text, "json_text");
        return emit_config(levstab::parse_config_text(json_text), out);
    });
}

levstab_status levstab_config_baseline(levstab_config** out) {
    return guard([&] {
        levstab::RunConfig cfg;
        cfg.physical = levstab::baseline_params();
        cfg.excitation = levstab::baseline_excitation(0.0);
        return emit_config(cfg, out);
    });
}

levstab_status levstab_config_to_json(const levstab_config* cfg, char** json_text) {
    return guard([&] {
        require(cfg, "cfg");
        require(json_text, "json_text");
        *json_text = dup(levstab::to_json(cfg->cfg).dump(2));
        return LEVSTAB_OK;
    });
}

void levstab_config_free(levstab_config* cfg) { delete cfg; }

levstab_status levstab_config_set_theta(levstab_config* cfg, double theta) {
    return modify(cfg, [&](levstab::RunConfig& c) {
        if (!std::isfinite(theta)) throw levstab::InvalidParameter("theta must be finite");
        c.excitation.theta = levstab::normalize_angle(theta);
        c.excitation.origin.reset();
    });
}

levstab_status levstab_config_set_gains(levstab_config* cfg, double kp, double kd) {
    return modify(cfg, [&](levstab::RunConfig& c) { c.gains = levstab::ControlGains{kp, kd}; });
}

levstab_status levstab_config_set_grid(levstab_config* cfg, double kp_lo, double kp_hi,
                                       double kd_lo, double kd_hi, int nx, int ny) {
    return modify(cfg, [&](levstab::RunConfig& c) {
        c.options.grid = levstab::GridSpec{{kp_lo, kp_hi}, {kd_lo, kd_hi}, nx, ny};
    });
}

levstab_status levstab_config_get_grid(const levstab_config* cfg, double* kp_lo, double* kp_hi,
                                       double* kd_lo, double* kd_hi, int* nx, int* ny) {
    return guard([&] {
        require(cfg, "cfg");
        const auto& g = cfg->cfg.options.grid;
        if (!g) throw levstab::InvalidParameter("config has no grid");
        if (kp_lo) *kp_lo = g->kp[0];
        if (kp_hi) *kp_hi = g->kp[1];
        if (kd_lo) *kd_lo = g->kd[0];
        if (kd_hi) *kd_hi = g->kd[1];
        if (nx) *nx = g->nx;
        if (ny) *ny = g->ny;
        return LEVSTAB_OK;
    });
}

levstab_status levstab_config_set_kd_range(levstab_config* cfg, double lo, double hi) {
    return modify(cfg, [&](levstab::RunConfig& c) { c.options.kd_range = {lo, hi}; });
}

levstab_status levstab_config_set_periods(levstab_config* cfg, double periods) {
    return modify(cfg, [&](levstab::RunConfig& c) { c.options.periods = periods; });
}

levstab_status levstab_config_set_mode(levstab_config* cfg, const char* mode) {
    return modify(cfg, [&](levstab::RunConfig& c) {
        require(mode, "mode");
        const std::string m = mode;
        if (m == "standard") {
            c.options.mode = levstab::PlantMode::Standard;
        } else if (m == "hybrid") {
            c.options.mode = levstab::PlantMode::Hybrid;
        } else {
            throw levstab::InvalidParameter("mode must be standard or hybrid");
        }
    });
}

levstab_status levstab_config_set_threads(levstab_config* cfg, int threads) {
    return modify(cfg, [&](levstab::RunConfig& c) { c.options.threads = threads; });
}

levstab_status levstab_natural_frequencies(const levstab_config* cfg, double kd, double* omega1,
                                           double* omega2) {
    return guard([&] {
        require(cfg, "cfg");
        const levstab::NaturalFrequencies nf = levstab::natural_frequencies(cfg->cfg.physical, kd);
        if (omega1) *omega1 = nf.omega1;
        if (omega2) *omega2 = nf.omega2;
        return LEVSTAB_OK;
    });
}

levstab_status levstab_ellipse(const levstab_config* cfg, char kind, double out[4]) {
    return guard([&] {
        require(cfg, "cfg");
        require(out, "out");
        const levstab::Ellipse e = levstab::ellipse(
            levstab::ellipse_kind_from_char(kind), cfg->cfg.physical, cfg->cfg.excitation);
        out[0] = e.h1;
        out[1] = e.h2;
        out[2] = e.k1;
        out[3] = e.k2;
        return LEVSTAB_OK;
    });
}

levstab_status levstab_multipliers(const levstab_config* cfg, double kp, double kd, double re[6],
                                   double im[6], levstab_class* cls) {
    return guard([&] {
        require(cfg, "cfg");
        const levstab::PlantModel model = cfg->cfg.plant();
        const levstab::MonodromyResult r =
            levstab::monodromy(levstab::linear_system(model, {kp, kd}), cfg->cfg.floquet());
        for (int i = 0; i < 6; ++i) {
            if (re) re[i] = r.multipliers[i].real();
            if (im) im[i] = r.multipliers[i].imag();
        }
        if (cls) *cls = to_c(levstab::classify(r, cfg->cfg.options.eps));
        return LEVSTAB_OK;
    });
}

levstab_status levstab_map_compute(const levstab_config* cfg, levstab_map** out) {
    return guard([&] {
        require(cfg, "cfg");
        require(out, "out");
        const auto& grid = cfg->cfg.options.grid;
        if (!grid) throw levstab::InvalidParameter("config has no grid");
        auto m = std::make_unique<levstab_map>();
        m->map = levstab::sweep(cfg->cfg.plant(),
                                {grid->kp[0], grid->kp[1], grid->nx},
                                {grid->kd[0], grid->kd[1], grid->ny},
                                cfg->cfg.floquet());
        *out = m.release();
        return LEVSTAB_OK;
    });
}

levstab_status levstab_map_size(const levstab_map* map, size_t* nx, size_t* ny) {
    return guard([&] {
        require(map, "map");
        if (nx) *nx = map->map.nx();
        if (ny) *ny = map->map.ny();
        return LEVSTAB_OK;
    });
}

levstab_status levstab_map_cell(const levstab_map* map, size_t ix, size_t iy, double* kp,
                                double* kd, levstab_class* cls, double* max_mu_abs) {
    return guard([&] {
        require(map, "map");
        const levstab::StabilityMap& m = map->map;
        if (ix >= m.nx() || iy >= m.ny())
            throw levstab::InvalidParameter("cell index out of range");
        const std::size_t i = m.index(ix, iy);
        if (kp) *kp = m.kp[ix];
        if (kd) *kd = m.kd[iy];
        if (cls) *cls = to_c(m.cls[i]);
        if (max_mu_abs) *max_mu_abs = m.max_mu[i];
        return LEVSTAB_OK;
    });
}

size_t levstab_map_error_count(const levstab_map* map) { return map ? map->map.error_count() : 0; }

void levstab_map_free(levstab_map* map) { delete map; }

levstab_status levstab_simulate(const levstab_config* cfg, levstab_trajectory** out) {
    return guard([&] {
        require(cfg, "cfg");
        require(out, "out");
        const levstab::RunConfig& c = cfg->cfg;
        if (!c.gains) throw levstab::InvalidParameter("simulate needs gains");
        const levstab::PlantModel model = c.plant();
        levstab::StateVector x = levstab::steady_vehicle_state(model, 0.0).as_vector();
        for (int i = 0; i < 6; ++i) x[i] += c.options.perturbation[i];
        levstab::IntegrationOptions io;
        io.rtol = c.options.rtol;
        io.atol = c.options.atol;
        io.samples = std::max(
            1, static_cast<int>(std::ceil(c.options.periods * c.options.samples_per_period)));
        auto t = std::make_unique<levstab_trajectory>();
        t->traj = levstab::integrate(levstab::VehicleState::from_vector(x),
                                     0.0,
                                     c.options.periods * c.excitation.period(),
                                     model,
                                     io);
        *out = t.release();
        return LEVSTAB_OK;
    });
}

size_t levstab_trajectory_length(const levstab_trajectory* traj) {
    return traj ? traj->traj.t.size() : 0;
}

levstab_status levstab_trajectory_sample(const levstab_trajectory* traj, size_t i, double* t,
                                         double state[6]) {
    return guard([&] {
        require(traj, "traj");
        if (i >= traj->traj.t.size()) throw levstab::InvalidParameter("sample index out of range");
        if (t) *t = traj->traj.t[i];
        if (state) {
            const levstab::StateVector v = traj->traj.states[i].as_vector();
            for (int k = 0; k < 6; ++k) state[k] = v[k];
        }
        return LEVSTAB_OK;
    });
}

int levstab_trajectory_completed(const levstab_trajectory* traj) {
    return traj && traj->traj.completed() ? 1 : 0;
}

const char* levstab_trajectory_message(const levstab_trajectory* traj) {
    return traj ? traj->traj.message.c_str() : "";
}

void levstab_trajectory_free(levstab_trajectory* traj) { delete traj; }

levstab_status levstab_run_command(const levstab_config* cfg, const char* command,
                                   const char* out_dir, const char* format, int overlay,
                                   char** summary_json) {
    if (summary_json) *summary_json = nullptr;
    return guard([&] {
        require(cfg, "cfg");
        require(command, "command");
        levstab::CommandRequest req;
        req.command = command;
        if (out_dir) req.out_dir = out_dir;
        if (format) req.format = format;
        req.overlay = overlay != 0;
        const levstab::CommandResult r = levstab::run_command(cfg->cfg, req);
        if (summary_json) *summary_json = dup(r.summary.dump(2));
        if (r.exit_code != 0) {
            g_last_error = req.command + " finished with status " + std::to_string(r.exit_code);
        }
        return static_cast<levstab_status>(r.exit_code);
    });
}

}  // extern "C"
