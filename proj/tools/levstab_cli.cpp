// levstab: stability analysis of a two-magnet suspended vehicle under base
// excitation. Thin front end over the C interface.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levstab/levstab.h"

namespace {

struct Args {
    std::string config;
    std::string out = ".";
    std::string format = "csv";
    std::optional<double> kp, kd, theta, periods;
    std::optional<std::string> grid, kp_range, kd_range, mode;
    std::optional<int> threads;
    bool overlay = false;
};

std::string expected(std::size_t count) {
    return "expected " + std::to_string(count) + " comma-separated numbers";
}

std::vector<double> numbers(const std::string& text, std::size_t count, const char* flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw CLI::ValidationError(flag, expected(count));
        }
        v.push_back(x);
    }
    if (v.size() != count) throw CLI::ValidationError(flag, expected(count));
    return v;
}

void add_common(CLI::App* sub, Args& a) {
    sub->add_option("--config", a.config, "JSON config file (default: reference vehicle)");
    sub->add_option("--out", a.out, "output directory")->capture_default_str();
    sub->add_option("--format", a.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--theta", a.theta, "phase shift between supports (rad)");
    sub->add_option("--kp", a.kp, "proportional gain (V/m)");
    sub->add_option("--kd", a.kd, "derivative gain (V s/m)");
    sub->add_option("--grid", a.grid, "map grid size nx,ny");
    sub->add_option("--kp-range", a.kp_range, "map Kp range lo,hi");
    sub->add_option("--kd-range", a.kd_range, "map or chart Kd range lo,hi");
    sub->add_option("--periods", a.periods, "simulate/steady-state length in excitation periods");
    sub->add_option("--mode", a.mode, "standard or hybrid")
        ->check(CLI::IsMember({"standard", "hybrid"}));
    sub->add_option("--threads", a.threads, "worker threads, 0 = auto");
    sub->add_flag("--overlay", a.overlay, "map: also write analytic ellipse boundaries");
}

int report(levstab_status s) {
    if (s != LEVSTAB_OK) std::fprintf(stderr, "levstab: %s\n", levstab_last_error());
    return static_cast<int>(s);
}

// Applies command-line overrides on top of the loaded configuration.
levstab_status apply(levstab_config* cfg, const Args& a, const std::string& command) {
    levstab_status s = LEVSTAB_OK;
    auto step = [&](levstab_status r) {
        if (s == LEVSTAB_OK) s = r;
    };
    if (a.theta) step(levstab_config_set_theta(cfg, *a.theta));
    if (a.kp || a.kd) {
        if (!(a.kp && a.kd)) {
            std::fprintf(stderr, "levstab: --kp and --kd must be given together\n");
            return LEVSTAB_BAD_INPUT;
        }
        step(levstab_config_set_gains(cfg, *a.kp, *a.kd));
    }
    if (a.mode) step(levstab_config_set_mode(cfg, a.mode->c_str()));
    if (a.periods) step(levstab_config_set_periods(cfg, *a.periods));
    if (a.threads) step(levstab_config_set_threads(cfg, *a.threads));
    if (command == "resonance-chart" && a.kd_range) {
        const auto r = numbers(*a.kd_range, 2, "--kd-range");
        step(levstab_config_set_kd_range(cfg, r[0], r[1]));
    }
    if (command == "map" && (a.grid || a.kp_range || a.kd_range)) {
        // unspecified parts keep the configured grid
        double kp[2] = {0.0, 0.0}, kd[2] = {0.0, 0.0};
        int n[2] = {101, 101};
        const bool have = levstab_config_get_grid(
                              cfg, &kp[0], &kp[1], &kd[0], &kd[1], &n[0], &n[1]) == LEVSTAB_OK;
        if (!have && !(a.kp_range && a.kd_range)) {
            std::fprintf(stderr,
                         "levstab: the config has no grid; give --kp-range and --kd-range\n");
            return LEVSTAB_BAD_INPUT;
        }
        if (a.grid) {
            const auto v = numbers(*a.grid, 2, "--grid");
            n[0] = static_cast<int>(v[0]);
            n[1] = static_cast<int>(v[1]);
        }
        if (a.kp_range) {
            const auto v = numbers(*a.kp_range, 2, "--kp-range");
            kp[0] = v[0];
            kp[1] = v[1];
        }
        if (a.kd_range) {
            const auto v = numbers(*a.kd_range, 2, "--kd-range");
            kd[0] = v[0];
            kd[1] = v[1];
        }
        step(levstab_config_set_grid(cfg, kp[0], kp[1], kd[0], kd[1], n[0], n[1]));
    }
    return s;
}

int run(const std::string& command, const Args& a) {
    levstab_config* cfg = nullptr;
    levstab_status s = a.config.empty() ? levstab_config_baseline(&cfg)
                                        : levstab_config_load(a.config.c_str(), &cfg);
    if (s != LEVSTAB_OK) return report(s);
    s = apply(cfg, a, command);
    if (s != LEVSTAB_OK) {
        levstab_config_free(cfg);
        return report(s);
    }
    char* summary = nullptr;
    s = levstab_run_command(
        cfg, command.c_str(), a.out.c_str(), a.format.c_str(), a.overlay ? 1 : 0, &summary);
    if (summary) {
        std::printf("%s\n", summary);
        levstab_string_free(summary);
    }
    levstab_config_free(cfg);
    return report(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stability analysis of a two-magnet suspended vehicle under base excitation"};
    app.set_version_flag("--version", std::string(levstab_version()));
    app.require_subcommand(1);

    Args args;
    const std::vector<std::pair<const char*, const char*>> commands = {
        {"ellipses", "closed-form parametric-resonance ellipses and their boundaries"},
        {"map", "Floquet stability map over a (Kp, Kd) grid"},
        {"validate", "run the cross-validation battery"},
        {"simulate", "integrate the nonlinear plant from its steady state"},
        {"resonance-chart", "natural-frequency curves and resonance intersections"},
        {"steady-state", "sample the periodic steady state"},
        {"spectrum", "eigenvalues of the unexcited system at the given gains"},
    };
    std::string chosen;
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        add_common(sub, args);
        sub->callback([&chosen, n = std::string(name)] { chosen = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : LEVSTAB_BAD_INPUT;
    }
    try {
        return run(chosen, args);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "levstab: %s\n", e.what());
        return LEVSTAB_BAD_INPUT;
    }
}
