// Runs the command-line tool and checks exit codes and outputs.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "levstab_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int cli(const std::string& args) {
    const std::string cmd = std::string(LEVSTAB_CLI) + " " + args + " > " +
                            (workdir() / "stdout.txt").string() + " 2> " +
                            (workdir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string out(const char* name) { return (workdir() / name).string(); }

nlohmann::json read_json(const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("help and usage errors") {
    CHECK(cli("--help") == 0);
    CHECK(cli("--version") == 0);
    CHECK(cli("") == 2);
    CHECK(cli("teleport") == 2);
    CHECK(cli("ellipses --format xml") == 2);
    CHECK(cli("ellipses --theta abc") == 2);
    CHECK(cli("ellipses --kp 1000") == 2);
    CHECK(cli("map --grid 5,5 --kp-range 1,2,3 --kd-range 0,1") == 2);
    CHECK(cli("ellipses --config /nonexistent.json") == 2);
}

TEST_CASE("ellipses") {
    CHECK(cli("ellipses --theta 1.5707963267948966 --out " + out("ell")) == 0);
    CHECK(fs::exists(out("ell") + "/ellipses.csv"));
    const auto summary = read_json(workdir() / "stdout.txt");
    CHECK(summary["order_by_k1"] == "a<c<b<d");
    const auto meta = read_json(fs::path(out("ell")) / "ellipses.meta.json");
    CHECK(meta["config"]["excitation"]["theta"] == doctest::Approx(1.5707963267948966));
}

TEST_CASE("map needs a grid and writes one") {
    CHECK(cli("map --out " + out("nomap")) == 2);
    CHECK(cli("map --kp-range 5000,40000 --kd-range 0,8000 --grid 5,4 --overlay --out " +
              out("map")) == 0);
    std::ifstream in(out("map") + "/map.csv");
    int lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    CHECK(lines == 21);
    CHECK(fs::exists(out("map") + "/map_ellipses.csv"));
    // the exported metadata reloads as a config and keeps the grid
    CHECK(cli("map --config " + out("map") + "/map.meta.json --grid 3,3 --format json --out " +
              out("map2")) == 0);
    CHECK(read_json(fs::path(out("map2")) / "map.json")["cells"].size() == 9);
}

TEST_CASE("simulate") {
    CHECK(cli("simulate --out " + out("sim0")) == 2);
    CHECK(cli("simulate --kp 15000 --kd 10000 --periods 2 --out " + out("sim")) == 0);
    CHECK(fs::exists(out("sim") + "/trajectory.csv"));

    const fs::path cfg = workdir() / "open_loop.json";
    std::ofstream(cfg) << R"({
      "physical": {"m": 7650, "C": 0.05, "R": 9.71, "z0": 0.015},
      "excitation": {"A": 0.005, "Omega": 80},
      "gains": {"Kp": 0, "Kd": 0},
      "options": {"periods": 40, "perturbation": [-0.001, 0, 0, 0, 0, 0]}
    })";
    CHECK(cli("simulate --config " + cfg.string() + " --out " + out("sim_closed")) == 3);
    CHECK(fs::exists(out("sim_closed") + "/trajectory.csv"));
}

TEST_CASE("other commands") {
    CHECK(cli("resonance-chart --kd-range 0,60000 --out " + out("chart")) == 0);
    CHECK(cli("steady-state --periods 1 --format json --out " + out("ss")) == 0);
    CHECK(cli("spectrum --kp 15000 --kd 10000 --out " + out("spec")) == 0);
    CHECK(cli("ellipses --mode hybrid --out " + out("hyb")) == 2);
}

TEST_CASE("validate") {
    CHECK(cli("validate --format json --out " + out("val")) == 0);
    const auto report = read_json(fs::path(out("val")) / "validation.json");
    CHECK(report["passed"] == true);
    CHECK(report["criteria"].size() == 13);
}
