#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "levstab/exports.hpp"

using namespace levstab;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

int line_count(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST_CASE("doubles reload bit for bit") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 12345678.901234567, 0.0, 7650.0}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("ellipse tables") {
    const PhysicalParams p = baseline_params();
    const auto all = all_ellipses(p, baseline_excitation(0.0));
    const std::vector<Ellipse> list(all.begin(), all.end());
    const std::string csv = ellipses_csv(list, p);
    CHECK(first_line(csv) == "kind,h1,h2,k1,k2,eta_geometric,eta_printed,degenerate");
    CHECK(line_count(csv) == 5);
    CHECK(csv.find("\r") == std::string::npos);
    const std::string b = ellipse_boundary_csv(all[0], 10);
    CHECK(first_line(b) == "s,Kp,Kd");
    CHECK(line_count(b) == 11);
    const std::string o = ellipse_overlay_csv(list, 10);
    CHECK(first_line(o) == "kind,s,Kp,Kd");
    CHECK(line_count(o) == 21);  // c and d are degenerate at theta = 0
    const auto j = ellipse_json(all[1], p);
    CHECK(j["kind"] == "b");
    CHECK(j["degenerate"] == false);
}

TEST_CASE("map export") {
    PlantModel m;
    m.params = baseline_params();
    m.exc = baseline_excitation(0.0);
    const StabilityMap map = sweep(m, {5000.0, 30000.0, 3}, {500.0, 2500.0, 2});
    const std::string csv = map_csv(map);
    CHECK(first_line(csv) == "Kp,Kd,class,max_mu_abs");
    CHECK(line_count(csv) == 7);
    const auto j = map_json(map);
    CHECK(j["cells"].size() == 6);
    const auto s = map_summary(map, {});
    CHECK(s["cell_errors"].empty());
    int total = 0;
    for (const auto& [k, v] : s["class_counts"].items()) total += v.get<int>();
    CHECK(total == 6);
}

TEST_CASE("trajectory export") {
    PlantModel m;
    m.params = baseline_params();
    m.exc = baseline_excitation(0.0);
    m.gains = {25000.0, 1500.0};
    IntegrationOptions o;
    o.samples = 5;
    const Trajectory tr = integrate(steady_vehicle_state(m, 0.0), 0.0, m.exc.period(), m, o);
    const std::string csv = trajectory_csv(tr, m.params, m.exc);
    CHECK(first_line(csv) == "t,z,zdot,phi,phidot,I1,I2,gap1,gap2");
    CHECK(line_count(csv) == 7);
    const auto j = trajectory_json(tr, m.params, m.exc);
    CHECK(j["rows"].size() == 6);
    CHECK(j["status"] == "completed");
}

TEST_CASE("spectrum, chart and steady-state exports") {
    const PhysicalParams p = baseline_params();
    const std::string sp = spectrum_csv(unexcited_spectrum(p, {25000.0, 1500.0}));
    CHECK(first_line(sp) == "subsystem,re,im");
    CHECK(line_count(sp) == 7);
    const ResonanceChart c = resonance_chart(p, 80.0, 0.0, 1e4, 5);
    CHECK(first_line(chart_samples_csv(c)) == "Kd,omega1,omega2,sum,difference");
    CHECK(line_count(chart_intersections_csv(c)) == 9);
    std::vector<SteadyStateSample> ss = {steady_state(p, baseline_excitation(1.0), 0.0)};
    CHECK(first_line(steady_state_csv(ss)).rfind("t,gap1,gap2", 0) == 0);
    CHECK(steady_state_json(ss).is_object());
}
