// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "levstab/levstab.h"

namespace {

struct Config {
    levstab_config* p = nullptr;
    Config() { REQUIRE(levstab_config_baseline(&p) == LEVSTAB_OK); }
    ~Config() { levstab_config_free(p); }
};

}  // namespace

TEST_CASE("version and error reporting") {
    CHECK(std::string(levstab_version()) == "1.0.0");
    levstab_config* cfg = nullptr;
    CHECK(levstab_config_parse("{broken", &cfg) == LEVSTAB_BAD_INPUT);
    CHECK(cfg == nullptr);
    CHECK(std::strlen(levstab_last_error()) > 0);
    CHECK(levstab_config_load("/nonexistent.json", &cfg) == LEVSTAB_BAD_INPUT);
    CHECK(levstab_config_baseline(nullptr) == LEVSTAB_BAD_INPUT);
    levstab_config_free(nullptr);
    levstab_string_free(nullptr);
}

TEST_CASE("config round trip") {
    Config c;
    REQUIRE(levstab_config_set_theta(c.p, 1.0) == LEVSTAB_OK);
    REQUIRE(levstab_config_set_gains(c.p, 25000.0, 1500.0) == LEVSTAB_OK);
    char* text = nullptr;
    REQUIRE(levstab_config_to_json(c.p, &text) == LEVSTAB_OK);
    levstab_config* again = nullptr;
    CHECK(levstab_config_parse(text, &again) == LEVSTAB_OK);
    char* text2 = nullptr;
    REQUIRE(levstab_config_to_json(again, &text2) == LEVSTAB_OK);
    CHECK(std::string(text) == std::string(text2));
    levstab_string_free(text);
    levstab_string_free(text2);
    levstab_config_free(again);
}

TEST_CASE("setters validate before changing the config") {
    Config c;
    CHECK(levstab_config_set_mode(c.p, "hybrid") == LEVSTAB_BAD_INPUT);
    CHECK(levstab_config_set_mode(c.p, "sideways") == LEVSTAB_BAD_INPUT);
    CHECK(levstab_config_set_grid(c.p, 5.0, 1.0, 0.0, 1.0, 3, 3) == LEVSTAB_BAD_INPUT);
    double kp_lo = 0;
    CHECK(levstab_config_get_grid(c.p, &kp_lo, nullptr, nullptr, nullptr, nullptr, nullptr) ==
          LEVSTAB_BAD_INPUT);
    CHECK(levstab_config_set_periods(c.p, -1.0) == LEVSTAB_BAD_INPUT);
    CHECK(levstab_config_set_threads(c.p, -2) == LEVSTAB_BAD_INPUT);
    CHECK(levstab_config_set_kd_range(c.p, -1.0, 5.0) == LEVSTAB_BAD_INPUT);
    CHECK(levstab_config_set_gains(c.p, NAN, 1.0) == LEVSTAB_BAD_INPUT);
    char* text = nullptr;
    REQUIRE(levstab_config_to_json(c.p, &text) == LEVSTAB_OK);
    CHECK(std::string(text).find("hybrid") == std::string::npos);
    levstab_string_free(text);
}

TEST_CASE("closed forms") {
    Config c;
    double w1 = 0, w2 = 0;
    REQUIRE(levstab_natural_frequencies(c.p, 2000.0, &w1, &w2) == LEVSTAB_OK);
    CHECK(w2 / w1 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    double e[4];
    REQUIRE(levstab_ellipse(c.p, 'b', e) == LEVSTAB_OK);
    CHECK(e[1] == doctest::Approx(7064.5776).epsilon(1e-6));
    CHECK(levstab_ellipse(c.p, 'q', e) == LEVSTAB_BAD_INPUT);
    REQUIRE(levstab_ellipse(c.p, 'c', e) == LEVSTAB_OK);
    CHECK(e[2] == 0.0);
}

TEST_CASE("multipliers at the centre of ellipse b") {
    Config c;
    double e[4];
    REQUIRE(levstab_ellipse(c.p, 'b', e) == LEVSTAB_OK);
    double re[6], im[6];
    levstab_class cls;
    REQUIRE(levstab_multipliers(c.p, e[0], e[1], re, im, &cls) == LEVSTAB_OK);
    CHECK(cls == LEVSTAB_PARAMETRIC_OSCILLATORY);
    CHECK(re[0] < -1.0);
    CHECK(std::hypot(re[0], im[0]) >= std::hypot(re[5], im[5]));
}

TEST_CASE("map handle") {
    Config c;
    levstab_map* m = nullptr;
    CHECK(levstab_map_compute(c.p, &m) == LEVSTAB_BAD_INPUT);
    REQUIRE(levstab_config_set_grid(c.p, 5000.0, 40000.0, 0.0, 8000.0, 3, 2) == LEVSTAB_OK);
    REQUIRE(levstab_map_compute(c.p, &m) == LEVSTAB_OK);
    size_t nx = 0, ny = 0;
    REQUIRE(levstab_map_size(m, &nx, &ny) == LEVSTAB_OK);
    CHECK(nx == 3);
    CHECK(ny == 2);
    double kp, kd, mu;
    levstab_class cls;
    REQUIRE(levstab_map_cell(m, 2, 1, &kp, &kd, &cls, &mu) == LEVSTAB_OK);
    CHECK(kp == 40000.0);
    CHECK(kd == 8000.0);
    CHECK(levstab_map_cell(m, 3, 0, &kp, &kd, &cls, &mu) == LEVSTAB_BAD_INPUT);
    CHECK(levstab_map_error_count(m) == 0);
    levstab_map_free(m);
}

TEST_CASE("trajectory handle") {
    Config c;
    levstab_trajectory* t = nullptr;
    CHECK(levstab_simulate(c.p, &t) == LEVSTAB_BAD_INPUT);
    REQUIRE(levstab_config_set_gains(c.p, 15000.0, 10000.0) == LEVSTAB_OK);
    REQUIRE(levstab_config_set_periods(c.p, 1.0) == LEVSTAB_OK);
    REQUIRE(levstab_simulate(c.p, &t) == LEVSTAB_OK);
    CHECK(levstab_trajectory_completed(t) == 1);
    const size_t n = levstab_trajectory_length(t);
    CHECK(n == 51);
    double time, x[6];
    REQUIRE(levstab_trajectory_sample(t, n - 1, &time, x) == LEVSTAB_OK);
    CHECK(time == doctest::Approx(2.0 * M_PI / 80.0));
    CHECK(x[0] == doctest::Approx(0.015));
    CHECK(levstab_trajectory_sample(t, n, &time, x) == LEVSTAB_BAD_INPUT);
    levstab_trajectory_free(t);
}

TEST_CASE("run_command") {
    Config c;
    const auto dir = std::filesystem::temp_directory_path() / "levstab_capi_cmd";
    std::filesystem::remove_all(dir);
    char* summary = nullptr;
    CHECK(levstab_run_command(c.p, "ellipses", dir.c_str(), "json", 0, &summary) == LEVSTAB_OK);
    REQUIRE(summary != nullptr);
    CHECK(std::string(summary).find("order_by_k1") != std::string::npos);
    levstab_string_free(summary);
    CHECK(std::filesystem::exists(dir / "ellipses.json"));
    CHECK(levstab_run_command(c.p, "bogus", dir.c_str(), "csv", 0, nullptr) == LEVSTAB_BAD_INPUT);
    std::filesystem::remove_all(dir);
}
