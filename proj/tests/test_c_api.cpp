#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "levent/levent.h"

namespace {

// Frees the handle at scope exit so failing checks do not leak.
struct Params {
  levent_params* p = nullptr;
  ~Params() { levent_params_destroy(p); }
};

struct Sweep {
  levent_sweep* s = nullptr;
  ~Sweep() { levent_sweep_destroy(s); }
};

std::string slurp(const char* path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_SUITE("c_api") {

TEST_CASE("version and status strings") {
  CHECK(std::string(levent_version()).size() > 0);
  CHECK(std::string(levent_status_string(LEVENT_OK)) == "ok");
  CHECK(std::string(levent_status_string(LEVENT_ERR_UNSTABLE)) == "unstable");
  CHECK(std::string(levent_status_string(static_cast<levent_status>(99))).size() > 0);
}

TEST_CASE("parameter sets") {
  Params a;
  REQUIRE(levent_params_create(&a.p) == LEVENT_OK);
  double v = 0;
  CHECK(levent_params_get(a.p, "lambda1_khz", &v) == LEVENT_OK);
  CHECK(v == 100);
  CHECK(levent_params_set(a.p, "lambda2_khz", "70") == LEVENT_OK);
  CHECK(levent_params_validate(a.p) == LEVENT_OK);

  Params b;
  REQUIRE(levent_params_clone(a.p, &b.p) == LEVENT_OK);
  CHECK(levent_params_set(a.p, "lambda2_khz", "10") == LEVENT_OK);
  CHECK(levent_params_get(b.p, "lambda2_khz", &v) == LEVENT_OK);
  CHECK(v == 70);

  CHECK(levent_params_set(a.p, "lambda9_khz", "1") == LEVENT_ERR_CONFIG);
  CHECK(std::string(levent_last_error()).find("lambda9_khz") != std::string::npos);
  CHECK(levent_params_set(a.p, "q", "often") == LEVENT_ERR_CONFIG);
  CHECK(levent_params_get(a.p, "nope", &v) == LEVENT_ERR_CONFIG);
  CHECK(levent_params_set(a.p, "q", "-5") == LEVENT_OK);
  CHECK(levent_params_validate(a.p) == LEVENT_ERR_CONFIG);
}

TEST_CASE("loading a parameter file") {
  {
    std::ofstream out("capi.cfg");
    out << "# test\nlambda2_khz = 40\nvariant = cs-only-rwa\n";
  }
  Params p;
  REQUIRE(levent_params_load("capi.cfg", &p.p) == LEVENT_OK);
  double v = 0;
  CHECK(levent_params_get(p.p, "lambda2_khz", &v) == LEVENT_OK);
  CHECK(v == 40);
  levent_report r;
  CHECK(levent_run_point(p.p, nullptr, 0, &r) == LEVENT_OK);
  CHECK(r.k_used == 0);

  Params missing;
  CHECK(levent_params_load("no_such_file.cfg", &missing.p) == LEVENT_ERR_CONFIG);
  CHECK(missing.p == nullptr);
  std::remove("capi.cfg");
}

TEST_CASE("single points") {
  Params p;
  REQUIRE(levent_params_create(&p.p) == LEVENT_OK);
  levent_report r;
  REQUIRE(levent_run_point(p.p, "full-rwa", 0, &r) == LEVENT_OK);
  CHECK(r.stable == 1);
  CHECK(r.log_negativity > 0);
  CHECK(r.residual < 1e-3);
  CHECK(r.error[0] == '\0');

  REQUIRE(levent_params_set(p.p, "lambda2_khz", "100") == LEVENT_OK);
  CHECK(levent_run_point(p.p, "cs-only-rwa", 0, &r) == LEVENT_ERR_UNSTABLE);
  CHECK(r.stable == 0);
  CHECK(std::isnan(r.log_negativity));
  CHECK(std::isnan(r.epr_variance));
  CHECK(std::isnan(r.purity));

  CHECK(levent_run_point(p.p, "bogus", 0, &r) == LEVENT_ERR_CONFIG);
}

TEST_CASE("covariance output") {
  Params p;
  REQUIRE(levent_params_create(&p.p) == LEVENT_OK);
  REQUIRE(levent_write_point_covariance(p.p, "cs-only-rwa", 0, "capi_cov.txt") == LEVENT_OK);
  CHECK(slurp("capi_cov.txt").size() > 0);
  std::remove("capi_cov.txt");
  CHECK(levent_write_point_covariance(p.p, "full-rwa", 0, "/nonexistent/dir/cov.txt") == LEVENT_ERR_IO);
}

TEST_CASE("sweeps") {
  Params p;
  REQUIRE(levent_params_create(&p.p) == LEVENT_OK);
  const double grid[] = {0.5, 1.0, 1.5};
  Sweep s;
  REQUIRE(levent_sweep_create(p.p, "cs-only-rwa", "lambda2_ratio", grid, 3, 0, "cs", &s.s) == LEVENT_OK);
  CHECK(levent_sweep_row_count(s.s) == 0);
  CHECK(levent_sweep_row(s.s, 0, nullptr, nullptr) == LEVENT_ERR_INVALID_STATE);
  CHECK(levent_sweep_write_csv(s.s, "capi.csv") == LEVENT_ERR_INVALID_STATE);
  REQUIRE(levent_sweep_run(s.s, 2) == LEVENT_OK);
  REQUIRE(levent_sweep_row_count(s.s) == 3);

  double value = 0;
  levent_report r;
  CHECK(levent_sweep_row(s.s, 0, &value, &r) == LEVENT_OK);
  CHECK(value == 0.5);
  CHECK(r.stable == 1);
  CHECK(levent_sweep_row(s.s, 2, &value, &r) == LEVENT_OK);
  CHECK(r.stable == 0);
  CHECK(std::string(r.error) == "unstable");
  CHECK(levent_sweep_row(s.s, 3, &value, &r) == LEVENT_ERR_INVALID_ARGUMENT);

  REQUIRE(levent_sweep_write_csv(s.s, "capi.csv") == LEVENT_OK);
  CHECK(slurp("capi.csv").rfind("series,parameter,value", 0) == 0);
  REQUIRE(levent_sweep_write_svg(s.s, "capi.svg", "title") == LEVENT_OK);
  CHECK(slurp("capi.svg").find("<svg") != std::string::npos);
  REQUIRE(levent_plot_csv("capi.csv", "capi2.svg", nullptr) == LEVENT_OK);
  CHECK(slurp("capi2.svg").find("<svg") != std::string::npos);
  CHECK(levent_plot_csv("no_such.csv", "capi3.svg", nullptr) == LEVENT_ERR_IO);
  std::remove("capi.csv");
  std::remove("capi.svg");
  std::remove("capi2.svg");
}

TEST_CASE("sweep creation rejects bad input up front") {
  Params p;
  REQUIRE(levent_params_create(&p.p) == LEVENT_OK);
  const double grid[] = {0.1, 0.3, 0.2};
  Sweep s;
  CHECK(levent_sweep_create(p.p, "full-rwa", "lambda2_ratio", grid, 3, 0, nullptr, &s.s) == LEVENT_ERR_CONFIG);
  CHECK(s.s == nullptr);
  CHECK(levent_sweep_create(p.p, "full-rwa", "lambda2_ratio", grid, 0, 0, nullptr, &s.s) == LEVENT_ERR_CONFIG);
  const double delta[] = {0, 400};
  CHECK(levent_sweep_create(p.p, "detuned-mode1-resonant", "delta12_khz", delta, 2, 0, nullptr, &s.s) ==
        LEVENT_ERR_CONFIG);
  CHECK(levent_sweep_create(p.p, "full-rwa", "lambda2_ratio", nullptr, 3, 0, nullptr, &s.s) ==
        LEVENT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("presets") {
  std::size_t n = 0;
  while (levent_preset_name(n)) ++n;
  CHECK(n == 6);
  CHECK(std::string(levent_preset_name(0)) == "fig2ad");
  Sweep s;
  CHECK(levent_preset_create("fig9", &s.s) == LEVENT_ERR_CONFIG);
  CHECK(s.s == nullptr);
  REQUIRE(levent_preset_create("fig2ad", &s.s) == LEVENT_OK);
  CHECK(levent_sweep_row_count(s.s) == 0);
}

TEST_CASE("feasibility estimates") {
  double out = 0;
  REQUIRE(levent_thermal_occupancy(300, 2 * 3.141592653589793 * 300e3, &out) == LEVENT_OK);
  CHECK(out == doctest::Approx(2.08e7).epsilon(0.05));
  CHECK(levent_thermal_occupancy(-1, 1, &out) == LEVENT_ERR_INVALID_ARGUMENT);
  REQUIRE(levent_phase_noise_heating(0, 1, 1, 1, &out) == LEVENT_OK);
  CHECK(out == 0);
  REQUIRE(levent_tweezer_intensity(1, 1e-6, &out) == LEVENT_OK);
  CHECK(out > 0);
  CHECK(levent_tweezer_intensity(1, 0, &out) == LEVENT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("oracle checks") {
  levent_check c;
  REQUIRE(levent_check_moments(3, 20000, 5, &c) == LEVENT_OK);
  CHECK(c.passed == 1);
  CHECK(c.tolerance == 3);
  CHECK(c.deviation < 3);
}

TEST_CASE("NULL arguments are rejected, not dereferenced") {
  CHECK(levent_params_create(nullptr) == LEVENT_ERR_INVALID_ARGUMENT);
  CHECK(std::string(levent_last_error()).find("NULL") != std::string::npos);
  CHECK(levent_params_set(nullptr, "q", "1") == LEVENT_ERR_INVALID_ARGUMENT);
  CHECK(levent_params_get(nullptr, "q", nullptr) == LEVENT_ERR_INVALID_ARGUMENT);
  CHECK(levent_params_validate(nullptr) == LEVENT_ERR_INVALID_ARGUMENT);
  CHECK(levent_run_point(nullptr, nullptr, 0, nullptr) == LEVENT_ERR_INVALID_ARGUMENT);
  CHECK(levent_sweep_run(nullptr, 1) == LEVENT_ERR_INVALID_ARGUMENT);
  CHECK(levent_sweep_row_count(nullptr) == 0);
  CHECK(levent_thermal_occupancy(1, 1, nullptr) == LEVENT_ERR_INVALID_ARGUMENT);
  CHECK(levent_check_moments(1, 1, 1, nullptr) == LEVENT_ERR_INVALID_ARGUMENT);
  levent_params_destroy(nullptr);
  levent_sweep_destroy(nullptr);
}

}  // TEST_SUITE
