#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "levent/config.hpp"
#include "support.hpp"

using namespace levent;

namespace {

constexpr double kHz = 2 * std::numbers::pi * 1e3;

ParameterSet parse(const std::string& text) {
  std::istringstream in(text);
  return ParameterSet::parse(in, "test.cfg");
}

std::string config_error(const std::string& text) {
  try {
    parse(text).resolve();
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults resolve to the production rates") {
  const SystemParams p = ParameterSet().resolve();
  CHECK(p.lambda1 == doctest::Approx(100 * kHz));
  CHECK(p.lambda2 == doctest::Approx(50 * kHz));
  CHECK(p.g1 == doctest::Approx(3 * kHz));
  CHECK(p.g2 == doctest::Approx(20 * kHz));
  CHECK(p.kappa1 == doctest::Approx(120 * kHz));
  CHECK(p.kappa2 == p.kappa1);
  CHECK(p.omega1 == doctest::Approx(300 * kHz));
  CHECK(p.q1() == doctest::Approx(1e9));
  CHECK(p.n2 == 2e7);
  CHECK(p.delta12 == 0);
}

TEST_CASE("parse handles comments, spacing and shorthands") {
  const auto ps = parse(
      "# header\n"
      "\n"
      "lambda2_khz=80   # trailing\n"
      "  kappa2_khz =  60\n"
      "q = 1e8\n"
      "n1 = 5\n"
      "variant = counterrotating\n");
  CHECK(ps.get("lambda2_khz") == 80);
  CHECK(ps.get("q1") == 1e8);
  CHECK(ps.get("q2") == 1e8);
  CHECK(ps.variant() == ModelVariant::Counterrotating);
  const SystemParams p = ps.resolve();
  CHECK(p.kappa2 == doctest::Approx(60 * kHz));
  CHECK(p.n1 == 5);
  CHECK(p.n2 == 2e7);
}

TEST_CASE("detuning sets the second frequency") {
  auto ps = parse("delta12_khz = 240\n");
  SystemParams p = ps.resolve();
  CHECK(p.omega2 == doctest::Approx(60 * kHz));
  CHECK(p.delta12 == doctest::Approx(240 * kHz));

  ps = parse("omega2_khz = 60\ndelta12_khz = 240\n");
  CHECK(ps.resolve().omega2 == doctest::Approx(60 * kHz));
  CHECK(config_error("omega2_khz = 70\ndelta12_khz = 240\n").find("disagrees") != std::string::npos);
  CHECK_FALSE(config_error("delta12_khz = 300\n").empty());
}

TEST_CASE("errors carry the source line") {
  const std::string e = config_error("q = 1e9\nlambda3_khz = 4\n");
  CHECK(e.find("test.cfg:2") != std::string::npos);
  CHECK(e.find("lambda3_khz") != std::string::npos);
  CHECK(config_error("lambda1_khz 100\n").find("test.cfg:1") != std::string::npos);
  CHECK(config_error("lambda1_khz = fast\n").find("not a number") != std::string::npos);
  CHECK_FALSE(config_error("lambda1_khz = 1e400\n").empty());
  CHECK_FALSE(config_error("variant = rwa\n").empty());
  CHECK_FALSE(config_error("q = 0\n").empty());
  CHECK_FALSE(config_error("kappa1_khz = -1\n").empty());
  CHECK_FALSE(config_error("n = nan\n").empty());
}

TEST_CASE("set and get by key") {
  ParameterSet ps;
  ps.set("n", 3);
  CHECK(ps.get("n1") == 3);
  CHECK(ps.get("n2") == 3);
  ps.set_text("g2_khz", "7.5");
  CHECK(ps.get("g2_khz") == 7.5);
  CHECK(ref::error_code([&] { ps.set("bogus", 1); }) == ErrorCode::Config);
  CHECK(ref::error_code([&] { ps.get("bogus"); }) == ErrorCode::Config);
  CHECK(ParameterSet::is_known_key("kappa2_khz"));
  CHECK_FALSE(ParameterSet::is_known_key("kappa3_khz"));
  CHECK(ParameterSet::known_keys().size() >= 13);
}

TEST_CASE("load reports missing files") {
  CHECK(ref::error_code([] { ParameterSet::load("/nonexistent/levent.cfg"); }) == ErrorCode::Config);
}

TEST_CASE("strict number parsing") {
  CHECK(parse_number("1.5e3") == 1500);
  CHECK(parse_number(" 2 ") == 2);
  CHECK(parse_number("-0.25") == -0.25);
  CHECK_FALSE(parse_number("1.5x").has_value());
  CHECK_FALSE(parse_number("").has_value());
  CHECK_FALSE(parse_number("1 2").has_value());
}

}  // TEST_SUITE
