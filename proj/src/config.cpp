#include "levent/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>

#include "levent/error.hpp"

namespace levent {

namespace {

constexpr std::array<std::string_view, 13> kKeys{
    "lambda1_khz", "lambda2_khz", "g1_khz", "g2_khz", "kappa1_khz", "kappa2_khz", "omega1_khz",
    "omega2_khz",  "delta12_khz", "q1",     "q2",     "n1",         "n2"};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double khz(double v) { return 2 * std::numbers::pi * 1e3 * v; }

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

ParameterSet::ParameterSet() {
  values_ = {{"lambda1_khz", 100}, {"lambda2_khz", 50}, {"g1_khz", 3},     {"g2_khz", 20},
             {"kappa1_khz", 120},  {"kappa2_khz", 120}, {"omega1_khz", 300}, {"omega2_khz", 300},
             {"delta12_khz", 0},   {"q1", 1e9},         {"q2", 1e9},       {"n1", 2e7},
             {"n2", 2e7}};
}

bool ParameterSet::is_known_key(std::string_view key) {
  return key == "q" || key == "n" || std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

std::vector<std::string> ParameterSet::known_keys() {
  std::vector<std::string> out(kKeys.begin(), kKeys.end());
  out.emplace_back("q");
  out.emplace_back("n");
  return out;
}

void ParameterSet::set(std::string_view key, double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::Config, "value for '" + std::string(key) + "' is not finite");
  if (key == "q") {
    set("q1", value);
    set("q2", value);
    return;
  }
  if (key == "n") {
    set("n1", value);
    set("n2", value);
    return;
  }
  if (!is_known_key(key)) throw Error(ErrorCode::Config, "unknown parameter '" + std::string(key) + "'");
  values_[std::string(key)] = value;
  explicit_.insert(std::string(key));
}

void ParameterSet::set_text(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "variant") {
    const auto v = parse_variant(value);
    if (!v) throw Error(ErrorCode::Config, "unknown model variant '" + std::string(value) + "'");
    variant_ = *v;
    return;
  }
  const auto x = parse_number(value);
  if (!x) {
    throw Error(ErrorCode::Config, "value '" + std::string(value) + "' for '" + std::string(key) + "' is not a number");
  }
  set(key, *x);
}

double ParameterSet::get(std::string_view key) const {
  if (key == "q") key = "q1";
  if (key == "n") key = "n1";
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::Config, "unknown parameter '" + std::string(key) + "'");
  return it->second;
}

SystemParams ParameterSet::resolve() const {
  auto has = [&](std::string_view k) { return explicit_.find(k) != explicit_.end(); };
  double kappa2 = has("kappa2_khz") ? get("kappa2_khz") : get("kappa1_khz");
  const double w1 = get("omega1_khz");
  double w2 = get("omega2_khz");
  if (has("delta12_khz")) {
    const double d = get("delta12_khz");
    if (!has("omega2_khz")) {
      w2 = w1 - d;
    } else if (std::abs((w1 - w2) - d) > 1e-9 * std::max(std::abs(w1), std::abs(w2))) {
      throw Error(ErrorCode::Config, "delta12_khz disagrees with omega1_khz - omega2_khz");
    }
  }
  if (!(w1 > 0) || !(w2 > 0)) throw Error(ErrorCode::Config, "mechanical frequencies must be positive");
  if (!(get("q1") > 0) || !(get("q2") > 0)) throw Error(ErrorCode::Config, "quality factors must be positive");

  SystemParams p;
  p.lambda1 = khz(get("lambda1_khz"));
  p.lambda2 = khz(get("lambda2_khz"));
  p.g1 = khz(get("g1_khz"));
  p.g2 = khz(get("g2_khz"));
  p.kappa1 = khz(get("kappa1_khz"));
  p.kappa2 = khz(kappa2);
  p.n1 = get("n1");
  p.n2 = get("n2");
  p.set_frequencies(khz(w1), khz(w2));
  p.set_quality_factors(get("q1"), get("q2"));
  try {
    p.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::Config, e.what());
  }
  return p;
}

ParameterSet ParameterSet::parse(std::istream& in, std::string_view source) {
  ParameterSet ps;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) throw Error(ErrorCode::Config, where + "expected 'key = value'");
    const auto key = trim(s.substr(0, eq));
    try {
      ps.set_text(key, s.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::Config, where + e.what());
    }
  }
  return ps;
}

ParameterSet ParameterSet::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot open config file '" + path + "'");
  return parse(in, path);
}

}  // namespace levent
