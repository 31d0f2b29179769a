#pragma once

// Flat "key = value" parameter files. Rates are quoted as frequency/2pi in
// kHz (the *_khz keys) and converted to rad/s on resolve().
//
//   lambda1_khz lambda2_khz g1_khz g2_khz kappa1_khz kappa2_khz
//   omega1_khz omega2_khz delta12_khz q1 q2 n1 n2
//   q, n          shorthands setting both particles
//   variant       optional model variant name
//
// kappa2_khz defaults to kappa1_khz. delta12_khz, when given without
// omega2_khz, sets omega2 = omega1 - delta12; when both are given they must
// agree. Comments start with '#'.

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "levent/system_model.hpp"

namespace levent {

class ParameterSet {
 public:
  /// Defaults: lambda1 100, lambda2 50, g1 3, g2 20, kappa 120, omega 300 (kHz),
  /// Q = 1e9, n = 2e7.
  ParameterSet();

  static ParameterSet parse(std::istream& in, std::string_view source = "<config>");
  static ParameterSet load(const std::string& path);

  static bool is_known_key(std::string_view key);
  static std::vector<std::string> known_keys();

  /// Throws Error(Config) on unknown keys or non-finite values.
  void set(std::string_view key, double value);
  /// Parses the value text first; "variant" is accepted here.
  void set_text(std::string_view key, std::string_view value);
  double get(std::string_view key) const;

  const std::optional<ModelVariant>& variant() const noexcept { return variant_; }
  void set_variant(ModelVariant v) { variant_ = v; }

  /// Converts to SI angular units and validates; throws Error(Config).
  SystemParams resolve() const;

 private:
  std::map<std::string, double, std::less<>> values_;
  std::set<std::string, std::less<>> explicit_;
  std::optional<ModelVariant> variant_;
};

/// Strict numeric parse of a whole token; nullopt on trailing garbage.
std::optional<double> parse_number(std::string_view text);

}  // namespace levent
