// levent command-line front end. Talks to the library only through levent.h.
//
// Exit codes: 0 success, 1 some sweep rows failed, 2 configuration error,
// 3 solver error (including an unstable point or a failed oracle check).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "levent/levent.h"

namespace {

enum Exit { kOk = 0, kPartial = 1, kConfig = 2, kSolver = 3 };

int exit_for(levent_status s) {
  switch (s) {
    case LEVENT_OK: return kOk;
    case LEVENT_ERR_PARTIAL: return kPartial;
    case LEVENT_ERR_CONFIG:
    case LEVENT_ERR_INVALID_ARGUMENT:
    case LEVENT_ERR_IO:
    case LEVENT_ERR_UNSUPPORTED_VARIANT: return kConfig;
    default: return kSolver;
  }
}

int report_failure(levent_status s) {
  std::fflush(stdout);
  std::fprintf(stderr, "error: %s: %s\n", levent_status_string(s), levent_last_error());
  return exit_for(s);
}

struct ParamsDeleter {
  void operator()(levent_params* p) const { levent_params_destroy(p); }
};
struct SweepDeleter {
  void operator()(levent_sweep* s) const { levent_sweep_destroy(s); }
};
using ParamsPtr = std::unique_ptr<levent_params, ParamsDeleter>;
using SweepPtr = std::unique_ptr<levent_sweep, SweepDeleter>;

// Options shared by point, sweep and oracle-check.
struct ModelOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::string variant;
  std::string truncation = "auto";

  void attach(CLI::App* app) {
    app->add_option("-c,--config", config, "key = value parameter file")->check(CLI::ExistingFile);
    app->add_option("-s,--set", overrides, "override a parameter, key=value (repeatable)");
    app->add_option("-m,--variant", variant,
                    "cs-only-rwa | full-rwa | counterrotating | detuned-mode2-resonant | detuned-mode1-resonant");
    app->add_option("-k,--truncation", truncation, "Floquet truncation K, or 'auto'");
  }

  // Returns an exit code on failure.
  std::optional<int> build(ParamsPtr& out) const {
    levent_params* raw = nullptr;
    const levent_status s = config.empty() ? levent_params_create(&raw) : levent_params_load(config.c_str(), &raw);
    if (s != LEVENT_OK) return report_failure(s);
    out.reset(raw);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
        return kConfig;
      }
      const levent_status st = levent_params_set(out.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
      if (st != LEVENT_OK) return report_failure(st);
    }
    if (!variant.empty()) {
      const levent_status st = levent_params_set(out.get(), "variant", variant.c_str());
      if (st != LEVENT_OK) return report_failure(st);
    }
    return std::nullopt;
  }

  std::optional<int> truncation_value(int& k) const {
    if (truncation == "auto") {
      k = 0;
      return std::nullopt;
    }
    try {
      std::size_t used = 0;
      k = std::stoi(truncation, &used);
      if (used == truncation.size() && k >= 1) return std::nullopt;
    } catch (const std::exception&) {
    }
    std::fprintf(stderr, "error: --truncation must be a positive integer or 'auto'\n");
    return kConfig;
  }

  const char* variant_arg() const { return variant.empty() ? nullptr : variant.c_str(); }
};

void print_value(const char* name, double v) {
  if (std::isnan(v)) {
    std::printf("%-18s =\n", name);
  } else {
    std::printf("%-18s = %.12g\n", name, v);
  }
}

int run_point_cmd(const ModelOptions& opt, const std::string& covariance_path) {
  ParamsPtr params;
  if (auto code = opt.build(params)) return *code;
  int k = 0;
  if (auto code = opt.truncation_value(k)) return *code;
  levent_report r{};
  const levent_status s = levent_run_point(params.get(), opt.variant_arg(), k, &r);
  if (s != LEVENT_OK && s != LEVENT_ERR_UNSTABLE) return report_failure(s);
  std::printf("%-18s = %s\n", "stable", r.stable ? "true" : "false");
  print_value("log_negativity", r.log_negativity);
  print_value("epr_variance", r.epr_variance);
  print_value("nrf", r.nrf);
  print_value("purity", r.purity);
  print_value("n1", r.n1);
  print_value("n2", r.n2);
  print_value("min_pt_symplectic", r.min_pt_symplectic);
  std::printf("%-18s = %d\n", "k_used", r.k_used);
  print_value("residual", r.residual);
  if (s == LEVENT_ERR_UNSTABLE) return report_failure(s);
  if (!covariance_path.empty()) {
    const levent_status cs = levent_write_point_covariance(params.get(), opt.variant_arg(), k, covariance_path.c_str());
    if (cs != LEVENT_OK) return report_failure(cs);
  }
  return kOk;
}

// "lo:hi:n" or a comma list.
std::optional<std::vector<double>> parse_grid(const std::string& text, bool logarithmic) {
  std::vector<double> out;
  try {
    if (text.find(':') != std::string::npos) {
      const auto a = text.find(':'), b = text.find(':', a + 1);
      if (b == std::string::npos) return std::nullopt;
      const double lo = std::stod(text.substr(0, a)), hi = std::stod(text.substr(a + 1, b - a - 1));
      const long n = std::stol(text.substr(b + 1));
      if (n < 1) return std::nullopt;
      if (logarithmic && (lo <= 0 || hi <= 0)) return std::nullopt;
      for (long i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out.push_back(logarithmic ? std::pow(10.0, std::log10(lo) + f * (std::log10(hi) - std::log10(lo)))
                                  : lo + f * (hi - lo));
      }
    } else {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) return std::nullopt;
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return out;
}

int finish_sweep(levent_sweep* sweep, unsigned threads, const std::string& csv, const std::string& svg,
                 const std::string& title) {
  const levent_status run = levent_sweep_run(sweep, threads);
  if (run != LEVENT_OK && run != LEVENT_ERR_PARTIAL) return report_failure(run);
  levent_status s = levent_sweep_write_csv(sweep, csv.c_str());
  if (s != LEVENT_OK) return report_failure(s);
  if (!svg.empty()) {
    s = levent_sweep_write_svg(sweep, svg.c_str(), title.c_str());
    if (s != LEVENT_OK) return report_failure(s);
  }
  if (run == LEVENT_ERR_PARTIAL) {
    std::fprintf(stderr, "warning: %s\n", levent_last_error());
    return kPartial;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement of two levitated particles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", levent_version());

  ModelOptions point_opt;
  std::string covariance_path;
  auto* point = app.add_subcommand("point", "solve one parameter point and print its measures");
  point_opt.attach(point);
  point->add_option("--covariance", covariance_path, "also write the joint covariance matrix here ('-' for stdout)");

  ModelOptions sweep_opt;
  std::string parameter = "lambda2_ratio", grid_text = "0.01:0.99:101", output = "-", plot_path, series;
  bool log_spaced = false;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "1-D parameter sweep to CSV");
  sweep_opt.attach(sweep);
  sweep->add_option("-p,--param", parameter,
                    "lambda2_ratio | g2_ratio | delta12_khz | q | n | any parameter key")->capture_default_str();
  sweep->add_option("-g,--grid", grid_text, "lo:hi:count or a comma-separated list")->capture_default_str();
  sweep->add_flag("--log", log_spaced, "log-spaced lo:hi:count grid");
  sweep->add_option("-o,--output", output, "CSV path ('-' for stdout)")->capture_default_str();
  sweep->add_option("--plot", plot_path, "also write an SVG plot");
  sweep->add_option("--series", series, "series label (default: variant name)");
  sweep->add_option("-j,--threads", threads, "worker threads (0 = all cores)");

  std::string preset_name, preset_dir = ".";
  unsigned preset_threads = 0;
  auto* preset = app.add_subcommand("preset", "reproduce a figure sweep; writes NAME.csv and NAME.svg");
  std::vector<std::string> names;
  for (std::size_t i = 0; levent_preset_name(i); ++i) names.emplace_back(levent_preset_name(i));
  preset->add_option("name", preset_name, "preset name")->required()->check(CLI::IsMember(names));
  preset->add_option("-d,--output-dir", preset_dir, "output directory")->capture_default_str();
  preset->add_option("-j,--threads", preset_threads, "worker threads (0 = all cores)");

  double temperature = 300, omega_khz = 305, g_hz = 0.3, n_phot = 1e10, kappa_khz = 120, s_phidot = 0.1,
         power = 0.4, waist_um = 0.7;
  auto* feas = app.add_subcommand("feasibility", "thermal occupancy, phase-noise heating, tweezer intensity");
  feas->add_option("--temperature", temperature, "bath temperature (K)")->capture_default_str();
  feas->add_option("--omega-khz", omega_khz, "mechanical frequency / 2pi (kHz)")->capture_default_str();
  feas->add_option("--g-hz", g_hz, "single-photon coupling / 2pi (Hz)")->capture_default_str();
  feas->add_option("--n-phot", n_phot, "intracavity photon number")->capture_default_str();
  feas->add_option("--kappa-khz", kappa_khz, "cavity decay / 2pi (kHz)")->capture_default_str();
  feas->add_option("--s-phidot", s_phidot, "laser frequency-noise density (Hz^2/Hz)")->capture_default_str();
  feas->add_option("--power", power, "tweezer power (W)")->capture_default_str();
  feas->add_option("--waist-um", waist_um, "tweezer waist (um)")->capture_default_str();

  ModelOptions oracle_opt;
  std::string which = "all";
  std::size_t trajectories = 10000, moment_cases = 20, moment_samples = 200000;
  std::uint64_t seed = 20240917;
  unsigned oracle_threads = 0;
  auto* oracle = app.add_subcommand("oracle-check", "compare solvers against independent oracles");
  oracle_opt.attach(oracle);
  oracle->add_option("-w,--which", which, "floquet | monte-carlo | moments | all")
      ->check(CLI::IsMember({"floquet", "monte-carlo", "moments", "all"}))
      ->capture_default_str();
  oracle->add_option("--trajectories", trajectories, "Monte Carlo trajectories (>= 1000)")->capture_default_str();
  oracle->add_option("--moment-cases", moment_cases, "random states for the moment check")->capture_default_str();
  oracle->add_option("--moment-samples", moment_samples, "samples per moment")->capture_default_str();
  oracle->add_option("--seed", seed, "RNG seed")->capture_default_str();
  oracle->add_option("-j,--threads", oracle_threads, "Monte Carlo threads (0 = all cores)");

  std::string plot_csv, plot_svg, plot_title;
  auto* plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
  plot->add_option("csv", plot_csv, "input CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("svg", plot_svg, "output SVG")->required();
  plot->add_option("--title", plot_title, "plot title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*point) return run_point_cmd(point_opt, covariance_path);

  if (*sweep) {
    ParamsPtr params;
    if (auto code = sweep_opt.build(params)) return *code;
    int k = 0;
    if (auto code = sweep_opt.truncation_value(k)) return *code;
    const auto grid = parse_grid(grid_text, log_spaced);
    if (!grid) {
      std::fprintf(stderr, "error: cannot parse grid '%s'\n", grid_text.c_str());
      return kConfig;
    }
    levent_sweep* raw = nullptr;
    const levent_status s = levent_sweep_create(params.get(), sweep_opt.variant_arg(), parameter.c_str(),
                                                grid->data(), grid->size(), k,
                                                series.empty() ? nullptr : series.c_str(), &raw);
    if (s != LEVENT_OK) return report_failure(s);
    SweepPtr handle(raw);
    return finish_sweep(handle.get(), threads, output, plot_path, parameter);
  }

  if (*preset) {
    levent_sweep* raw = nullptr;
    const levent_status s = levent_preset_create(preset_name.c_str(), &raw);
    if (s != LEVENT_OK) return report_failure(s);
    SweepPtr handle(raw);
    std::error_code ec;
    std::filesystem::create_directories(preset_dir, ec);
    if (ec) {
      std::fprintf(stderr, "error: cannot create '%s': %s\n", preset_dir.c_str(), ec.message().c_str());
      return kConfig;
    }
    const auto base = std::filesystem::path(preset_dir) / preset_name;
    return finish_sweep(handle.get(), preset_threads, base.string() + ".csv", base.string() + ".svg", preset_name);
  }

  if (*feas) {
    constexpr double two_pi = 6.283185307179586;
    double n = 0, gamma = 0, intensity = 0;
    levent_status s = levent_thermal_occupancy(temperature, two_pi * omega_khz * 1e3, &n);
    if (s == LEVENT_OK) s = levent_phase_noise_heating(two_pi * g_hz, n_phot, two_pi * kappa_khz * 1e3, s_phidot, &gamma);
    if (s == LEVENT_OK) s = levent_tweezer_intensity(power, waist_um * 1e-6, &intensity);
    if (s != LEVENT_OK) return report_failure(s);
    std::printf("thermal_occupancy      = %.6g\n", n);
    std::printf("phase_noise_heating_hz = %.6g\n", gamma);
    std::printf("tweezer_intensity_w_cm2 = %.6g\n", intensity);
    return kOk;
  }

  if (*oracle) {
    bool all_passed = true;
    auto show = [&](const char* name, levent_status s, const levent_check& c) {
      if (s != LEVENT_OK) {
        std::fprintf(stderr, "error: %s: %s: %s\n", name, levent_status_string(s), levent_last_error());
        all_passed = false;
        return;
      }
      std::printf("%-12s %s  %s (tolerance %g)\n", name, c.passed ? "PASS" : "FAIL", c.detail, c.tolerance);
      all_passed = all_passed && c.passed;
    };
    if (which == "floquet" || which == "all") {
      ParamsPtr params;
      if (auto code = oracle_opt.build(params)) return *code;
      int k = 0;
      if (auto code = oracle_opt.truncation_value(k)) return *code;
      levent_check c{};
      show("floquet", levent_check_floquet(params.get(), oracle_opt.variant_arg(), k, &c), c);
    }
    if (which == "monte-carlo" || which == "all") {
      levent_check c{};
      show("monte-carlo", levent_check_monte_carlo(trajectories, seed, oracle_threads, &c), c);
    }
    if (which == "moments" || which == "all") {
      levent_check c{};
      show("moments", levent_check_moments(moment_cases, moment_samples, seed, &c), c);
    }
    return all_passed ? kOk : kSolver;
  }

  if (*plot) {
    const levent_status s = levent_plot_csv(plot_csv.c_str(), plot_svg.c_str(), plot_title.c_str());
    return s == LEVENT_OK ? kOk : report_failure(s);
  }
  return kConfig;
}
