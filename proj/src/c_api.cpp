#include "levent/levent.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "levent/checks.hpp"
#include "levent/error.hpp"
#include "levent/feasibility.hpp"
#include "levent/plot.hpp"
#include "levent/sweep.hpp"

struct levent_params {
  levent::ParameterSet set;
};

struct levent_sweep {
  std::vector<levent::SweepSpec> specs;
  std::vector<levent::SweepRow> rows;
  bool ran = false;
};

namespace {

thread_local std::string g_last_error;

levent_status status_of(levent::ErrorCode c) {
  using levent::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return LEVENT_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return LEVENT_ERR_DIMENSION;
    case ErrorCode::InvalidState: return LEVENT_ERR_INVALID_STATE;
    case ErrorCode::Unstable: return LEVENT_ERR_UNSTABLE;
    case ErrorCode::UnsupportedVariant: return LEVENT_ERR_UNSUPPORTED_VARIANT;
    case ErrorCode::IllDefinedMode: return LEVENT_ERR_ILL_DEFINED_MODE;
    case ErrorCode::DegenerateInput: return LEVENT_ERR_DEGENERATE_INPUT;
    case ErrorCode::StepSize: return LEVENT_ERR_STEP_SIZE;
    case ErrorCode::Config: return LEVENT_ERR_CONFIG;
    case ErrorCode::Io: return LEVENT_ERR_IO;
  }
  return LEVENT_ERR_INTERNAL;
}

levent_status fail(levent_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
levent_status guarded(F&& f) {
  try {
    return f();
  } catch (const levent::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LEVENT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LEVENT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LEVENT_ERR_INTERNAL, "unknown exception");
  }
}

levent_status null_arg(const char* what) { return fail(LEVENT_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

levent::ModelVariant variant_or_default(const levent::ParameterSet& ps, const char* name) {
  if (name) {
    const auto v = levent::parse_variant(name);
    if (!v) throw levent::Error(levent::ErrorCode::Config, std::string("unknown model variant '") + name + "'");
    return *v;
  }
  return ps.variant().value_or(levent::ModelVariant::FullRwa);
}

std::optional<int> truncation_of(int k) { return k > 0 ? std::optional<int>(k) : std::nullopt; }

void fill_report(const levent::PointResult& r, levent_report* out) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const auto& rep = r.report;
  out->stable = rep.stable ? 1 : 0;
  out->log_negativity = rep.log_negativity.value_or(nan);
  out->epr_variance = rep.epr_variance.value_or(nan);
  out->nrf = rep.nrf.value_or(nan);
  out->purity = rep.purity.value_or(nan);
  out->n1 = rep.mean_phonons ? rep.mean_phonons->first : nan;
  out->n2 = rep.mean_phonons ? rep.mean_phonons->second : nan;
  out->min_pt_symplectic = rep.min_pt_symplectic.value_or(nan);
  out->k_used = r.k_used;
  out->residual = rep.stable ? r.residual : nan;
  std::snprintf(out->error, sizeof out->error, "%s", r.error.c_str());
}

void fill_check(const levent::CheckResult& c, levent_check* out) {
  out->passed = c.passed ? 1 : 0;
  out->deviation = c.deviation;
  out->tolerance = c.tolerance;
  std::snprintf(out->detail, sizeof out->detail, "%s", c.detail.c_str());
}

// "-" selects stdout.
template <class Writer>
levent_status write_to(const char* path, Writer&& w) {
  if (!path) return null_arg("path");
  if (std::strcmp(path, "-") == 0) {
    w(std::cout);
    std::cout.flush();
    return LEVENT_OK;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(LEVENT_ERR_IO, std::string("cannot open '") + path + "' for writing");
  w(out);
  out.close();
  if (!out) return fail(LEVENT_ERR_IO, std::string("failed writing '") + path + "'");
  return LEVENT_OK;
}

}  // namespace

extern "C" {

const char* levent_version(void) { return "1.0.0"; }

const char* levent_status_string(levent_status s) {
  switch (s) {
    case LEVENT_OK: return "ok";
    case LEVENT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LEVENT_ERR_DIMENSION: return "dimension mismatch";
    case LEVENT_ERR_INVALID_STATE: return "invalid state";
    case LEVENT_ERR_UNSTABLE: return "unstable";
    case LEVENT_ERR_UNSUPPORTED_VARIANT: return "unsupported variant";
    case LEVENT_ERR_ILL_DEFINED_MODE: return "ill-defined mode";
    case LEVENT_ERR_DEGENERATE_INPUT: return "degenerate input";
    case LEVENT_ERR_STEP_SIZE: return "step size";
    case LEVENT_ERR_CONFIG: return "configuration error";
    case LEVENT_ERR_IO: return "I/O error";
    case LEVENT_ERR_PARTIAL: return "some rows failed";
    case LEVENT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* levent_last_error(void) { return g_last_error.c_str(); }

levent_status levent_params_create(levent_params** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new levent_params{};
    return LEVENT_OK;
  });
}

levent_status levent_params_load(const char* path, levent_params** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new levent_params{levent::ParameterSet::load(path)};
    return LEVENT_OK;
  });
}

levent_status levent_params_clone(const levent_params* p, levent_params** out) {
  if (!p) return null_arg("params");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new levent_params{p->set};
    return LEVENT_OK;
  });
}

void levent_params_destroy(levent_params* p) { delete p; }

levent_status levent_params_set(levent_params* p, const char* key, const char* value) {
  if (!p) return null_arg("params");
  if (!key || !value) return null_arg("key/value");
  return guarded([&] {
    p->set.set_text(key, value);
    return LEVENT_OK;
  });
}

levent_status levent_params_get(const levent_params* p, const char* key, double* out) {
  if (!p) return null_arg("params");
  if (!key || !out) return null_arg("key/out");
  return guarded([&] {
    *out = p->set.get(key);
    return LEVENT_OK;
  });
}

levent_status levent_params_validate(const levent_params* p) {
  if (!p) return null_arg("params");
  return guarded([&] {
    (void)p->set.resolve();
    return LEVENT_OK;
  });
}

levent_status levent_run_point(const levent_params* p, const char* variant, int truncation, levent_report* report) {
  if (!p) return null_arg("params");
  if (!report) return null_arg("report");
  return guarded([&] {
    const auto v = variant_or_default(p->set, variant);
    const levent::PointResult r = levent::run_point(v, p->set.resolve(), truncation_of(truncation));
    fill_report(r, report);
    if (!r.report.stable && !r.failed) return fail(LEVENT_ERR_UNSTABLE, "drift is not stable; no steady state");
    if (r.failed) return fail(LEVENT_ERR_INVALID_STATE, r.error);
    return LEVENT_OK;
  });
}

levent_status levent_write_point_covariance(const levent_params* p, const char* variant, int truncation,
                                            const char* path) {
  if (!p) return null_arg("params");
  return guarded([&] {
    const auto v = variant_or_default(p->set, variant);
    const auto sp = levent::solve_point(v, p->set.resolve(), truncation_of(truncation));
    return write_to(path, [&](std::ostream& o) { levent::write_covariance(o, sp.covariance); });
  });
}

levent_status levent_sweep_create(const levent_params* fixed, const char* variant, const char* parameter,
                                  const double* grid, size_t grid_len, int truncation, const char* series,
                                  levent_sweep** out) {
  if (!out) return null_arg("out");
  if (!parameter) return null_arg("parameter");
  if (!grid && grid_len > 0) return null_arg("grid");
  *out = nullptr;
  return guarded([&] {
    levent::SweepSpec spec;
    if (fixed) spec.fixed = fixed->set;
    spec.variant = variant_or_default(spec.fixed, variant);
    spec.parameter = parameter;
    spec.grid.assign(grid, grid + grid_len);
    spec.truncation = truncation_of(truncation);
    spec.series = series ? series : std::string(levent::to_string(spec.variant));
    spec.validate();
    // Surface resolution errors now rather than mid-run.
    for (double v : spec.grid) {
      levent::ParameterSet ps = spec.fixed;
      levent::apply_sweep_value(ps, spec.parameter, v);
      (void)ps.resolve();
    }
    *out = new levent_sweep{{std::move(spec)}, {}, false};
    return LEVENT_OK;
  });
}

levent_status levent_preset_create(const char* name, levent_sweep** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new levent_sweep{levent::preset_specs(name), {}, false};
    return LEVENT_OK;
  });
}

void levent_sweep_destroy(levent_sweep* s) { delete s; }

levent_status levent_sweep_run(levent_sweep* s, unsigned threads) {
  if (!s) return null_arg("sweep");
  return guarded([&] {
    s->rows = levent::run_sweeps(s->specs, threads);
    s->ran = true;
    const std::size_t failed = levent::failed_rows(s->rows);
    if (failed > 0) {
      return fail(LEVENT_ERR_PARTIAL, std::to_string(failed) + " of " + std::to_string(s->rows.size()) +
                                          " rows failed");
    }
    return LEVENT_OK;
  });
}

size_t levent_sweep_row_count(const levent_sweep* s) { return s ? s->rows.size() : 0; }

levent_status levent_sweep_row(const levent_sweep* s, size_t index, double* value, levent_report* report) {
  if (!s) return null_arg("sweep");
  if (!s->ran) return fail(LEVENT_ERR_INVALID_STATE, "sweep has not been run");
  if (index >= s->rows.size()) return fail(LEVENT_ERR_INVALID_ARGUMENT, "row index out of range");
  if (value) *value = s->rows[index].value;
  if (report) fill_report(s->rows[index].result, report);
  return LEVENT_OK;
}

levent_status levent_sweep_write_csv(const levent_sweep* s, const char* path) {
  if (!s) return null_arg("sweep");
  if (!s->ran) return fail(LEVENT_ERR_INVALID_STATE, "sweep has not been run");
  return guarded([&] { return write_to(path, [&](std::ostream& o) { levent::write_csv(o, s->rows); }); });
}

levent_status levent_sweep_write_svg(const levent_sweep* s, const char* path, const char* title) {
  if (!s) return null_arg("sweep");
  if (!s->ran) return fail(LEVENT_ERR_INVALID_STATE, "sweep has not been run");
  return guarded([&] {
    return write_to(path, [&](std::ostream& o) { levent::write_svg(o, s->rows, title ? title : ""); });
  });
}

levent_status levent_plot_csv(const char* csv_path, const char* svg_path, const char* title) {
  if (!csv_path) return null_arg("csv_path");
  return guarded([&] {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) return fail(LEVENT_ERR_IO, std::string("cannot open '") + csv_path + "'");
    const auto rows = levent::read_csv(in);
    return write_to(svg_path, [&](std::ostream& o) { levent::write_svg(o, rows, title ? title : ""); });
  });
}

const char* levent_preset_name(size_t index) {
  static const std::vector<std::string> names = levent::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

levent_status levent_thermal_occupancy(double temperature_k, double omega, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = levent::thermal_occupancy(temperature_k, omega);
    return LEVENT_OK;
  });
}

levent_status levent_phase_noise_heating(double g, double n_phot, double kappa, double s_phidot, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = levent::phase_noise_heating(g, n_phot, kappa, s_phidot);
    return LEVENT_OK;
  });
}

levent_status levent_tweezer_intensity(double power_w, double waist_m, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = levent::tweezer_intensity(power_w, waist_m);
    return LEVENT_OK;
  });
}

levent_status levent_check_floquet(const levent_params* p, const char* variant, int truncation, levent_check* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const levent::ParameterSet ps = p ? p->set : levent::ParameterSet{};
    const auto v = variant ? variant_or_default(ps, variant) : ps.variant().value_or(levent::ModelVariant::Counterrotating);
    fill_check(levent::check_floquet_against_shooting(v, ps.resolve(), truncation > 0 ? truncation : 8), out);
    return LEVENT_OK;
  });
}

levent_status levent_check_monte_carlo(size_t n_traj, uint64_t seed, unsigned threads, levent_check* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    fill_check(levent::check_monte_carlo(n_traj, seed, threads), out);
    return LEVENT_OK;
  });
}

levent_status levent_check_moments(size_t n_cases, size_t n_samples, uint64_t seed, levent_check* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    fill_check(levent::check_fourth_moments(n_cases, n_samples, seed), out);
    return LEVENT_OK;
  });
}

}  // extern "C"
