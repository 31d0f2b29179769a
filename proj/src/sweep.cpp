#include "levent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <thread>

#include "levent/error.hpp"
#include "levent/floquet.hpp"
#include "levent/lyapunov.hpp"

namespace levent {

namespace {

constexpr const char* kCsvColumns[] = {"series", "parameter", "value", "log_negativity", "epr_variance", "nrf",
                                       "purity", "n1",        "n2",    "stable",         "k_used",       "residual",
                                       "error"};
constexpr std::size_t kCsvColumnCount = std::size(kCsvColumns);

struct Solved {
  CovarianceMatrix cov;
  int k = 0;
  double residual = 0;
};

Solved solve_auto(const DriftModel& m, const DiffusionMatrix& n, bool& converged) {
  const auto ladder = default_truncation_ladder();
  FloquetSolution prev = solve_floquet_steady_state(m, n, ladder.front());
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    FloquetSolution cur = solve_floquet_steady_state(m, n, ladder[i]);
    const double scale = std::max(prev.dc_block.matrix().norm(), 1e-300);
    const double diff = (cur.dc_block.matrix() - prev.dc_block.matrix()).norm() / scale;
    if (diff < kConvergenceThreshold) {
      converged = true;
      return {prev.dc_block, prev.truncation, prev.relative_residual};
    }
    prev = std::move(cur);
  }
  converged = false;
  return {prev.dc_block, prev.truncation, prev.relative_residual};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string series_label(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", key, v);
  return buf;
}

// RFC-4180 record reader; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string cur;
  bool quoted = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cur += '"';
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw Error(ErrorCode::Io, "unterminated quoted CSV field");
  fields.push_back(std::move(cur));
  return true;
}

std::optional<double> optional_number(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  const auto v = parse_number(s);
  if (!v) throw Error(ErrorCode::Io, "CSV line " + std::to_string(line) + ": '" + s + "' is not a number");
  return v;
}

}  // namespace

SolvedPoint solve_point(ModelVariant variant, const SystemParams& p, std::optional<int> truncation) {
  p.validate();
  const DriftModel drift = build_drift(variant, p);
  const DiffusionMatrix diffusion = build_diffusion(variant, p);
  if (drift.is_time_independent()) {
    const SteadyState ss = solve_steady_state(drift, diffusion);
    return {ss.covariance, 0, ss.residual.relative, true};
  }
  if (truncation) {
    const FloquetSolution fs = solve_floquet_steady_state(drift, diffusion, *truncation);
    return {fs.dc_block, fs.truncation, fs.relative_residual, true};
  }
  bool converged = false;
  Solved s = solve_auto(drift, diffusion, converged);
  return {s.cov, s.k, s.residual, converged};
}

PointResult run_point(ModelVariant variant, const SystemParams& p, std::optional<int> truncation) {
  PointResult out;
  try {
    const SolvedPoint sp = solve_point(variant, p, truncation);
    if (!sp.converged) {
      out.failed = true;
      out.error = "Floquet truncation did not converge up to K = " + std::to_string(sp.k_used);
    }
    out.k_used = sp.k_used;
    out.residual = sp.residual;
    out.report = full_report(sp.covariance, mechanical_modes(variant), true);
  } catch (const UnstableError&) {
    out.report = EntanglementReport{};
    out.error = "unstable";
  } catch (const Error& e) {
    out.report = EntanglementReport{};
    out.failed = true;
    out.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  return out;
}

void apply_sweep_value(ParameterSet& ps, const std::string& parameter, double value) {
  if (parameter == "lambda2_ratio") {
    ps.set("lambda2_khz", value * ps.get("lambda1_khz"));
  } else if (parameter == "g2_ratio") {
    ps.set("g2_khz", value * ps.get("g1_khz"));
  } else {
    ps.set(parameter, value);
  }
}

void SweepSpec::validate() const {
  if (grid.empty()) throw Error(ErrorCode::Config, "sweep grid is empty");
  const bool up = grid.size() < 2 || grid[1] > grid[0];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw Error(ErrorCode::Config, "sweep grid contains a non-finite value");
    if (i > 0 && (up ? grid[i] <= grid[i - 1] : grid[i] >= grid[i - 1])) {
      throw Error(ErrorCode::Config, "sweep grid must be strictly monotone");
    }
  }
  const bool detuned = variant == ModelVariant::DetunedMode1Resonant || variant == ModelVariant::DetunedMode2Resonant;
  if (parameter == "lambda2_ratio" || parameter == "q" || parameter == "n") {
  } else if (parameter == "g2_ratio" || parameter == "g1_khz" || parameter == "g2_khz") {
    if (variant == ModelVariant::CsOnlyRwa) {
      throw Error(ErrorCode::Config, "'" + parameter + "' has no effect on the cs-only-rwa variant");
    }
  } else if (parameter == "delta12_khz" || parameter == "omega2_khz") {
    if (!detuned) throw Error(ErrorCode::Config, "'" + parameter + "' sweeps need a detuned variant");
  } else if (!ParameterSet::is_known_key(parameter)) {
    throw Error(ErrorCode::Config, "unknown sweep parameter '" + parameter + "'");
  }
  if (truncation && *truncation < 1) throw Error(ErrorCode::Config, "Floquet truncation must be >= 1");
}

std::vector<SweepRow> run_sweeps(const std::vector<SweepSpec>& specs, unsigned threads) {
  struct Job {
    std::size_t spec;
    double value;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    specs[s].validate();
    for (double v : specs[s].grid) jobs.push_back({s, v});
  }
  // Resolve every point before starting so configuration errors surface
  // early and no partial output is produced.
  std::vector<SystemParams> params;
  params.reserve(jobs.size());
  for (const Job& j : jobs) {
    ParameterSet ps = specs[j.spec].fixed;
    apply_sweep_value(ps, specs[j.spec].parameter, j.value);
    params.push_back(ps.resolve());
  }

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const SweepSpec& spec = specs[jobs[i].spec];
      rows[i] = SweepRow{spec.series, spec.parameter, jobs[i].value, run_point(spec.variant, params[i], spec.truncation)};
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, jobs.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) { return run_sweeps({spec}, spec.threads); }

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0) || !(hi > 0)) throw Error(ErrorCode::Config, "log grid bounds must be positive");
  auto g = linear_grid(std::log10(lo), std::log10(hi), n);
  for (double& x : g) x = std::pow(10.0, x);
  if (n > 1) {
    g.front() = lo;
    g.back() = hi;
  }
  return g;
}

std::vector<double> default_ratio_grid() { return linear_grid(0.01, 0.99, 101); }

std::vector<std::string> preset_names() { return {"fig2ad", "fig2eh", "fig3", "fig4ac", "fig4df", "fig5"}; }

std::vector<SweepSpec> preset_specs(const std::string& name) {
  std::vector<SweepSpec> out;
  auto base = [&](ModelVariant v, std::string series) {
    SweepSpec s;
    s.variant = v;
    s.parameter = "lambda2_ratio";
    s.grid = default_ratio_grid();
    s.series = std::move(series);
    return s;
  };
  if (name == "fig2ad") {
    for (double n : {0.0, 1.0, 1e6, 2e7}) {
      SweepSpec s = base(ModelVariant::CsOnlyRwa, series_label("n", n));
      s.fixed.set("n", n);
      s.fixed.set("q", 1e8);
      out.push_back(std::move(s));
    }
  } else if (name == "fig2eh") {
    for (double q : {1e8, 1e9, 1e10}) {
      SweepSpec s = base(ModelVariant::FullRwa, series_label("Q", q));
      s.fixed.set("q", q);
      out.push_back(std::move(s));
    }
  } else if (name == "fig3") {
    for (double g1 : {0.3, 3.0, 30.0}) {
      SweepSpec s = base(ModelVariant::FullRwa, series_label("g1_khz", g1));
      s.parameter = "g2_ratio";
      s.grid = log_grid(0.5, 50, 101);
      s.fixed.set("lambda2_khz", 80);
      s.fixed.set("g1_khz", g1);
      out.push_back(std::move(s));
    }
  } else if (name == "fig4ac" || name == "fig4df") {
    const bool mode2 = name == "fig4ac";
    const auto variant = mode2 ? ModelVariant::DetunedMode2Resonant : ModelVariant::DetunedMode1Resonant;
    const std::vector<double> detunings = mode2 ? std::vector<double>{0, 240} : std::vector<double>{0, 60, 120, 240};
    for (double d : detunings) {
      SweepSpec s = base(variant, series_label("delta12_khz", d));
      s.fixed.set("delta12_khz", d);
      // Keep the second particle's damping rate, not its Q, at the resonant value.
      const double w1 = s.fixed.get("omega1_khz");
      s.fixed.set("q2", s.fixed.get("q2") * (w1 - d) / w1);
      out.push_back(std::move(s));
    }
  } else if (name == "fig5") {
    out.push_back(base(ModelVariant::FullRwa, "full-rwa"));
    out.push_back(base(ModelVariant::Counterrotating, "counterrotating"));
  } else {
    throw Error(ErrorCode::Config, "unknown preset '" + name + "'");
  }
  return out;
}

void write_csv_header(std::ostream& out) {
  for (std::size_t i = 0; i < kCsvColumnCount; ++i) out << (i ? "," : "") << kCsvColumns[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const SweepRow& row) {
  const auto& r = row.result.report;
  out << csv_field(row.series) << ',' << csv_field(row.parameter) << ',' << format_number(row.value) << ','
      << format_optional(r.log_negativity) << ',' << format_optional(r.epr_variance) << ','
      << format_optional(r.nrf) << ',' << format_optional(r.purity) << ',';
  if (r.mean_phonons) {
    out << format_number(r.mean_phonons->first) << ',' << format_number(r.mean_phonons->second) << ',';
  } else {
    out << ",,";
  }
  out << (r.stable ? "true" : "false") << ',' << row.result.k_used << ',';
  if (r.stable) out << format_number(row.result.residual);
  out << ',' << csv_field(row.result.error) << '\n';
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  write_csv_header(out);
  for (const auto& row : rows) write_csv_row(out, row);
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_record(in, f)) throw Error(ErrorCode::Io, "CSV is empty");
  if (f.size() != kCsvColumnCount) throw Error(ErrorCode::Io, "CSV header has the wrong number of columns");
  for (std::size_t i = 0; i < kCsvColumnCount; ++i) {
    if (f[i] != kCsvColumns[i]) throw Error(ErrorCode::Io, "unexpected CSV column '" + f[i] + "'");
  }
  std::vector<SweepRow> rows;
  std::size_t line = 1;
  while (read_record(in, f)) {
    ++line;
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != kCsvColumnCount) {
      throw Error(ErrorCode::Io, "CSV line " + std::to_string(line) + " has " + std::to_string(f.size()) +
                                     " fields, expected " + std::to_string(kCsvColumnCount));
    }
    SweepRow row;
    row.series = f[0];
    row.parameter = f[1];
    const auto value = optional_number(f[2], line);
    if (!value) throw Error(ErrorCode::Io, "CSV line " + std::to_string(line) + " has no parameter value");
    row.value = *value;
    auto& r = row.result.report;
    r.log_negativity = optional_number(f[3], line);
    r.epr_variance = optional_number(f[4], line);
    r.nrf = optional_number(f[5], line);
    r.purity = optional_number(f[6], line);
    const auto n1 = optional_number(f[7], line), n2 = optional_number(f[8], line);
    if (n1 && n2) r.mean_phonons = std::make_pair(*n1, *n2);
    if (f[9] != "true" && f[9] != "false") {
      throw Error(ErrorCode::Io, "CSV line " + std::to_string(line) + ": stable must be true or false");
    }
    r.stable = f[9] == "true";
    row.result.k_used = static_cast<int>(optional_number(f[10], line).value_or(0));
    row.result.residual = optional_number(f[11], line).value_or(0);
    row.result.error = f[12];
    row.result.failed = !f[12].empty() && f[12] != "unstable";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t failed_rows(const std::vector<SweepRow>& rows) {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.result.failed; }));
}

}  // namespace levent
