#include "levent/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>

#include "levent/error.hpp"

namespace levent {

namespace {

constexpr double kPanelW = 420, kPanelH = 300, kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

using Getter = std::function<std::optional<double>(const SweepRow&)>;

struct Panel {
  const char* label;
  Getter get;
  bool unity_line;
};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Axis {
  double lo = 0, hi = 1;
  bool log = false;
  double map(double v) const {
    if (log) v = std::log10(v);
    return hi > lo ? (v - lo) / (hi - lo) : 0.5;
  }
  bool drawable(double v) const { return std::isfinite(v) && (!log || v > 0); }
};

Axis make_axis(const std::vector<double>& vals, bool allow_log, bool include_one) {
  Axis a;
  double mn = std::numeric_limits<double>::infinity(), mx = -mn, pmin = mn;
  for (double v : vals) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
    if (v > 0) pmin = std::min(pmin, v);
  }
  if (include_one) {
    mn = std::min(mn, 1.0);
    mx = std::max(mx, 1.0);
  }
  if (!std::isfinite(mn)) return a;
  if (allow_log && mn > 0 && mx / pmin > 100) {
    a.log = true;
    a.lo = std::floor(std::log10(pmin));
    a.hi = std::ceil(std::log10(mx));
    if (a.hi <= a.lo) a.hi = a.lo + 1;
    return a;
  }
  const double pad = mx > mn ? 0.05 * (mx - mn) : std::max(0.5, 0.05 * std::abs(mx));
  a.lo = mn - pad;
  a.hi = mx + pad;
  return a;
}

}  // namespace

void write_svg(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& title) {
  if (rows.empty()) throw Error(ErrorCode::Io, "no rows to plot");
  const std::vector<Panel> panels{
      {"log negativity", [](const SweepRow& r) { return r.result.report.log_negativity; }, false},
      {"EPR variance", [](const SweepRow& r) { return r.result.report.epr_variance; }, true},
      {"noise reduction factor", [](const SweepRow& r) { return r.result.report.nrf; }, true},
      {"purity", [](const SweepRow& r) { return r.result.report.purity; }, false},
  };
  std::vector<std::string> series;
  for (const auto& r : rows) {
    if (std::find(series.begin(), series.end(), r.series) == series.end()) series.push_back(r.series);
  }
  std::vector<double> xs;
  for (const auto& r : rows) xs.push_back(r.value);
  const Axis xa = make_axis(xs, false, false);
  const std::string xlabel = rows.front().parameter;

  const double total_w = 2 * (kPanelW + kMarginL + kMarginR);
  const double legend_h = 20.0 * static_cast<double>(series.size()) + 10;
  const double total_h = 2 * (kPanelH + kMarginT + kMarginB) + 30 + legend_h;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\"" << total_h
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    out << "<text x=\"" << total_w / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"16\">" << esc(title)
        << "</text>\n";
  }

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double ox = static_cast<double>(p % 2) * (kPanelW + kMarginL + kMarginR) + kMarginL;
    const double oy = 30 + static_cast<double>(p / 2) * (kPanelH + kMarginT + kMarginB) + kMarginT;
    std::vector<double> ys;
    for (const auto& r : rows) {
      if (auto v = panel.get(r)) ys.push_back(*v);
    }
    const Axis ya = make_axis(ys, true, panel.unity_line);
    auto px = [&](double x) { return ox + xa.map(x) * kPanelW; };
    auto py = [&](double y) { return oy + (1 - ya.map(y)) * kPanelH; };

    out << "<g>\n<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << kPanelW << "\" height=\"" << kPanelH
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ox + kPanelW / 2 << "\" y=\"" << oy - 10 << "\" text-anchor=\"middle\">"
        << esc(panel.label) << (ya.log ? " (log)" : "") << "</text>\n";
    out << "<text x=\"" << ox + kPanelW / 2 << "\" y=\"" << oy + kPanelH + 35 << "\" text-anchor=\"middle\">"
        << esc(xlabel) << "</text>\n";
    for (int t = 0; t <= 4; ++t) {
      const double fx = xa.lo + (xa.hi - xa.lo) * t / 4.0;
      const double sx = ox + kPanelW * t / 4.0;
      out << "<line x1=\"" << sx << "\" y1=\"" << oy + kPanelH << "\" x2=\"" << sx << "\" y2=\"" << oy + kPanelH + 5
          << "\" stroke=\"black\"/><text x=\"" << sx << "\" y=\"" << oy + kPanelH + 18
          << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
      const double fy = ya.lo + (ya.hi - ya.lo) * t / 4.0;
      const double sy = oy + kPanelH * (1 - t / 4.0);
      out << "<line x1=\"" << ox - 5 << "\" y1=\"" << sy << "\" x2=\"" << ox << "\" y2=\"" << sy
          << "\" stroke=\"black\"/><text x=\"" << ox - 8 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
          << num(ya.log ? std::pow(10.0, fy) : fy) << "</text>\n";
    }
    if (panel.unity_line && ya.drawable(1.0)) {
      out << "<line class=\"reference\" x1=\"" << ox << "\" y1=\"" << py(1) << "\" x2=\"" << ox + kPanelW
          << "\" y2=\"" << py(1) << "\" stroke=\"black\" stroke-dasharray=\"6,4\"/>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
      const char* color = kColors[s % std::size(kColors)];
      std::size_t count = 0;
      for (const auto& r : rows) {
        if (r.series != series[s]) continue;
        ++count;
      }
      // Missing values (unstable points) split the polyline.
      std::vector<std::vector<std::pair<double, double>>> segments(1);
      for (const auto& r : rows) {
        if (r.series != series[s]) continue;
        const auto v = panel.get(r);
        if (v && ya.drawable(*v)) {
          segments.back().emplace_back(px(r.value), py(*v));
        } else if (!segments.back().empty()) {
          segments.emplace_back();
        }
      }
      for (const auto& seg : segments) {
        if (seg.empty()) continue;
        if (count == 1 || seg.size() == 1) {
          for (const auto& [x, y] : seg) {
            out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
          }
          continue;
        }
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : seg) out << x << ',' << y << ' ';
        out << "\"/>\n";
      }
    }
    out << "</g>\n";
  }

  const double ly = total_h - legend_h;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = ly + 20.0 * static_cast<double>(s);
    out << "<line x1=\"" << kMarginL << "\" y1=\"" << y << "\" x2=\"" << kMarginL + 30 << "\" y2=\"" << y
        << "\" stroke=\"" << kColors[s % std::size(kColors)] << "\" stroke-width=\"2\"/><text x=\""
        << kMarginL + 38 << "\" y=\"" << y + 4 << "\">" << esc(series[s]) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace levent
