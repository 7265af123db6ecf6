#include "oraclust/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "oraclust/rows.hpp"

namespace oraclust {

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::runtime_error("csv table: no column '" + name + "'");
}

bool CsvTable::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable load_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      if (fields.size() != table.header.size())
        throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                 ": expected " + std::to_string(table.header.size()) + " fields");
      table.rows.push_back(std::move(fields));
    }
  }
  if (table.header.empty()) throw std::runtime_error(path + ": empty csv");
  return table;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Pt {
  double x, y;
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string emit_plot(const CsvTable& table, const std::string& y_column) {
  const std::size_t xc = table.column("strong_distinct");
  const std::size_t yc = table.column(y_column);
  const std::size_t dc = table.column("delta");
  const bool has_status = table.has_column("run_status");
  const std::size_t sc = has_status ? table.column("run_status") : 0;

  // delta value -> points, keyed numerically so legend order is stable
  std::map<double, std::vector<Pt>> groups;
  for (const auto& row : table.rows) {
    if (has_status && row[sc] != "ok") continue;
    const double raw_x = std::stod(row[xc]);
    const double x = std::log10(std::max(1.0, raw_x));
    const double y = std::stod(row[yc]);
    groups[std::stod(row[dc])].push_back({x, y});
  }
  if (groups.empty()) throw std::runtime_error("plot: no usable rows");
  for (auto& [d, pts] : groups)
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });

  double strong_rule = 0.0, weak_rule = 0.0;
  const bool has_strong_rule = table.has_column("strong_baseline_cost") && !table.rows.empty();
  const bool has_weak_rule = table.has_column("weak_baseline_cost") && !table.rows.empty();
  if (has_strong_rule) strong_rule = std::stod(table.rows[0][table.column("strong_baseline_cost")]);
  if (has_weak_rule) weak_rule = std::stod(table.rows[0][table.column("weak_baseline_cost")]);

  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& [d, pts] : groups)
    for (const auto& p : pts) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
  if (has_strong_rule) { y_lo = std::min(y_lo, strong_rule); y_hi = std::max(y_hi, strong_rule); }
  if (has_weak_rule) { y_lo = std::min(y_lo, weak_rule); y_hi = std::max(y_hi, weak_rule); }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  const double y_pad = y_hi > y_lo ? 0.05 * (y_hi - y_lo) : std::max(1.0, std::abs(y_hi));
  y_lo -= y_pad;
  y_hi += y_pad;

  const double W = 800, H = 500, L = 70, R = 780, T = 20, B = 450;
  auto sx = [&](double x) { return L + (x - x_lo) / (x_hi - x_lo) * (R - L); };
  auto sy = [&](double y) { return B - (y - y_lo) / (y_hi - y_lo) * (B - T); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  svg << "<line class=\"axis\" x1=\"" << fmt(L) << "\" y1=\"" << fmt(B) << "\" x2=\"" << fmt(R)
      << "\" y2=\"" << fmt(B) << "\" stroke=\"black\"/>\n";
  svg << "<line class=\"axis\" x1=\"" << fmt(L) << "\" y1=\"" << fmt(T) << "\" x2=\"" << fmt(L)
      << "\" y2=\"" << fmt(B) << "\" stroke=\"black\"/>\n";

  for (int e = static_cast<int>(std::ceil(x_lo)); e <= static_cast<int>(std::floor(x_hi)); ++e) {
    const double px = sx(e);
    svg << "<line class=\"tick\" x1=\"" << fmt(px) << "\" y1=\"" << fmt(B) << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << fmt(B + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(B + 20)
        << "\" text-anchor=\"middle\" font-size=\"12\">1e" << e << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = y_lo + (y_hi - y_lo) * i / 4.0;
    const double py = sy(v);
    svg << "<line class=\"tick\" x1=\"" << fmt(L - 5) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(L) << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(L - 8) << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\" font-size=\"12\">" << fmt_tick(v) << "</text>\n";
  }
  svg << "<text x=\"" << fmt((L + R) / 2) << "\" y=\"" << fmt(H - 10)
      << "\" text-anchor=\"middle\" font-size=\"13\">distinct strong queries (log scale)</text>\n";
  svg << "<text x=\"15\" y=\"" << fmt((T + B) / 2)
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 15 "
      << fmt((T + B) / 2) << ")\">" << y_column << "</text>\n";

  if (has_strong_rule) {
    const double py = sy(strong_rule);
    svg << "<line class=\"baseline-strong\" x1=\"" << fmt(L) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(R) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"#444444\" stroke-dasharray=\"6,3\"/>\n";
    svg << "<text x=\"" << fmt(R - 4) << "\" y=\"" << fmt(py - 4)
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#444444\">strong baseline</text>\n";
  }
  if (has_weak_rule) {
    const double py = sy(weak_rule);
    svg << "<line class=\"baseline-weak\" x1=\"" << fmt(L) << "\" y1=\"" << fmt(py) << "\" x2=\""
        << fmt(R) << "\" y2=\"" << fmt(py)
        << "\" stroke=\"#aa4444\" stroke-dasharray=\"2,3\"/>\n";
    svg << "<text x=\"" << fmt(R - 4) << "\" y=\"" << fmt(py + 12)
        << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#aa4444\">weak baseline</text>\n";
  }

  std::size_t gi = 0;
  for (const auto& [delta, pts] : groups) {
    const char* color = kPalette[gi % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (pts.size() >= 2) {
      svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) svg << ' ';
        svg << fmt(sx(pts[i].x)) << ',' << fmt(sy(pts[i].y));
      }
      svg << "\"/>\n";
    }
    for (const auto& p : pts)
      svg << "<circle class=\"pt\" cx=\"" << fmt(sx(p.x)) << "\" cy=\"" << fmt(sy(p.y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << fmt(R - 4) << "\" y=\"" << fmt(T + 14 + 14 * static_cast<double>(gi))
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">delta="
        << fmt_tick(delta) << "</text>\n";
    ++gi;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace oraclust
