#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>

#include "yulecrack/cli.hpp"

namespace yulecrack::cli {

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  os << "# yulecrack-" << t.kind << " v" << kCsvSchemaVersion << '\n';
  for (const auto& [k, v] : t.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = "yulecrack-" + t.kind;
  j["version"] = kCsvSchemaVersion;
  for (const auto& [k, v] : t.meta) j["meta"][k] = v;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) std::isfinite(v) ? r.push_back(v) : r.push_back(format_number(v));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  os << j.dump(2) << '\n';
}

void write_svg(std::ostream& os, const Table& t, const std::string& title) {
  constexpr double W = 640, H = 400, L = 60, R = 170, T = 30, B = 40;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  static const char* dashes[] = {"", "6,3", "2,2", "8,3,2,3"};
  const std::size_t xc = t.x_column;
  std::vector<std::size_t> data;
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    if (c != xc && c != t.group_column) data.push_back(c);
  std::vector<double> groups;
  for (const auto& row : t.rows) {
    const double g = t.group_column ? row[*t.group_column] : 0.0;
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
  }
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& row : t.rows) {
    x0 = std::min(x0, row[xc]);
    x1 = std::max(x1, row[xc]);
    for (std::size_t c : data)
      if (std::isfinite(row[c])) {
        y0 = std::min(y0, row[c]);
        y1 = std::max(y1, row[c]);
      }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n"
     << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n"
     << "<text x=\"" << L << "\" y=\"20\" font-size=\"13\">" << title << "</text>\n"
     << "<text x=\"" << L << "\" y=\"" << H - 10 << "\" font-size=\"11\">" << t.columns[xc] << " "
     << format_number(x0) << " .. " << format_number(x1) << "</text>\n"
     << "<text x=\"5\" y=\"" << T + 10 << "\" font-size=\"11\">" << format_number(y1) << "</text>\n"
     << "<text x=\"5\" y=\"" << H - B << "\" font-size=\"11\">" << format_number(y0) << "</text>\n";
  const double step = std::min(16.0, (H - T - B) / static_cast<double>(std::max<std::size_t>(1, data.size() * groups.size())));
  std::size_t label = 0;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t k = 0; k < data.size(); ++k) {
      const std::size_t c = data[k];
      const char* color = colors[k % std::size(colors)];
      os << "<path fill=\"none\" stroke=\"" << color << "\"";
      if (*dashes[g % std::size(dashes)]) os << " stroke-dasharray=\"" << dashes[g % std::size(dashes)] << "\"";
      os << " d=\"";
      bool pen = false;
      for (const auto& row : t.rows) {
        if (t.group_column && row[*t.group_column] != groups[g]) continue;
        if (!std::isfinite(row[c])) {
          pen = false;
          continue;
        }
        os << (pen ? "L" : "M") << px(row[xc]) << ',' << py(row[c]) << ' ';
        pen = true;
      }
      std::string name = t.columns[c];
      if (t.group_column) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", groups[g]);
        name += " " + t.columns[*t.group_column] + "=" + buf;
      }
      os << "\"/>\n<text x=\"" << W - R + 8 << "\" y=\"" << T + step * static_cast<double>(++label)
         << "\" font-size=\"" << std::min(11.0, step) << "\" fill=\"" << color << "\">" << name << "</text>\n";
    }
  os << "</svg>\n";
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void write_report(std::ostream& os, const VerifyReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["passed"] = r.passed();
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    for (const auto& [k, v] : c.metrics) std::isfinite(v) ? e["metrics"][k] = v : e["metrics"][k] = format_number(v);
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  os << j.dump(2) << '\n';
}

}  // namespace yulecrack::cli
