#include "hdcb/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace hdcb {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 220.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

std::size_t require_column(const CsvTable& table, const std::string& name) {
  auto idx = table.column(name);
  if (!idx) throw PlotError("missing column '" + name + "'");
  return *idx;
}

double to_number(const std::string& cell) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw PlotError("non-numeric cell '" + cell + "'");
    return v;
  } catch (const std::logic_error&) {
    throw PlotError("non-numeric cell '" + cell + "'");
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

std::string draw(const std::vector<Series>& series, const std::string& title,
                 const std::string& x_label, const std::string& y_label, bool log_y) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      if (log_y) {
        if (!(y > 0.0)) throw PlotError("log-scale axis needs positive values");
        y = std::log10(y);
      }
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (log_y) {
    y_min = std::floor(y_min);
    y_max = std::ceil(y_max);
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) {
    const double v = log_y ? std::log10(y) : y;
    return kTop + plot_h - (v - y_min) / (y_max - y_min) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" data-y-scale=\""
      << (log_y ? "log" : "linear") << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(title) << "</text>\n";

  svg << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
      << num(kLeft + plot_w) << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n"
      << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(kTop + plot_h) << "\"/>\n"
      << "</g>\n";

  svg << "<g class=\"y-axis\" data-scale=\"" << (log_y ? "log" : "linear")
      << "\" font-size=\"11\" text-anchor=\"end\">\n";
  constexpr int kTicks = 5;
  if (log_y) {
    for (int e = static_cast<int>(y_min); e <= static_cast<int>(y_max); ++e) {
      const double y = std::pow(10.0, e);
      svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(y) + 4) << "\">1e" << e
          << "</text>\n";
    }
  } else {
    for (int i = 0; i <= kTicks; ++i) {
      const double y = y_min + (y_max - y_min) * i / kTicks;
      svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(y) + 4) << "\">" << num(y)
          << "</text>\n";
    }
  }
  svg << "</g>\n<g class=\"x-axis\" font-size=\"11\" text-anchor=\"middle\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double x = x_min + (x_max - x_min) * i / kTicks;
    svg << "<text x=\"" << num(px(x)) << "\" y=\"" << num(kTop + plot_h + 16) << "\">" << num(x)
        << "</text>\n";
  }
  svg << "</g>\n"
      << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 16)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(x_label) << "</text>\n"
      << "<text transform=\"translate(20," << num(kTop + plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">" << escape(y_label)
      << (log_y ? " (log scale)" : "") << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    svg << "<polyline class=\"series\" data-name=\"" << escape(s.name) << "\" fill=\"none\" stroke=\""
        << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      if (k) svg << ' ';
      svg << num(px(s.points[k].first)) << ',' << num(py(s.points[k].second));
    }
    svg << "\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(i) + 8.0;
    svg << "<line x1=\"" << num(kLeft + plot_w + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(kLeft + plot_w + 32) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << num(kLeft + plot_w + 36) << "\" y=\"" << num(ly + 4)
        << "\" font-size=\"11\">" << escape(s.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

CsvSchema detect_schema(const CsvTable& table) {
  if (table.column("algorithm") || table.column("kib")) {
    for (const char* c : {"algorithm", "bits", "d", "kib"}) require_column(table, c);
    return CsvSchema::Memory;
  }
  if (table.column("agent") || table.column("mean_reward")) {
    for (const char* c : {"agent", "N", "d", "mean_reward"}) require_column(table, c);
    return CsvSchema::Summary;
  }
  require_column(table, "round");
  const bool any_agent = std::any_of(table.header.begin(), table.header.end(), [](const auto& h) {
    return ends_with(h, kTrajectoryMeanSuffix);
  });
  if (!any_agent) throw PlotError(std::string("missing column '<agent>") + kTrajectoryMeanSuffix + "'");
  return CsvSchema::Trajectory;
}

std::string render_plot(const CsvTable& table) {
  const CsvSchema schema = detect_schema(table);
  if (table.rows.empty()) throw PlotError("no data rows");

  std::vector<Series> series;
  switch (schema) {
    case CsvSchema::Trajectory: {
      const std::size_t round = require_column(table, "round");
      const std::string suffix = kTrajectoryMeanSuffix;
      for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (!ends_with(table.header[c], suffix)) continue;
        Series s{table.header[c].substr(0, table.header[c].size() - suffix.size()), {}};
        for (const auto& row : table.rows) s.points.emplace_back(to_number(row[round]), to_number(row[c]));
        series.push_back(std::move(s));
      }
      return draw(series, "Cumulative reward", "round", "mean cumulative reward", false);
    }
    case CsvSchema::Memory: {
      const std::size_t alg = require_column(table, "algorithm");
      const std::size_t bits = require_column(table, "bits");
      const std::size_t d = require_column(table, "d");
      const std::size_t kib = require_column(table, "kib");
      std::vector<std::string> order;
      std::map<std::string, Series> by_name;
      for (const auto& row : table.rows) {
        const std::string name = row[alg] + " (" + row[bits] + "-bit)";
        if (!by_name.contains(name)) {
          order.push_back(name);
          by_name[name].name = name;
        }
        by_name[name].points.emplace_back(to_number(row[d]), to_number(row[kib]));
      }
      for (const auto& name : order) series.push_back(std::move(by_name[name]));
      return draw(series, "Memory footprint", "context dimensionality d", "KiB", true);
    }
    case CsvSchema::Summary: {
      const std::size_t agent = require_column(table, "agent");
      const std::size_t mean = require_column(table, "mean_reward");
      std::vector<std::string> order;
      std::map<std::string, Series> by_name;
      std::map<std::string, double> cell_index;
      const std::size_t n = require_column(table, "N");
      const std::size_t d = require_column(table, "d");
      for (const auto& row : table.rows) {
        const std::string cell = row[n] + "/" + row[d];
        if (!cell_index.contains(cell)) {
          const double next = static_cast<double>(cell_index.size());
          cell_index[cell] = next;
        }
        if (!by_name.contains(row[agent])) {
          order.push_back(row[agent]);
          by_name[row[agent]].name = row[agent];
        }
        by_name[row[agent]].points.emplace_back(cell_index[cell], to_number(row[mean]));
      }
      for (const auto& name : order) series.push_back(std::move(by_name[name]));
      return draw(series, "Mean reward per configuration", "configuration index (N, d)",
                  "mean reward", false);
    }
  }
  throw PlotError("unrecognized schema");
}

}  // namespace hdcb
