#include "hdcb/csv.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hdcb {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " cells, got " +
                               std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw std::runtime_error("no header row");
  return table;
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

std::string format_shortest(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    out << r.agent << ',' << r.N << ',' << r.d << ',' << r.D << ',' << r.bits << ','
        << format_shortest(r.epsilon) << ',' << format_fixed(r.mean_reward, 6) << ','
        << format_fixed(r.stddev, 6) << ',' << r.replicates << '\n';
  }
  return out.str();
}

std::string memory_csv(const std::vector<MemoryRow>& rows) {
  std::ostringstream out;
  out << kMemoryHeader << '\n';
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.bits << ',' << r.d << ',' << format_fixed(r.kib, 6) << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const std::vector<TrajectoryColumn>& columns) {
  if (columns.empty()) throw std::invalid_argument("trajectory_csv: no agents");
  const Index T = columns.front().summary->mean_cumulative.size();
  std::ostringstream out;
  out << "round";
  for (const auto& c : columns) {
    if (c.summary->mean_cumulative.size() != T) {
      throw std::invalid_argument("trajectory_csv: horizons differ");
    }
    out << ',' << c.agent << kTrajectoryMeanSuffix << ',' << c.agent << kTrajectoryStderrSuffix;
  }
  out << '\n';
  for (Index t = 0; t < T; ++t) {
    out << (t + 1);
    for (const auto& c : columns) {
      out << ',' << format_fixed(c.summary->mean_cumulative[t], 4) << ','
          << format_fixed(c.summary->stderr_cumulative[t], 4);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hdcb
