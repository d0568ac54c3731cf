#pragma once

#include <stdexcept>
#include <string>

#include "hdcb/csv.hpp"

namespace hdcb {

class PlotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CsvSchema { Trajectory, Summary, Memory };

/// Identifies which emitted schema a table follows; throws PlotError naming a missing column.
CsvSchema detect_schema(const CsvTable& table);

/**
 * Renders a self-contained SVG line chart.
 *
 * trajectory: one polyline per agent, mean cumulative reward vs round.
 * memory:     one polyline per (algorithm, bits), KiB vs d on a log10 y-axis.
 * summary:    one polyline per agent, mean reward across (N, d) cells.
 */
std::string render_plot(const CsvTable& table);

}  // namespace hdcb
