#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdcb/harness.hpp"

namespace hdcb {

/// Minimal comma-separated table: a header row plus string cells (no quoting).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(const std::string& name) const;
};

/// Throws std::runtime_error on ragged rows or a missing header.
CsvTable parse_csv(const std::string& text);

/// Fixed-point with `digits` decimals; locale independent.
std::string format_fixed(double value, int digits);
/// Shortest round-trippable representation.
std::string format_shortest(double value);

inline constexpr const char* kSummaryHeader =
    "agent,N,d,D,bits,epsilon,mean_reward,std,replicates";
inline constexpr const char* kMemoryHeader = "algorithm,bits,d,kib";
inline constexpr const char* kTrajectoryMeanSuffix = "_mean_cumulative_reward";
inline constexpr const char* kTrajectoryStderrSuffix = "_stderr";

struct SummaryRow {
  std::string agent;
  std::size_t N = 0;
  Index d = 0;
  Index D = 0;
  int bits = 0;
  double epsilon = 0.0;
  double mean_reward = 0.0;
  double stddev = 0.0;
  std::size_t replicates = 0;
};

std::string summary_csv(const std::vector<SummaryRow>& rows);
std::string memory_csv(const std::vector<MemoryRow>& rows);

struct TrajectoryColumn {
  std::string agent;
  const Summary* summary;
};
/// round, then <agent>_mean_cumulative_reward and <agent>_stderr for every agent.
std::string trajectory_csv(const std::vector<TrajectoryColumn>& columns);

}  // namespace hdcb
