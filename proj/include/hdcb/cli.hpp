#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hdcb/harness.hpp"

namespace hdcb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

inline constexpr const char* kSeedEnvVar = "HDBANDIT_SEED";

struct Overrides {
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;
  int verbosity = 0;
};

/// Seed precedence: --seed flag, then HDBANDIT_SEED, then the config file.
/// Throws ConfigError("HDBANDIT_SEED", ...) when the variable is not a decimal u64.
void apply_overrides(ExperimentConfig& config, const Overrides& overrides);

/// trajectory.csv and summary.csv for every configured agent, epsilon tuned per agent.
int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& log);

/// summary.csv over sweep.N x sweep.d x agents, epsilon tuned per cell.
int cmd_sweep(const std::string& config_path, const Overrides& overrides, std::ostream& log);

/// memory.csv for d in {8, 16, 32, 64, 128}.
int cmd_memory(const std::string& out_dir, std::size_t N, Index D, std::ostream& log);

/// SVG rendering of any CSV emitted by the other commands.
int cmd_plot(const std::string& csv_path, const std::string& out_path, std::ostream& log);

/// Full command-line entry point (subcommands run, sweep, memory, plot).
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace hdcb::cli
