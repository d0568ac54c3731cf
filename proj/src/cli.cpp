#include "hdcb/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hdcb/config.hpp"
#include "hdcb/csv.hpp"
#include "hdcb/svg_plot.hpp"

namespace hdcb::cli {

namespace fs = std::filesystem;

namespace {

/// Writes through a sibling temporary so a failed write never leaves a partial file.
void write_file(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    if (!out.flush()) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

template <typename Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

ExperimentConfig prepare(const std::string& config_path, const Overrides& overrides) {
  ExperimentConfig config = load_config(config_path);
  apply_overrides(config, overrides);
  config.validate();
  return config;
}

SummaryRow make_row(const ExperimentConfig& config, const AgentSpec& spec, const Summary& s) {
  return SummaryRow{spec.label(), config.N, config.d, config.D, spec.reported_bits(),
                    s.epsilon,    s.mean_reward, s.stddev, s.replicates};
}

}  // namespace

void apply_overrides(ExperimentConfig& config, const Overrides& overrides) {
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr) {
    const std::string text(env);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
      throw ConfigError(kSeedEnvVar, "must be a decimal 64-bit unsigned integer");
    }
    config.seed = seed;
  }
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.output_dir) config.output_dir = *overrides.output_dir;
}

int cmd_run(const std::string& config_path, const Overrides& overrides, std::ostream& log) {
  return guarded(log, [&] {
    const ExperimentConfig config = prepare(config_path, overrides);
    std::vector<Summary> best;
    best.reserve(config.agents.size());
    std::vector<SummaryRow> rows;
    for (const auto& agent : config.agents) {
      const auto result = grid_search_epsilon(config, agent.spec, config.grid_for(agent));
      best.push_back(result.best());
      rows.push_back(make_row(config, agent.spec, result.best()));
      if (overrides.verbosity > 0) {
        log << agent.spec.label() << ": eps=" << result.best_epsilon
            << " mean_reward=" << format_fixed(result.best().mean_reward, 4) << '\n';
      }
    }
    std::vector<TrajectoryColumn> columns;
    for (std::size_t i = 0; i < config.agents.size(); ++i) {
      columns.push_back({config.agents[i].spec.label(), &best[i]});
    }
    const std::string trajectory = trajectory_csv(columns);
    const std::string summary = summary_csv(rows);
    const fs::path out(config.output_dir);
    write_file(out / "trajectory.csv", trajectory);
    write_file(out / "summary.csv", summary);
    return kExitOk;
  });
}

int cmd_sweep(const std::string& config_path, const Overrides& overrides, std::ostream& log) {
  return guarded(log, [&] {
    const ExperimentConfig base = prepare(config_path, overrides);
    std::vector<SummaryRow> rows;
    for (std::size_t n : base.sweep_N) {
      for (Index d : base.sweep_d) {
        ExperimentConfig cell = base;
        cell.N = n;
        cell.d = d;
        for (const auto& agent : cell.agents) {
          const auto result = grid_search_epsilon(cell, agent.spec, cell.grid_for(agent));
          rows.push_back(make_row(cell, agent.spec, result.best()));
          if (overrides.verbosity > 0) {
            log << "N=" << n << " d=" << d << ' ' << agent.spec.label()
                << ": eps=" << result.best_epsilon
                << " mean_reward=" << format_fixed(result.best().mean_reward, 4) << '\n';
          }
        }
      }
    }
    write_file(fs::path(base.output_dir) / "summary.csv", summary_csv(rows));
    return kExitOk;
  });
}

int cmd_memory(const std::string& out_dir, std::size_t N, Index D, std::ostream& log) {
  return guarded(log, [&] {
    if (N < 1) throw ConfigError("N", "must be >= 1");
    if (D < 1) throw ConfigError("D", "must be >= 1");
    const auto rows = memory_table(N, default_memory_dims(), D);
    write_file(fs::path(out_dir) / "memory.csv", memory_csv(rows));
    return kExitOk;
  });
}

int cmd_plot(const std::string& csv_path, const std::string& out_path, std::ostream& log) {
  return guarded(log, [&] {
    std::string svg;
    try {
      const CsvTable table = parse_csv(read_file(csv_path));
      svg = render_plot(table);
    } catch (const std::exception& e) {
      throw ConfigError(csv_path, e.what());
    }
    write_file(out_path, svg);
    return kExitOk;
  });
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& log) {
  CLI::App app{"Contextual bandit experiments with hyperdimensional agents", "hdbandit"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "Experiment config (JSON)")->required();
    cmd->add_option("-o,--out", out_dir, "Output directory (overrides config)");
    cmd->add_option("-s,--seed", seed, "Base seed (overrides config and " + std::string(kSeedEnvVar) + ")");
    cmd->add_flag("-v,--verbose", overrides.verbosity, "Print per-agent progress");
  };

  auto* run = app.add_subcommand("run", "Run every configured agent and write trajectory/summary CSVs");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "Sweep N x d with tuned epsilon and write summary.csv");
  add_common(sweep);

  std::size_t mem_n = 10;
  Index mem_d = 1024;
  std::string mem_out = ".";
  auto* memory = app.add_subcommand("memory", "Write memory.csv for d in {8,16,32,64,128}");
  memory->add_option("-o,--out", mem_out, "Output directory");
  memory->add_option("-N,--actions", mem_n, "Number of actions");
  memory->add_option("-D,--dim", mem_d, "Hypervector dimensionality");

  std::string plot_in;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "Render a CSV produced by run/sweep/memory as SVG");
  plot->add_option("csv", plot_in, "Input CSV")->required();
  plot->add_option("svg", plot_out, "Output SVG")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (run->parsed() || sweep->parsed()) {
    auto* cmd = run->parsed() ? run : sweep;
    if (cmd->count("--out") > 0) overrides.output_dir = out_dir;
    if (cmd->count("--seed") > 0) overrides.seed = seed;
    return run->parsed() ? cmd_run(config_path, overrides, log)
                         : cmd_sweep(config_path, overrides, log);
  }
  if (memory->parsed()) return cmd_memory(mem_out, mem_n, mem_d, log);
  return cmd_plot(plot_in, plot_out, log);
}

}  // namespace hdcb::cli
