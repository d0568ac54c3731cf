#pragma once

#include <string>

#include "hdcb/harness.hpp"

namespace hdcb {

/**
 * Parses an experiment config from JSON text. Recognized top-level fields:
 *
 *   N, d, D, T, R, seed, epsilon_grid, output_dir, threads,
 *   agents:  [{kind, bits, kappa, alpha0, epsilon | epsilon_grid}, ...]
 *   encoder: {levels, clip_lo, clip_hi}
 *   sweep:   {N: [...], d: [...]}
 *
 * Omitted fields keep their defaults. Unknown fields, wrong types, and
 * invalid values raise ConfigError naming the field.
 */
ExperimentConfig parse_config(const std::string& json_text);

/// Reads and parses a config file; a missing file raises ConfigError("config", ...).
ExperimentConfig load_config(const std::string& path);

}  // namespace hdcb
