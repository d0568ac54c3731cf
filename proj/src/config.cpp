#include "hdcb/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hdcb {

namespace {

using nlohmann::json;

void reject_unknown(const json& object, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) throw ConfigError(prefix + key, "unknown field");
  }
}

const json& require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "must be an object");
  return j;
}

template <typename T>
T get_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "must be an integer");
  if constexpr (std::is_unsigned_v<T>) {
    if (j.is_number_unsigned()) return j.get<T>();
    if (j.get<std::int64_t>() < 0) throw ConfigError(field, "must be non-negative");
  }
  return j.get<T>();
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "must be a number");
  return j.get<double>();
}

std::vector<double> get_number_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "must be an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <typename T>
std::vector<T> get_integer_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "must be an array of integers");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_integer<T>(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

AgentConfig parse_agent(const json& j, const std::string& prefix, double default_alpha0) {
  require_object(j, prefix);
  reject_unknown(j, {"kind", "bits", "kappa", "alpha0", "epsilon", "epsilon_grid"}, prefix + ".");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError(prefix + ".kind", "required string");
  }
  AgentConfig agent;
  try {
    agent.spec.kind = agent_kind_from_string(j.at("kind").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix + ".kind", e.what());
  }
  agent.spec.alpha0 = default_alpha0;
  if (j.contains("bits")) agent.spec.bits = get_integer<int>(j.at("bits"), prefix + ".bits");
  if (j.contains("kappa")) {
    agent.spec.kappa = get_integer<int>(j.at("kappa"), prefix + ".kappa");
    if (agent.spec.kappa < 1) throw ConfigError(prefix + ".kappa", "must be >= 1");
  }
  if (j.contains("alpha0")) agent.spec.alpha0 = get_number(j.at("alpha0"), prefix + ".alpha0");
  if (j.contains("epsilon") && j.contains("epsilon_grid")) {
    throw ConfigError(prefix + ".epsilon", "give either epsilon or epsilon_grid, not both");
  }
  if (j.contains("epsilon")) {
    agent.epsilon_grid = {get_number(j.at("epsilon"), prefix + ".epsilon")};
  }
  if (j.contains("epsilon_grid")) {
    agent.epsilon_grid = get_number_list(j.at("epsilon_grid"), prefix + ".epsilon_grid");
    if (agent.epsilon_grid.empty()) throw ConfigError(prefix + ".epsilon_grid", "must not be empty");
  }
  return agent;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "config");
  reject_unknown(root,
                 {"N", "d", "D", "T", "R", "seed", "alpha0", "agents", "epsilon_grid", "encoder",
                  "sweep", "output_dir", "threads"},
                 "");

  ExperimentConfig cfg;
  if (root.contains("N")) cfg.N = get_integer<std::size_t>(root.at("N"), "N");
  if (root.contains("d")) cfg.d = get_integer<Index>(root.at("d"), "d");
  if (root.contains("D")) cfg.D = get_integer<Index>(root.at("D"), "D");
  if (root.contains("T")) cfg.T = get_integer<std::int64_t>(root.at("T"), "T");
  if (root.contains("R")) cfg.R = get_integer<std::size_t>(root.at("R"), "R");
  if (root.contains("seed")) cfg.seed = get_integer<std::uint64_t>(root.at("seed"), "seed");
  if (root.contains("threads")) cfg.threads = get_integer<unsigned>(root.at("threads"), "threads");
  if (root.contains("output_dir")) {
    if (!root.at("output_dir").is_string()) throw ConfigError("output_dir", "must be a string");
    cfg.output_dir = root.at("output_dir").get<std::string>();
  }
  if (root.contains("epsilon_grid")) {
    cfg.epsilon_grid = get_number_list(root.at("epsilon_grid"), "epsilon_grid");
  }

  const double alpha0 = root.contains("alpha0") ? get_number(root.at("alpha0"), "alpha0") : 0.4;
  if (root.contains("agents")) {
    const auto& list = root.at("agents");
    if (!list.is_array()) throw ConfigError("agents", "must be an array");
    cfg.agents.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      cfg.agents.push_back(parse_agent(list[i], "agents[" + std::to_string(i) + "]", alpha0));
    }
  } else {
    cfg.agents = default_agent_set(alpha0);
  }

  if (root.contains("encoder")) {
    const auto& enc = require_object(root.at("encoder"), "encoder");
    reject_unknown(enc, {"levels", "clip_lo", "clip_hi"}, "encoder.");
    if (enc.contains("levels")) cfg.levels = get_integer<int>(enc.at("levels"), "encoder.levels");
    if (enc.contains("clip_lo")) cfg.clip_lo = get_number(enc.at("clip_lo"), "encoder.clip_lo");
    if (enc.contains("clip_hi")) cfg.clip_hi = get_number(enc.at("clip_hi"), "encoder.clip_hi");
  }

  if (root.contains("sweep")) {
    const auto& sweep = require_object(root.at("sweep"), "sweep");
    reject_unknown(sweep, {"N", "d"}, "sweep.");
    if (sweep.contains("N")) cfg.sweep_N = get_integer_list<std::size_t>(sweep.at("N"), "sweep.N");
    if (sweep.contains("d")) cfg.sweep_d = get_integer_list<Index>(sweep.at("d"), "sweep.d");
    if (cfg.sweep_N.empty()) throw ConfigError("sweep.N", "must not be empty");
    if (cfg.sweep_d.empty()) throw ConfigError("sweep.d", "must not be empty");
  }

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace hdcb
