#include "config.hpp"

#include <cstdlib>
#include <stdexcept>

#include <yaml-cpp/yaml.h>

namespace rdpso_cli {
namespace {

std::runtime_error config_error(const std::filesystem::path& file, const std::string& what) {
  return std::runtime_error(file.string() + ": " + what);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key, const std::filesystem::path& file) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw config_error(file, "bad value for '" + key + "'");
  }
}

std::vector<double> number_list(const YAML::Node& node, const std::string& key,
                                const std::filesystem::path& file) {
  if (node.IsScalar()) return {scalar<double>(node, key, file)};
  if (!node.IsSequence()) throw config_error(file, "'" + key + "' must be a number or a list");
  std::vector<double> out;
  for (const auto& item : node) out.push_back(scalar<double>(item, key, file));
  if (out.empty()) throw config_error(file, "'" + key + "' is empty");
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  return p.is_relative() ? base / p : p;
}

AlgorithmSpec read_algorithm(const YAML::Node& node, const std::filesystem::path& file) {
  if (node.IsScalar()) return parse_algorithm_spec(node.as<std::string>());
  if (!node.IsMap() || !node["name"]) throw config_error(file, "algorithm entries need a name");
  AlgorithmSpec spec;
  spec.name = node["name"].as<std::string>();
  spec.label = node["label"] ? node["label"].as<std::string>() : spec.name;
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (key == "name" || key == "label") continue;
    spec.parameters.emplace_back(key, scalar<double>(kv.second, key, file));
  }
  return spec;
}

ProblemSpec read_problem(const YAML::Node& node, const std::filesystem::path& file) {
  ProblemSpec spec;
  if (node.IsScalar()) {
    spec.name = node.as<std::string>();
    return spec;
  }
  if (!node.IsMap() || !node["name"]) throw config_error(file, "problem entries need a name");
  const auto base = file.parent_path();
  spec.name = node["name"].as<std::string>();
  if (node["shift"]) spec.shift_file = resolve(node["shift"].as<std::string>(), base);
  if (node["rotation"]) spec.rotation_file = resolve(node["rotation"].as<std::string>(), base);
  if (node["bias"]) spec.bias = scalar<double>(node["bias"], "bias", file);
  if (node["bounds"]) spec.bounds_enforced = scalar<bool>(node["bounds"], "bounds", file);
  if (!spec.rotation_file.empty() && spec.shift_file.empty()) {
    throw config_error(file, "problem '" + spec.name + "': rotation needs a shift file");
  }
  return spec;
}

}  // namespace

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("RDPSO_OUTPUT_DIR"); env && *env) return env;
  return "rdpso-results";
}

Config default_config() {
  Config cfg;
  cfg.experiment.output_dir = default_output_dir();
  cfg.dynamics.output_dir = cfg.experiment.output_dir;
  return cfg;
}

AlgorithmSpec parse_algorithm_spec(const std::string& text) {
  AlgorithmSpec spec;
  std::size_t pos = text.find(':');
  spec.name = text.substr(0, pos);
  spec.label = text;
  while (pos != std::string::npos) {
    const std::size_t next = text.find(':', pos + 1);
    const std::string item = text.substr(pos + 1, next == std::string::npos ? next : next - pos - 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw std::runtime_error("algorithm spec '" + text + "': expected key=value after ':'");
    }
    char* end = nullptr;
    const std::string value = item.substr(eq + 1);
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0') {
      throw std::runtime_error("algorithm spec '" + text + "': bad number '" + value + "'");
    }
    spec.parameters.emplace_back(item.substr(0, eq), v);
    pos = next;
  }
  return spec;
}

Config load_config(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile&) {
    throw config_error(path, "cannot read config file");
  } catch (const YAML::Exception& e) {
    throw config_error(path, e.what());
  }
  Config cfg = default_config();
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw config_error(path, "top level must be a mapping");

  auto& ex = cfg.experiment;
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "seed") {
      ex.base_seed = scalar<std::uint64_t>(v, key, path);
    } else if (key == "instance_seed") {
      ex.instance_seed = scalar<std::uint64_t>(v, key, path);
    } else if (key == "runs") {
      ex.runs = scalar<std::size_t>(v, key, path);
    } else if (key == "dim") {
      ex.dimension = scalar<std::size_t>(v, key, path);
    } else if (key == "particles") {
      ex.particles = scalar<std::size_t>(v, key, path);
    } else if (key == "iterations") {
      ex.iterations = scalar<std::size_t>(v, key, path);
    } else if (key == "threads") {
      ex.threads = scalar<unsigned>(v, key, path);
    } else if (key == "output_dir") {
      ex.output_dir = scalar<std::string>(v, key, path);
    } else if (key == "algorithms") {
      ex.algorithms.clear();
      for (const auto& item : v) ex.algorithms.push_back(read_algorithm(item, path));
    } else if (key == "problems") {
      ex.problems.clear();
      for (const auto& item : v) ex.problems.push_back(read_problem(item, path));
    } else if (key == "sweep") {
      if (v["algorithm"]) cfg.sweep_algorithm = v["algorithm"].as<std::string>();
      if (const auto grid = v["grid"]) {
        if (!grid.IsMap()) throw config_error(path, "sweep.grid must be a mapping");
        for (const auto& axis : grid) {
          const auto name = axis.first.as<std::string>();
          cfg.sweep_grid.emplace_back(name, number_list(axis.second, "sweep.grid." + name, path));
        }
      }
    } else if (key == "dynamics") {
      auto& d = cfg.dynamics;
      for (const auto& item : v) {
        const auto k = item.first.as<std::string>();
        const YAML::Node& x = item.second;
        if (k == "alpha") {
          d.alphas = number_list(x, k, path);
        } else if (k == "beta") {
          d.betas = number_list(x, k, path);
        } else if (k == "steps") {
          d.steps = scalar<std::size_t>(x, k, path);
        } else if (k == "reps") {
          d.reps = scalar<std::size_t>(x, k, path);
        } else if (k == "c_point") {
          d.base.c_point = scalar<double>(x, k, path);
        } else if (k == "p_point") {
          d.base.p_point = scalar<double>(x, k, path);
        } else if (k == "x0") {
          d.base.x0 = scalar<double>(x, k, path);
        } else if (k == "overflow_cap") {
          d.base.overflow_cap = scalar<double>(x, k, path);
        } else if (k == "trajectories") {
          d.trajectories = scalar<bool>(x, k, path);
        } else {
          throw config_error(path, "unknown key 'dynamics." + k + "'");
        }
      }
    } else if (key == "report") {
      if (const auto inputs = v["inputs"]) {
        for (const auto& item : inputs) {
          cfg.report_inputs.push_back(resolve(item.as<std::string>(), path.parent_path()));
        }
      }
    } else {
      throw config_error(path, "unknown key '" + key + "'");
    }
  }
  cfg.dynamics.seed = ex.base_seed;
  cfg.dynamics.output_dir = ex.output_dir;
  return cfg;
}

}  // namespace rdpso_cli
