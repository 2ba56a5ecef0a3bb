#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "czlab/grid.hpp"
#include "czlab/instances.hpp"

namespace czlab {

struct ParamGrid {
  double start = 1.0;
  double stop = 1.0;
  int count = 1;
  bool log_scale = true;

  std::vector<double> values() const;
};

struct Config {
  std::string experiment;  // czd | weaktype | kclosed | sobolev | kernelcheck
  GridSpec grid;
  std::string op;  // operator tag, or projection tag for kclosed
  ParamGrid sweep;  // s_grid or t_grid depending on the experiment
  std::string sweep_key;
  std::size_t instance_count = 0;
  InstanceGen gen;
  std::string output_path = "out";
  std::string format = "csv";
  bool plotdata = false;
  int workers = 1;
  int samples = 2000;

  // Output directory after the OUTPUT_DIR override for relative paths.
  std::filesystem::path output_dir() const;
};

// Throws ConfigError naming the offending key ("s_grid.start", "grid.L", ...).
Config parse_config(const nlohmann::json& j);
Config load_config(const std::string& path);
const nlohmann::json& config_schema();

}  // namespace czlab
