#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cslab/cartan.hpp"
#include "cslab/frames.hpp"

namespace cslab {

struct Tolerances {
  double matrix = 1e-10;
  double fd = 1e-6;
  double transport = 1e-6;
};

struct RunConfig {
  std::string preset = "A1";  // "A1" | "An" | "custom"
  int an_n = 3;               // for the An preset
  CartanData cartan = CartanData::a1();
  Level level{1, 0.7};
  std::vector<TeichmullerPoint> taus{{0.0, 1.0}, {0.31, 1.41}};
  int degree = 12;
  int beta_degree = 4;
  int quad_nodes = 64;
  int lattice_radius = 5;
  Tolerances tol;
  std::string suite = "all";
  std::string out_path;
  std::uint64_t seed = 42;
  int steps = 1000;
  double radius = 0.1;
  int threads = 1;

  void validate() const;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig read_config_file(const std::string& path);
nlohmann::ordered_json config_to_json(const RunConfig& c);

// worker cap: CSLAB_THREADS environment variable, else the config value
int effective_threads(const RunConfig& c);

}  // namespace cslab
