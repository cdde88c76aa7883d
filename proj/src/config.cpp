#include "cslab/config.hpp"

#include <cstdlib>
#include <fstream>

#include "cslab/errors.hpp"

namespace cslab {

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int rows, int cols) {
  // row-major nested arrays
  Eigen::MatrixXd m(rows, cols);
  if (static_cast<int>(j.size()) != rows) fail(ErrorCode::ConfigError, "matrix row count");
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j.at(i).size()) != cols)
      fail(ErrorCode::ConfigError, "matrix column count");
    for (int c = 0; c < cols; ++c) m(i, c) = j.at(i).at(c).get<double>();
  }
  return m;
}

nlohmann::ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void RunConfig::validate() const {
  if (level.k < 1) fail(ErrorCode::ConfigError, "level k must be >= 1");
  if (degree < 6) fail(ErrorCode::ConfigError, "degree must be >= 6");
  if (beta_degree < 2) fail(ErrorCode::ConfigError, "beta degree must be >= 2");
  if (tol.matrix <= 0 || tol.fd <= 0 || tol.transport <= 0)
    fail(ErrorCode::ConfigError, "tolerances must be positive");
  if (quad_nodes < 8) fail(ErrorCode::ConfigError, "quadrature needs at least 8 nodes");
  if (lattice_radius < 1) fail(ErrorCode::ConfigError, "lattice radius must be >= 1");
  if (steps < 1) fail(ErrorCode::ConfigError, "steps must be >= 1");
  if (radius <= 0) fail(ErrorCode::ConfigError, "radius must be positive");
  if (taus.empty()) fail(ErrorCode::ConfigError, "need at least one tau");
  for (const auto& t : taus)
    if (!(t.tau2 > 1e-9)) fail(ErrorCode::ConfigError, "tau2 must exceed 1e-9");
  cartan.validate();
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    c.preset = j.value("preset", c.preset);
    if (c.preset == "A1") {
      c.cartan = CartanData::a1();
    } else if (c.preset == "An") {
      c.an_n = j.value("n", 3);
      c.cartan = CartanData::an(c.an_n);
    } else if (c.preset == "custom") {
      int rank = j.at("rank").get<int>();
      c.cartan.rank = rank;
      c.cartan.gram = matrix_from_json(j.at("gram"), rank, rank);
      c.cartan.weyl_generators.clear();
      for (const auto& g : j.at("weyl_generators"))
        c.cartan.weyl_generators.push_back(matrix_from_json(g, rank, rank));
      c.cartan.lattice_basis = matrix_from_json(j.at("lattice_basis"), rank, rank);
    } else {
      fail(ErrorCode::ConfigError, "unknown preset: " + c.preset);
    }
    if (j.contains("level")) {
      c.level = Level(j.at("level").value("k", 1), j.at("level").value("s", 0.0));
    }
    if (j.contains("tau")) {
      c.taus.clear();
      for (const auto& t : j.at("tau"))
        c.taus.emplace_back(t.at(0).get<double>(), t.at(1).get<double>());
    }
    c.degree = j.value("degree", c.degree);
    c.beta_degree = j.value("beta_degree", c.beta_degree);
    c.quad_nodes = j.value("quad_nodes", c.quad_nodes);
    c.lattice_radius = j.value("lattice_radius", c.lattice_radius);
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      c.tol.matrix = t.value("matrix", c.tol.matrix);
      c.tol.fd = t.value("fd", c.tol.fd);
      c.tol.transport = t.value("transport", c.tol.transport);
    }
    c.suite = j.value("suite", c.suite);
    c.out_path = j.value("out", c.out_path);
    c.seed = j.value("seed", c.seed);
    c.steps = j.value("steps", c.steps);
    c.radius = j.value("radius", c.radius);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("bad config: ") + e.what());
  } catch (const Error&) {
    throw;
  }
  c.validate();
  return c;
}

RunConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid json: ") + e.what());
  }
  return config_from_json(j);
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["preset"] = c.preset;
  if (c.preset == "An") j["n"] = c.an_n;
  if (c.preset == "custom") {
    j["rank"] = c.cartan.rank;
    j["gram"] = matrix_to_json(c.cartan.gram);
    nlohmann::ordered_json gens = nlohmann::ordered_json::array();
    for (const auto& g : c.cartan.weyl_generators) gens.push_back(matrix_to_json(g));
    j["weyl_generators"] = std::move(gens);
    j["lattice_basis"] = matrix_to_json(c.cartan.lattice_basis);
  }
  j["level"] = {{"k", c.level.k}, {"s", c.level.s}};
  nlohmann::ordered_json taus = nlohmann::ordered_json::array();
  for (const auto& t : c.taus) taus.push_back({t.tau1, t.tau2});
  j["tau"] = std::move(taus);
  j["degree"] = c.degree;
  j["beta_degree"] = c.beta_degree;
  j["quad_nodes"] = c.quad_nodes;
  j["lattice_radius"] = c.lattice_radius;
  j["tolerances"] = {{"matrix", c.tol.matrix}, {"fd", c.tol.fd}, {"transport", c.tol.transport}};
  j["suite"] = c.suite;
  if (!c.out_path.empty()) j["out"] = c.out_path;
  j["seed"] = c.seed;
  j["steps"] = c.steps;
  j["radius"] = c.radius;
  j["threads"] = c.threads;
  return j;
}

int effective_threads(const RunConfig& c) {
  if (const char* env = std::getenv("CSLAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return c.threads >= 1 ? c.threads : 1;
}

}  // namespace cslab
