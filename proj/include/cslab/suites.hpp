#pragma once

#include <json.hpp>

#include "cslab/config.hpp"

namespace cslab {

// One verification check: `ref` is the stable anchor into the verification
// catalog (doc/checks.md); every id carries exactly one anchor.
struct Check {
  std::string id;
  std::string ref;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

using CheckList = std::vector<Check>;

CheckList suite_frames(const RunConfig& c);
CheckList suite_variations(const RunConfig& c);
CheckList suite_operators(const RunConfig& c);
CheckList suite_connections(const RunConfig& c);
CheckList suite_bargmann(const RunConfig& c);
CheckList suite_transport(const RunConfig& c);
CheckList suite_equivariance(const RunConfig& c);

const std::vector<std::string>& suite_names();
// dispatch by name; "all" runs every suite, optionally on a worker pool
// (CSLAB_THREADS), with results in fixed suite order regardless of timing
CheckList run_suite(const RunConfig& c, const std::string& name);

bool all_pass(const CheckList& checks);
nlohmann::ordered_json report_json(const RunConfig& c, const CheckList& checks);

}  // namespace cslab
