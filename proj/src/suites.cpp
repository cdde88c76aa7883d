#include "cslab/suites.hpp"

#include <future>
#include <map>
#include <thread>

#include "cslab/errors.hpp"

#ifdef __VERSION__
#define CSLAB_COMPILER __VERSION__
#else
#define CSLAB_COMPILER "unknown"
#endif

namespace cslab {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "frames", "variations", "operators", "connections",
      "bargmann", "transport", "equivariance"};
  return names;
}

namespace {

CheckList run_one(const RunConfig& c, const std::string& name) {
  if (name == "frames") return suite_frames(c);
  if (name == "variations") return suite_variations(c);
  if (name == "operators") return suite_operators(c);
  if (name == "connections") return suite_connections(c);
  if (name == "bargmann") return suite_bargmann(c);
  if (name == "transport") return suite_transport(c);
  if (name == "equivariance") return suite_equivariance(c);
  fail(ErrorCode::ConfigError, "unknown suite: " + name);
}

}  // namespace

CheckList run_suite(const RunConfig& c, const std::string& name) {
  c.validate();
  if (name != "all") return run_one(c, name);

  const auto& names = suite_names();
  const int workers = std::min<int>(effective_threads(c), static_cast<int>(names.size()));
  std::vector<CheckList> results(names.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < names.size(); ++i) results[i] = run_one(c, names[i]);
  } else {
    std::vector<std::future<CheckList>> futures;
    futures.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i)
      futures.push_back(std::async(std::launch::async, [&, i] { return run_one(c, names[i]); }));
    for (std::size_t i = 0; i < names.size(); ++i) results[i] = futures[i].get();
  }
  CheckList all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  return all;
}

bool all_pass(const CheckList& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

// short stable digest of the configuration, echoed per check
std::string config_digest(const RunConfig& c) {
  std::string dump = config_to_json(c).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

nlohmann::ordered_json report_json(const RunConfig& c, const CheckList& checks) {
  nlohmann::ordered_json j;
  j["schema"] = "cslab-report/1";
  j["environment"] = {{"compiler", CSLAB_COMPILER},
                      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                    std::to_string(EIGEN_MINOR_VERSION)},
                      {"threads", effective_threads(c)}};
  j["config"] = config_to_json(c);
  const std::string digest = config_digest(c);
  CheckList sorted = checks;
  std::sort(sorted.begin(), sorted.end(),
            [](const Check& a, const Check& b) { return a.id < b.id; });
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& ck : sorted) {
    nlohmann::ordered_json e;
    e["id"] = ck.id;
    e["paper_ref"] = ck.ref;
    e["inputs"] = digest;
    e["residual"] = ck.residual;
    e["tolerance"] = ck.tol;
    e["pass"] = ck.pass;
    list.push_back(std::move(e));
  }
  j["checks"] = std::move(list);
  j["all_pass"] = all_pass(checks);
  return j;
}

}  // namespace cslab
