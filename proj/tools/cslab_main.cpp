// cslab: genus-one quantisation laboratory.
//
// Subcommands:
//   verify       run a verification suite and write a JSON report
//   transport    parallel-transport a section file along a path
//   bargmann     transform a position-section file to the holomorphic side
//   holonomy     holonomy matrix of a loop, with the flatness defect
//   equivariant  lattice-average a gaussian seed and transform it, CSV output
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration error.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "cslab/bargmann.hpp"
#include "cslab/section_io.hpp"
#include "cslab/suites.hpp"
#include "cslab/transport.hpp"

namespace {

using namespace cslab;

struct CommonFlags {
  std::string config_path;
  std::string suite;
  std::string out;
  std::string tau_text;
  std::string level_text;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int degree = 0;
  int steps = 0;
  double radius = 0.0;
};

RunConfig load_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = read_config_file(f.config_path);
  // flags win over the file
  if (!f.suite.empty()) cfg.suite = f.suite;
  if (!f.out.empty()) cfg.out_path = f.out;
  if (f.seed_set) cfg.seed = f.seed;
  if (f.degree > 0) cfg.degree = f.degree;
  if (f.steps > 0) cfg.steps = f.steps;
  if (f.radius > 0) cfg.radius = f.radius;
  if (!f.tau_text.empty()) {
    cfg.taus.clear();
    for (const auto& p : parse_path(f.tau_text + "," + f.tau_text).waypoints) {
      cfg.taus.push_back(p);
      break;
    }
  }
  if (!f.level_text.empty()) {
    cd t = parse_complex(f.level_text);
    double k = t.real();
    if (std::abs(k - std::round(k)) > 1e-12)
      fail(ErrorCode::ConfigError, "level real part must be an integer");
    cfg.level = Level(static_cast<int>(std::round(k)), t.imag());
  }
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "configuration file (json)");
  app->add_option("--out", f.out, "output path");
  auto* seed = app->add_option("--seed", f.seed, "seed for randomised property checks");
  seed->each([&f](const std::string&) { f.seed_set = true; });
  app->add_option("--degree", f.degree, "basis truncation degree");
  app->add_option("--tau", f.tau_text, "base point, e.g. \"0.3+1.2i\"");
  app->add_option("--level", f.level_text, "quantum level, e.g. \"2+0.7i\"");
  app->add_option("--steps", f.steps, "integrator steps per unit path");
  app->add_option("--radius", f.radius, "loop radius");
}

int cmd_verify(const CommonFlags& flags) {
  RunConfig cfg = load_config(flags);
  CheckList checks = run_suite(cfg, cfg.suite);
  std::string out_path = cfg.out_path.empty() ? "report.json" : cfg.out_path;
  write_text_atomic(out_path, report_json(cfg, checks).dump(2) + "\n");
  int failures = 0;
  for (const auto& c : checks) {
    std::printf("%-52s %-40s %10.3e  %s\n", c.id.c_str(), c.ref.c_str(), c.residual,
                c.pass ? "pass" : "FAIL");
    if (!c.pass) ++failures;
  }
  std::printf("%zu checks, %d failures; report written to %s\n", checks.size(), failures,
              out_path.c_str());
  return failures == 0 ? 0 : 1;
}

int cmd_transport(const CommonFlags& flags, const std::string& section_path,
                  const std::string& path_text, const std::string& kind_name) {
  RunConfig cfg = load_config(flags);
  Section initial = read_section_file(section_path);
  TeichPath path = parse_path(path_text, cfg.steps);
  ConnectionKind kind = kind_name == "hw" ? ConnectionKind::hitchin_witten
                                          : ConnectionKind::complexified_hitchin;
  BasisFamily fam = initial.basis->family;
  if (kind == ConnectionKind::hitchin_witten && fam != BasisFamily::hermite)
    fail(ErrorCode::ConfigError, "the real-polarised connection transports hermite sections");
  if (kind != ConnectionKind::hitchin_witten && fam != BasisFamily::fock)
    fail(ErrorCode::ConfigError, "the holomorphic connections transport fock sections");
  TablePtr table = table_for(fam, initial.basis->rank, initial.basis->degree, initial.level);
  TransportFamily tf = make_transport_family(
      *table, kind == ConnectionKind::hitchin_witten ? ConnectionKind::hitchin_witten
                                                     : ConnectionKind::l2);
  TransportResult res = transport_checked(tf, table->basis(), path, initial,
                                          cfg.tol.transport);
  nlohmann::ordered_json j;
  j["endpoint"] = section_to_json(res.endpoint);
  j["norm_drift"] = res.norm_drift;
  std::string out_path = cfg.out_path.empty() ? "transport.json" : cfg.out_path;
  write_text_atomic(out_path, j.dump(2) + "\n");
  std::printf("norm drift %.3e; endpoint written to %s\n", res.norm_drift, out_path.c_str());
  return 0;
}

int cmd_bargmann(const CommonFlags& flags, const std::string& section_path) {
  RunConfig cfg = load_config(flags);
  Section position = read_section_file(section_path);
  Section image = bargmann_closed_form(position);
  std::string out_path = cfg.out_path.empty() ? "bargmann.json" : cfg.out_path;
  write_section_file(image, out_path);
  std::printf("holomorphic image written to %s\n", out_path.c_str());
  return 0;
}

int cmd_holonomy(const CommonFlags& flags, const std::string& center_text,
                 const std::string& kind_name, int block_degree) {
  RunConfig cfg = load_config(flags);
  cd center = parse_complex(center_text);
  TeichPath loop = circle_loop({center.real(), center.imag()}, cfg.radius, 8,
                               std::max(1, cfg.steps / 8));
  ConnectionKind kind = kind_name == "hw" ? ConnectionKind::hitchin_witten
                                          : ConnectionKind::complexified_hitchin;
  BasisFamily fam =
      kind == ConnectionKind::hitchin_witten ? BasisFamily::hermite : BasisFamily::fock;
  TablePtr table = table_for(fam, cfg.cartan.rank, cfg.degree, cfg.level);
  TransportFamily tf = make_transport_family(
      *table, kind == ConnectionKind::hitchin_witten ? ConnectionKind::hitchin_witten
                                                     : ConnectionKind::l2);
  CMat hol = holonomy(tf, table->basis(), loop, block_degree);
  double defect = (hol - CMat::Identity(hol.rows(), hol.cols())).norm();
  nlohmann::ordered_json j;
  j["block_degree"] = block_degree;
  j["defect"] = defect;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < hol.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < hol.cols(); ++c)
      row.push_back({hol(i, c).real(), hol(i, c).imag()});
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  std::string out_path = cfg.out_path.empty() ? "holonomy.json" : cfg.out_path;
  write_text_atomic(out_path, j.dump(2) + "\n");
  std::printf("holonomy defect %.3e; matrix written to %s\n", defect, out_path.c_str());
  return defect < cfg.tol.transport ? 0 : 1;
}

int cmd_equivariant(const CommonFlags& flags, int grid, double extent) {
  RunConfig cfg = load_config(flags);
  const int r = cfg.cartan.rank;
  const TeichmullerPoint tau = cfg.taus.front();
  FrameSet fs = build_frames(tau, cfg.level, cfg.cartan);
  GaussianPacket seed = GaussianPacket::standard(2 * r, 1.0 / cfg.level.abs_t());
  std::vector<GaussianPacket> theta =
      equivariant_packets(cfg.cartan, cfg.level, seed, cfg.lattice_radius);
  std::vector<CVec> zs;
  CVec values;
  std::vector<cd> vals;
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b) {
      CVec z = CVec::Zero(2 * r);
      z(0) = cd(-extent + 2.0 * extent * a / std::max(1, grid - 1),
                -extent + 2.0 * extent * b / std::max(1, grid - 1));
      zs.push_back(z);
      cd acc = 0.0;
      for (const auto& p : theta) acc += bargmann_packet_value(p, fs, cfg.level, z);
      vals.push_back(acc);
    }
  values = Eigen::Map<CVec>(vals.data(), static_cast<int>(vals.size()));
  std::string out_path = cfg.out_path.empty() ? "equivariant.csv" : cfg.out_path;
  write_values_csv(out_path, zs, values);
  std::printf("%d values written to %s\n", static_cast<int>(zs.size()), out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"genus-one quantisation laboratory"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string section_path, path_text = "0+1i,0.5+1.5i", kind = "hw";
  std::string center_text = "0+1i";
  int block_degree = 4, grid = 8;
  double extent = 1.0;

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, flags);
  verify->add_option("--suite", flags.suite, "suite name or 'all'");

  auto* transport_cmd = app.add_subcommand("transport", "transport a section along a path");
  add_common(transport_cmd, flags);
  transport_cmd->add_option("--section", section_path, "input section file")->required();
  transport_cmd->add_option("--path", path_text, "comma-separated waypoints a+bi");
  transport_cmd->add_option("--connection", kind, "hw | ch");

  auto* bargmann_cmd = app.add_subcommand("bargmann", "transform a position section");
  add_common(bargmann_cmd, flags);
  bargmann_cmd->add_option("--section", section_path, "input section file")->required();

  auto* holonomy_cmd = app.add_subcommand("holonomy", "loop holonomy matrix");
  add_common(holonomy_cmd, flags);
  holonomy_cmd->add_option("--loop-center", center_text, "loop centre a+bi");
  holonomy_cmd->add_option("--connection", kind, "hw | ch");
  holonomy_cmd->add_option("--block-degree", block_degree, "basis block degree");

  auto* equi_cmd = app.add_subcommand("equivariant", "averaged transform on a grid");
  add_common(equi_cmd, flags);
  equi_cmd->add_option("--grid", grid, "points per axis");
  equi_cmd->add_option("--extent", extent, "half-width of the grid");

  try {
    app.parse(argc, argv);
    if (verify->parsed()) return cmd_verify(flags);
    if (transport_cmd->parsed()) return cmd_transport(flags, section_path, path_text, kind);
    if (bargmann_cmd->parsed()) return cmd_bargmann(flags, section_path);
    if (holonomy_cmd->parsed()) return cmd_holonomy(flags, center_text, kind, block_degree);
    if (equi_cmd->parsed()) return cmd_equivariant(flags, grid, extent);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const cslab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case cslab::ErrorCode::ConfigError:
      case cslab::ErrorCode::FileFormatError:
      case cslab::ErrorCode::InvalidArgument:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
