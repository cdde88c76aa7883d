#include "cslab/section_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cslab/errors.hpp"

namespace cslab {

namespace {

std::string family_name(BasisFamily f) {
  switch (f) {
    case BasisFamily::hermite: return "hermite";
    case BasisFamily::fock: return "fock";
    case BasisFamily::extended: return "extended";
  }
  return "?";
}

BasisFamily family_from(const std::string& s) {
  if (s == "hermite") return BasisFamily::hermite;
  if (s == "fock") return BasisFamily::fock;
  if (s == "extended") return BasisFamily::extended;
  fail(ErrorCode::FileFormatError, "unknown basis family: " + s);
}

}  // namespace

nlohmann::ordered_json section_to_json(const Section& s) {
  nlohmann::ordered_json j;
  const Basis& b = *s.basis;
  j["basis"] = family_name(b.family);
  j["rank"] = b.rank;
  j["level"] = {{"k", s.level.k}, {"s", s.level.s}};
  j["tau"] = {s.tau.tau1, s.tau.tau2};
  j["degree"] = b.degree;
  if (b.family == BasisFamily::extended) j["beta_degree"] = b.beta_degree;
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (int i = 0; i < b.size(); ++i) {
    cd c = s.coeffs(i);
    if (c == cd(0.0)) continue;
    nlohmann::ordered_json entry;
    entry["index"] = b.set.exponents(i);
    entry["re"] = c.real();
    entry["im"] = c.imag();
    coeffs.push_back(entry);
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Section section_from_json(const nlohmann::json& j) {
  try {
    BasisFamily fam = family_from(j.at("basis").get<std::string>());
    int rank = j.at("rank").get<int>();
    int degree = j.at("degree").get<int>();
    int beta = j.value("beta_degree", 4);
    Level level(j.at("level").at("k").get<int>(), j.at("level").at("s").get<double>());
    auto taus = j.at("tau");
    TeichmullerPoint tau(taus.at(0).get<double>(), taus.at(1).get<double>());
    Section s = Section::zero(make_basis(fam, rank, degree, beta), tau, level);
    for (const auto& entry : j.at("coeffs")) {
      std::vector<int> idx = entry.at("index").get<std::vector<int>>();
      int i = s.basis->set.find(idx);
      if (i < 0) fail(ErrorCode::FileFormatError, "coefficient index outside the basis");
      s.coeffs(i) = cd(entry.at("re").get<double>(), entry.at("im").get<double>());
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::FileFormatError, std::string("bad section file: ") + e.what());
  }
}

Section read_section_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FileFormatError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::FileFormatError, std::string("bad json: ") + e.what());
  }
  return section_from_json(j);
}

void write_section_file(const Section& s, const std::string& path) {
  write_text_atomic(path, section_to_json(s).dump(2) + "\n");
}

void write_values_csv(const std::string& path, const std::vector<CVec>& zs,
                      const CVec& values) {
  if (static_cast<int>(zs.size()) != values.size())
    fail(ErrorCode::DimensionMismatch, "csv rows");
  std::ostringstream out;
  if (!zs.empty()) {
    for (int l = 0; l < zs.front().size(); ++l)
      out << "z" << (l + 1) << "re,z" << (l + 1) << "im,";
    out << "value_re,value_im\n";
  }
  out.precision(17);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (int l = 0; l < zs[i].size(); ++l)
      out << zs[i](l).real() << "," << zs[i](l).imag() << ",";
    out << values(static_cast<int>(i)).real() << "," << values(static_cast<int>(i)).imag()
        << "\n";
  }
  write_text_atomic(path, out.str());
}

void write_text_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) fail(ErrorCode::FileFormatError, "cannot write " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrorCode::FileFormatError, "cannot rename into " + path);
}

}  // namespace cslab
