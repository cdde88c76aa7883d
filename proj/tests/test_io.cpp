#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cslab/config.hpp"
#include "cslab/errors.hpp"
#include "cslab/rng.hpp"
#include "cslab/section_io.hpp"

using namespace cslab;

TEST_CASE("section files round trip") {
  Rng rng(19);
  for (auto family : {BasisFamily::hermite, BasisFamily::fock, BasisFamily::extended}) {
    Section s = Section::zero(make_basis(family, 1, 6, 2), TeichmullerPoint(0.25, 1.5),
                              Level(3, -0.7));
    for (int i = 0; i < s.basis->size(); ++i)
      if (rng.uniform() < 0.3) s.coeffs(i) = rng.complex_normal();
    Section back = section_from_json(section_to_json(s));
    CHECK(back.basis->family == family);
    CHECK(back.level.k == 3);
    CHECK((back.coeffs - s.coeffs).norm() == 0.0);  // exact float round trip
  }
}

TEST_CASE("malformed section files are rejected") {
  nlohmann::json j;
  j["basis"] = "nonsense";
  CHECK_THROWS_AS(section_from_json(j), Error);

  nlohmann::json k;
  k["basis"] = "fock";
  k["rank"] = 1;
  k["degree"] = 4;
  k["level"] = {{"k", 1}, {"s", 0.0}};
  k["tau"] = {0.0, 1.0};
  k["coeffs"] = nlohmann::json::array({{{"index", {9, 0}}, {"re", 1.0}, {"im", 0.0}}});
  CHECK_THROWS_AS(section_from_json(k), Error);  // index outside the basis
}

TEST_CASE("config parsing, defaults, and validation") {
  nlohmann::json j;
  j["preset"] = "A1";
  j["level"] = {{"k", 2}, {"s", 0.5}};
  j["degree"] = 8;
  RunConfig c = config_from_json(j);
  CHECK(c.level.k == 2);
  CHECK(c.degree == 8);
  CHECK(c.cartan.rank == 1);

  nlohmann::json bad = j;
  bad["level"] = {{"k", 0}, {"s", 0.0}};
  CHECK_THROWS_AS(config_from_json(bad), Error);

  nlohmann::json tiny = j;
  tiny["degree"] = 2;
  CHECK_THROWS_AS(config_from_json(tiny), Error);

  nlohmann::json an = j;
  an["preset"] = "An";
  an["n"] = 3;
  RunConfig c2 = config_from_json(an);
  CHECK(c2.cartan.rank == 2);

  // custom block with explicit matrices
  nlohmann::json cust;
  cust["preset"] = "custom";
  cust["rank"] = 1;
  cust["gram"] = {{1.0}};
  cust["weyl_generators"] = {{{-1.0}}};
  cust["lattice_basis"] = {{2.0 * std::sqrt(M_PI)}};
  cust["degree"] = 8;
  RunConfig c3 = config_from_json(cust);
  CHECK(c3.cartan.weyl_group().size() == 2);
}

TEST_CASE("csv export shape") {
  std::vector<CVec> zs;
  CVec z(2);
  z << cd(0.1, 0.2), cd(-0.3, 0.4);
  zs.push_back(z);
  CVec vals(1);
  vals << cd(1.5, -2.5);
  std::string path = "test_values.csv";
  write_values_csv(path, zs, vals);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "z1re,z1im,z2re,z2im,value_re,value_im");
  CHECK(row.substr(0, 8) == "0.1,0.2,");
  std::remove(path.c_str());
}
