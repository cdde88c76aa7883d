#include <doctest.h>

#include "cslab/cartan.hpp"
#include "cslab/errors.hpp"
#include "cslab/rng.hpp"

using namespace cslab;

TEST_CASE("rank-one Weyl group is the sign flip") {
  CartanData c = CartanData::a1();
  c.validate();
  const auto& w = c.weyl_group();
  CHECK(w.size() == 2);
  CHECK((w[0] - Eigen::MatrixXd::Identity(1, 1)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((w[1] + Eigen::MatrixXd::Identity(1, 1)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rank-two reflections close to the expected order") {
  // brute-force oracle: the permutation group on three letters has 6 elements
  CartanData c = CartanData::an(3);
  c.validate();
  CHECK(c.weyl_group().size() == 6);
  CHECK(CartanData::an(4).weyl_group().size() == 24);
}

TEST_CASE("identity-only generators give the trivial group") {
  CartanData c = CartanData::a1();
  c.weyl_generators = {Eigen::MatrixXd::Identity(1, 1)};
  CHECK(enumerate_weyl(c.weyl_generators).size() == 1);
}

TEST_CASE("enumeration bails out on non-terminating input") {
  Eigen::MatrixXd rot(2, 2);
  double a = 0.7;  // irrational rotation never closes
  rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  CHECK_THROWS_AS(enumerate_weyl({rot}, 100), Error);
}

TEST_CASE("gauge action laws") {
  CartanData c = CartanData::an(3);
  Rng rng(7);
  const int r = c.rank;
  GaugeElement id = GaugeElement::identity(r);

  auto random_element = [&] {
    GaugeElement g;
    g.weyl_index = rng.uniform_int(0, static_cast<int>(c.weyl_group().size()) - 1);
    g.shift_dx = Eigen::VectorXi(r);
    g.shift_dy = Eigen::VectorXi(r);
    for (int i = 0; i < r; ++i) {
      g.shift_dx(i) = rng.uniform_int(-3, 3);
      g.shift_dy(i) = rng.uniform_int(-3, 3);
    }
    return g;
  };

  SUBCASE("identity fixes every point") {
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd x(4 * r);
      for (int i = 0; i < x.size(); ++i) x(i) = rng.normal();
      CHECK((gauge_act(c, id, x) - x).cwiseAbs().maxCoeff() < 1e-14);
    }
  }

  SUBCASE("rank-one sign flip acts diagonally before the shift") {
    CartanData a1 = CartanData::a1();
    GaugeElement flip = GaugeElement::identity(1);
    flip.weyl_index = 1;
    Eigen::VectorXd x(4);
    x << 0.3, -1.2, 0.5, 2.0;
    CHECK((gauge_act(a1, flip, x) + x).cwiseAbs().maxCoeff() < 1e-14);
  }

  SUBCASE("composition law holds on random triples") {
    for (int t = 0; t < 100; ++t) {
      GaugeElement g1 = random_element(), g2 = random_element();
      Eigen::VectorXd x(4 * r);
      for (int i = 0; i < x.size(); ++i) x(i) = rng.normal();
      Eigen::VectorXd seq = gauge_act(c, g1, gauge_act(c, g2, x));
      Eigen::VectorXd join = gauge_act(c, gauge_compose(c, g1, g2), x);
      CHECK((seq - join).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, x.cwiseAbs().maxCoeff()));
    }
  }

  SUBCASE("every Weyl element maps the lattice into itself") {
    Eigen::MatrixXd lat_inv = c.lattice_basis.inverse();
    for (const auto& w : c.weyl_group()) {
      Eigen::MatrixXd m = lat_inv * w * c.lattice_basis;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          CHECK(std::abs(m(i, j) - std::round(m(i, j))) < 1e-9);
    }
  }

  SUBCASE("dimension mismatch is rejected") {
    Eigen::VectorXd bad(3);
    bad.setZero();
    CHECK_THROWS_AS(gauge_act(c, id, bad), Error);
  }
}

TEST_CASE("validation rejects broken input") {
  CartanData c = CartanData::a1();
  c.gram(0, 0) = -1.0;
  CHECK_THROWS_AS(c.validate(), Error);

  CartanData d = CartanData::a1();
  d.weyl_generators = {Eigen::MatrixXd::Constant(1, 1, 2.0)};  // not an isometry
  CHECK_THROWS_AS(d.validate(), Error);
}
