#include <doctest.h>

#include "cslab/errors.hpp"
#include "cslab/rng.hpp"
#include "cslab/transport.hpp"

using namespace cslab;

namespace {
const Level kLevel{2, 0.8};
}

TEST_CASE("path parsing") {
  TeichPath p = parse_path("0+1i, 1+1i ,0+2i");
  REQUIRE(p.waypoints.size() == 3);
  CHECK(p.waypoints[1].tau1 == doctest::Approx(1.0));
  CHECK(p.waypoints[2].tau2 == doctest::Approx(2.0));
  CHECK_FALSE(p.closed());
  CHECK(parse_complex("-2.5i") == cd(0.0, -2.5));
  CHECK(parse_complex("3") == cd(3.0, 0.0));
  CHECK(parse_complex("1e-2+0.5i") == cd(0.01, 0.5));
  CHECK_THROWS_AS(parse_path("0+1i"), Error);
  CHECK_THROWS_AS(parse_complex("abc"), Error);
}

TEST_CASE("transport basics") {
  CartanData cartan = CartanData::a1();
  TablePtr ht = table_for(BasisFamily::hermite, 1, 10, kLevel);
  TransportFamily fam = make_transport_family(*ht, ConnectionKind::hitchin_witten);
  TeichmullerPoint tau0(0.0, 1.0);
  Section h0 = Section::unit(ht->basis_ptr(), tau0, kLevel, {0, 0});

  SUBCASE("constant path does nothing") {
    TeichPath path;
    path.waypoints = {tau0, tau0};
    path.steps_per_segment = 8;
    TransportResult r = transport(fam, ht->basis(), path, h0);
    CHECK((r.endpoint.coeffs - h0.coeffs).norm() < 1e-14);
  }

  SUBCASE("reverse transport undoes the forward one") {
    TeichPath fwd;
    fwd.waypoints = {tau0, {0.5, 1.4}};
    fwd.steps_per_segment = 600;
    TransportResult go = transport(fam, ht->basis(), fwd, h0);
    TeichPath back;
    back.waypoints = {{0.5, 1.4}, tau0};
    back.steps_per_segment = 600;
    TransportResult ret = transport(fam, ht->basis(), back, go.endpoint);
    CHECK((ret.endpoint.coeffs - h0.coeffs).norm() < 1e-8);
  }

  SUBCASE("two routes to the same endpoint agree") {
    TeichPath direct;
    direct.waypoints = {{0.0, 1.0}, {0.0, 2.0}};
    direct.steps_per_segment = 400;
    TeichPath detour;
    detour.waypoints = {{0.0, 1.0}, {1.0, 1.0}, {0.0, 2.0}};
    detour.steps_per_segment = 400;
    TransportResult a = transport(fam, ht->basis(), direct, h0);
    TransportResult b = transport(fam, ht->basis(), detour, h0);
    CHECK((a.endpoint.coeffs - b.endpoint.coeffs).norm() < 1e-6);
  }

  SUBCASE("degree headroom is enforced") {
    Section top = Section::unit(ht->basis_ptr(), tau0, kLevel, {10, 0});
    TeichPath path;
    path.waypoints = {tau0, {0.1, 1.1}};
    CHECK_THROWS_AS(transport(fam, ht->basis(), path, top), Error);
  }
}

TEST_CASE("holonomy of small loops is the identity for both connections") {
  CartanData cartan = CartanData::a1();
  TablePtr ht = table_for(BasisFamily::hermite, 1, 10, kLevel);
  TablePtr ft = table_for(BasisFamily::fock, 1, 10, kLevel);
  TransportFamily hw = make_transport_family(*ht, ConnectionKind::hitchin_witten);
  TransportFamily ch = make_transport_family(*ft, ConnectionKind::l2);
  TeichPath loop = circle_loop({0.0, 1.0}, 0.1, 4, 250);
  CMat hol_hw = holonomy(hw, ht->basis(), loop, 4);
  CMat hol_ch = holonomy(ch, ft->basis(), loop, 4);
  CHECK((hol_hw - CMat::Identity(hol_hw.rows(), hol_hw.cols())).norm() < 1e-6);
  CHECK((hol_ch - CMat::Identity(hol_ch.rows(), hol_ch.cols())).norm() < 1e-6);
}

TEST_CASE("modular action on the half-plane and the model") {
  MCGElement s = MCGElement::S();
  MCGElement t = MCGElement::T();
  TeichmullerPoint taui(0.0, 1.0);
  TeichmullerPoint si = mcg_act(s, taui);
  CHECK(si.tau1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(si.tau2 == doctest::Approx(1.0).epsilon(1e-14));
  TeichmullerPoint ti = mcg_act(t, taui);
  CHECK(ti.tau1 == doctest::Approx(1.0));

  // identity acts trivially on sections
  CartanData cartan = CartanData::a1();
  TablePtr ht = table_for(BasisFamily::hermite, 1, 8, kLevel);
  Rng rng(13);
  Section psi = Section::zero(ht->basis_ptr(), TeichmullerPoint(0.3, 1.2), kLevel);
  for (int i = 0; i < ht->basis().size(); ++i)
    if (ht->basis().set.degree(i) <= 4) psi.coeffs(i) = rng.complex_normal();
  Section same = mcg_act_section(MCGElement::identity(), psi, cartan);
  CHECK((same.coeffs - psi.coeffs).norm() < 1e-10);

  // the point matrix preserves the symplectic pairing
  StructureTensors st = build_structures({0.3, 1.2}, kLevel, cartan);
  Mat p = mcg_point_matrix(s, 1);
  CHECK((p.transpose() * st.omega_t * p - st.omega_t).cwiseAbs().maxCoeff() < 1e-12);

  // frame change is holomorphic and unitary
  double mixing = 1.0;
  CMat u = mcg_frame_change(s, {0.3, 1.2}, kLevel, cartan, &mixing);
  CHECK(mixing < 1e-12);
  CHECK((u * u.adjoint() - CMat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  // push-forward preserves norms (fock side: weighted, hermite side: plain)
  Section pushed = mcg_act_section(s, psi, cartan);
  CHECK(std::abs(pushed.coeffs.norm() - psi.coeffs.norm()) < 1e-8);
}

TEST_CASE("transform intertwines the two transports") {
  CartanData cartan = CartanData::a1();
  Rng rng(7);
  IntertwiningReport rep =
      verify_intertwining({0.2, 1.4}, kLevel, cartan, 12, 8, 10, rng);
  CHECK(rep.max_residual < 1e-9);
  CHECK(rep.tested == 22);
}

TEST_CASE("coefficient derivative guards") {
  TablePtr ft = table_for(BasisFamily::fock, 1, 8, kLevel);
  Section base = Section::unit(ft->basis_ptr(), TeichmullerPoint(0.0, 1.0), kLevel, {1, 0});
  SectionFamily rough{[&](const TeichmullerPoint& t) {
    Section s = base;
    s.tau = t;
    // kink at the base point defeats the consistency check
    s.coeffs = base.coeffs * std::abs(t.tau1);
    return s;
  }};
  CHECK_THROWS_AS(delta_derivative(rough, {0.0, 1.0}, TauDir::d_tau), Error);
}
