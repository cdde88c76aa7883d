#include <doctest.h>

#include "cslab/bargmann.hpp"
#include "cslab/dual.hpp"
#include "cslab/errors.hpp"
#include "cslab/rng.hpp"

using namespace cslab;

namespace {
const cd I{0.0, 1.0};
const TeichmullerPoint kTau{-0.3, 0.9};
const Level kLevel{2, 1.3};
}

TEST_CASE("ground state goes to the constant, checked against the integral") {
  TablePtr ht = table_for(BasisFamily::hermite, 1, 8, kLevel);
  Section h0 = Section::unit(ht->basis_ptr(), kTau, kLevel, {0, 0});
  Section image = bargmann_closed_form(h0);
  CHECK(std::abs(image.coeffs(0) - 1.0) < 1e-14);
  CHECK(image.coeffs.tail(image.coeffs.size() - 1).norm() < 1e-14);

  Rng rng(3);
  auto psi = [&](const Vec& q) { return evaluate_wave(h0, q); };
  for (int t = 0; t < 5; ++t) {
    CVec z(2);
    z << rng.complex_normal() * 0.5, rng.complex_normal() * 0.5;
    CHECK(std::abs(bargmann_kernel_point(psi, z, kLevel, 1, 48) - 1.0) < 1e-10);
  }
}

TEST_CASE("multiplication by a coordinate lowers through the ladder relation") {
  TablePtr ht = table_for(BasisFamily::hermite, 1, 8, kLevel);
  Section h0 = Section::unit(ht->basis_ptr(), kTau, kLevel, {0, 0});
  for (int j = 0; j < 2; ++j) {
    Section qh0 = h0;
    qh0.coeffs = op_mult_q(ht->basis(), j, kLevel) * h0.coeffs;
    Section image = bargmann_closed_form(qh0);
    Section want = Section::zero(image.basis, kTau, kLevel);
    std::vector<int> ej(2, 0);
    ej[j] = 1;
    want.coeffs(want.basis->set.find(ej)) = -I * 0.5;
    CHECK((image.coeffs - want.coeffs).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("unitarity on the truncated span") {
  TablePtr ft = table_for(BasisFamily::fock, 1, 10, kLevel);
  CMat B = bargmann_matrix(*ft);
  const Basis& fb = ft->basis();
  CVec w(fb.size());
  for (int i = 0; i < fb.size(); ++i) w(i) = fock_weight(kLevel, fb.set.exponents(i));
  CMat gram = B.adjoint() * w.asDiagonal() * B;
  CHECK((gram - CMat::Identity(fb.size(), fb.size())).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kernel quadrature agrees with the recursion on polynomials") {
  TablePtr ht = table_for(BasisFamily::hermite, 1, 8, kLevel);
  Rng rng(9);
  Section psi = Section::zero(ht->basis_ptr(), kTau, kLevel);
  for (int i = 0; i < ht->basis().size(); ++i)
    if (ht->basis().set.degree(i) <= 3) psi.coeffs(i) = rng.complex_normal();
  Section image = bargmann_closed_form(psi);
  std::vector<CVec> zs;
  for (int t = 0; t < 6; ++t) {
    CVec z(2);
    z << rng.complex_normal() * 0.6, rng.complex_normal() * 0.6;
    zs.push_back(z);
  }
  CVec vals = bargmann_quadrature(psi, zs, 48, 1e-9);
  for (std::size_t i = 0; i < zs.size(); ++i)
    CHECK(std::abs(vals(static_cast<int>(i)) - evaluate_wave(image, zs[i])) < 1e-9);
}

TEST_CASE("quadrature divergence is detected") {
  TablePtr ht = table_for(BasisFamily::hermite, 1, 8, kLevel);
  Section h0 = Section::unit(ht->basis_ptr(), kTau, kLevel, {0, 0});
  std::vector<CVec> zs{CVec::Zero(2)};
  // 2 vs 4 nodes cannot resolve the gaussian: the check must trip
  CHECK_THROWS_AS(bargmann_quadrature(h0, zs, 2, 1e-14), Error);
}

TEST_CASE("packet transform equals quadrature for a shifted gaussian") {
  CartanData cartan = CartanData::a1();
  FrameSet fs = build_frames(kTau, kLevel, cartan);
  Rng rng(21);
  GaussianPacket seed = GaussianPacket::standard(2, 1.0 / kLevel.abs_t());
  Vec center(2);
  center << 0.3, -0.2;
  GaussianPacket shifted = packet_pullback(seed, Mat::Identity(2, 2), -center);
  SliceFn s = [&](const Vec& u) { return packet_eval(shifted, u); };
  std::vector<CVec> zs;
  for (int t = 0; t < 4; ++t) {
    CVec z(2);
    z << rng.complex_normal() * 0.4, rng.complex_normal() * 0.4;
    zs.push_back(z);
  }
  EquivariantTransform tr = bargmann_equivariant(s, fs, kLevel, zs, 40, 1e-8);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    cd closed = bargmann_packet_value(shifted, fs, kLevel, zs[i]);
    CHECK(std::abs(closed - tr.values(static_cast<int>(i))) < 1e-9);
  }
}

TEST_CASE("transpose pairs through the transform") {
  TablePtr ht = table_for(BasisFamily::hermite, 1, 8, kLevel);
  Rng rng(33);
  Section psi1 = Section::zero(ht->basis_ptr(), kTau, kLevel);
  Section psi2 = Section::zero(ht->basis_ptr(), kTau, kLevel);
  for (int i = 0; i < ht->basis().size(); ++i) {
    if (ht->basis().set.degree(i) <= 2) {
      psi1.coeffs(i) = rng.complex_normal();
      psi2.coeffs(i) = rng.complex_normal();
    }
  }
  Section f1 = bargmann_closed_form(psi1);
  DualElement T = dual_regular_fock([f1](const CVec& z) { return evaluate_wave(f1, z); },
                                    kLevel, 1, 14);
  cd lhs = transpose_bargmann(T).pair(psi2);
  cd rhs = inner_product(psi1, psi2);
  CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)));

  // point functionals become conjugated kernel integrals
  CVec z0(2);
  z0 << cd(0.2, -0.3), cd(-0.1, 0.4);
  cd via = transpose_bargmann(dual_point_eval_z(z0)).pair(psi2);
  auto wave = [&](const Vec& q) { return evaluate_wave(psi2, q); };
  cd direct = std::conj(bargmann_kernel_point(wave, z0, kLevel, 1, 48));
  CHECK(std::abs(via - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
}

TEST_CASE("side bookkeeping of functionals") {
  CHECK_THROWS_AS(transpose_bargmann(dual_point_eval_q(Vec::Zero(2))), Error);
}
