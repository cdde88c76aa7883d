#include <doctest.h>

#include "cslab/errors.hpp"
#include "cslab/operators.hpp"
#include "cslab/rng.hpp"
#include "cslab/weylop.hpp"

using namespace cslab;

namespace {
const cd I{0.0, 1.0};
const TeichmullerPoint kTau{0.2, 1.1};
const Level kLevel{2, 0.9};

double block_diff(const Basis& b, const SpMat& lhs, const SpMat& rhs, int headroom) {
  CMat dl(lhs), dr(rhs);
  double res = 0.0;
  for (int col = 0; col < b.size(); ++col) {
    if (b.set.degree(col) > b.degree - headroom) continue;
    res = std::max(res, (dl.col(col) - dr.col(col)).cwiseAbs().maxCoeff());
  }
  return res;
}
}  // namespace

TEST_CASE("ladder commutation relations") {
  TablePtr t = table_for(BasisFamily::fock, 1, 10, kLevel);
  const double h = kLevel.hbar();
  const Basis& b = t->basis();
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      SpMat a = ladder(*t, j, LadderKind::annihilate);
      SpMat cr = ladder(*t, l, LadderKind::create);
      SpMat want(b.size(), b.size());
      if (j == l) {
        want.setIdentity();
        want = SpMat((2.0 * h) * want);
      }
      CHECK(block_diff(b, SpMat(a * cr) - SpMat(cr * a), want, 2) < 1e-14);
    }
}

TEST_CASE("displayed operator pairs commute and expand through ladders") {
  TablePtr th = table_for(BasisFamily::hermite, 2, 6, kLevel);
  TablePtr tf = table_for(BasisFamily::fock, 2, 6, kLevel);
  const double h = kLevel.hbar();
  for (int j = 0; j < 2; ++j) {
    SpMat M = md_operator(*th, j, MdKind::M);
    SpMat D = md_operator(*th, j, MdKind::D);
    CHECK(block_diff(th->basis(), SpMat(M * D), SpMat(D * M), 2) < 1e-14);
    SpMat mu = mudelta_operator(*tf, j, MuDeltaKind::mu);
    SpMat de = mudelta_operator(*tf, j, MuDeltaKind::delta);
    CHECK(block_diff(tf->basis(), SpMat(mu * de), SpMat(de * mu), 2) < 1e-14);
    SpMat via = ladder(*tf, j, LadderKind::create) + I * ladder(*tf, j + 2, LadderKind::create);
    CHECK((CMat(mu) - CMat(via)).cwiseAbs().maxCoeff() < 1e-14);
    // delta_j applied to the bare coordinate gives twice the quantum constant
    std::vector<int> ej(4, 0);
    ej[j] = 1;
    CVec zj = CVec::Zero(tf->basis().size());
    zj(tf->basis().set.find(ej)) = 1.0;
    CVec image = de * zj;
    CHECK(std::abs(image(0) - 2.0 * h) < 1e-15);
  }
}

TEST_CASE("prequantum curvature identities on the extended basis") {
  TablePtr t = table_for(BasisFamily::extended, 1, 8, kLevel, 3);
  const Basis& b = t->basis();
  const double h = kLevel.hbar();
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      SpMat comm = SpMat(nabla_z(*t, j) * nabla_zbar(*t, l)) -
                   SpMat(nabla_zbar(*t, l) * nabla_z(*t, j));
      SpMat want(b.size(), b.size());
      if (j == l) {
        want.setIdentity();
        want = SpMat((1.0 / (2.0 * h)) * want);
      }
      CHECK(block_diff(b, comm, want, 2) < 1e-13);
      SpMat holo = SpMat(nabla_z(*t, j) * nabla_z(*t, l)) -
                   SpMat(nabla_z(*t, l) * nabla_z(*t, j));
      CHECK(block_diff(b, holo, SpMat(b.size(), b.size()), 2) < 1e-13);
    }
}

TEST_CASE("prequantum derivative along frame directions matches components") {
  CartanData cartan = CartanData::a1();
  FrameSet fs = build_frames(kTau, kLevel, cartan);
  TablePtr t = table_for(BasisFamily::extended, 1, 8, kLevel, 3);
  // the z_j coordinate field reproduces nabla_z
  CVec dir = 0.5 * (fs.frame.col(0).cast<cd>() - I * fs.frame.col(2).cast<cd>());
  SpMat lhs = prequantum_extended(*t, fs, dir);
  SpMat rhs = nabla_z(*t, 0);
  CHECK((CMat(lhs) - CMat(rhs)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hermite-side covariant derivative against the rho-frame relation") {
  // nabla along the conjugated slice tangents acts by the displayed first
  // order operator: -(i t / 2) D_j + (i t^2 / (2|t|)) M_j
  CartanData cartan = CartanData::a1();
  TablePtr t = table_for(BasisFamily::hermite, 1, 10, kLevel);
  FrameSet fs = build_frames(kTau, kLevel, cartan);
  const cd tt = kLevel.t();
  const double at = kLevel.abs_t();

  CVec xbar = fs.script_X.col(0).head(2).conjugate();
  SpMat lhs = nabla_slice(*t, kTau, kLevel, cartan, xbar);
  SpMat want = (-I * tt / 2.0) * md_operator(*t, 0, MdKind::D) +
               (I * tt * tt / (2.0 * at)) * md_operator(*t, 0, MdKind::M);
  CHECK((CMat(lhs) - CMat(want)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("potentials: closed forms, assemblies, and the transport split") {
  CartanData cartan = CartanData::a1();
  TablePtr t = table_for(BasisFamily::hermite, 1, 12, kLevel);
  const Basis& b = t->basis();
  for (TauDir dir : {TauDir::d_tau, TauDir::d_tau_bar}) {
    SpMat closed = hw_potential(*t, kTau, dir);
    SpMat assembled = hw_potential_assembled(*t, kTau, kLevel, cartan, dir);
    CHECK(block_diff(b, assembled, closed, 2) < 1e-11);
    SpMat generator = transport_generator(*t, ConnectionKind::hitchin_witten, kTau, dir);
    SpMat split = hw_transport_term_assembled(*t, kTau, kLevel, cartan, dir) + closed;
    CHECK(block_diff(b, split, generator, 2) < 1e-11);
  }
}

TEST_CASE("holomorphic potential preserves the fock slice") {
  CartanData cartan = CartanData::a1();
  TablePtr et = table_for(BasisFamily::extended, 1, 8, kLevel, 4);
  TablePtr ft = table_for(BasisFamily::fock, 1, 8, kLevel);
  for (TauDir dir : {TauDir::d_tau, TauDir::d_tau_bar}) {
    SpMat gen = ch_extended_generator(*et, kTau, kLevel, cartan, dir);
    // columns with headroom spawn no antiholomorphic coefficients
    CMat dense(gen);
    double bad = 0.0;
    for (int col = 0; col < et->basis().size(); ++col) {
      const auto& e = et->basis().set.exponents(col);
      int alpha_deg = 0;
      bool holo = true;
      for (int l = 0; l < 2; ++l) {
        alpha_deg += e[l];
        if (e[2 + l] != 0) holo = false;
      }
      if (!holo || alpha_deg > et->basis().degree - 2) continue;
      for (int row = 0; row < et->basis().size(); ++row) {
        const auto& f = et->basis().set.exponents(row);
        if (f[2] != 0 || f[3] != 0) bad = std::max(bad, std::abs(dense(row, col)));
      }
    }
    CHECK(bad < 1e-11);
    CMat block = fock_block(et->basis(), ft->basis(), gen);
    CMat direct = CMat(transport_generator(*ft, ConnectionKind::l2, kTau, dir));
    double res = 0.0;
    for (int col = 0; col < ft->basis().size(); ++col) {
      if (ft->basis().set.degree(col) > ft->basis().degree - 2) continue;
      res = std::max(res, (block.col(col) - direct.col(col)).cwiseAbs().maxCoeff());
    }
    CHECK(res < 1e-11);
  }
}

TEST_CASE("laplacian assembly annihilates pairings with holomorphic sections") {
  CartanData cartan = CartanData::a1();
  TablePtr et = table_for(BasisFamily::extended, 1, 8, kLevel, 4);
  FrameSet fs = build_frames(kTau, kLevel, cartan);
  Variations var = build_variations(kTau, kLevel, cartan);
  SpMat lap = laplacian_extended(*et, fs, var.GC_tau);
  Rng rng(41);
  TablePtr ft = table_for(BasisFamily::fock, 1, 8, kLevel);
  std::vector<int> map = fock_into_extended(et->basis(), ft->basis());
  for (int trial = 0; trial < 5; ++trial) {
    Section phi = Section::zero(et->basis_ptr(), kTau, kLevel);
    Section psi = Section::zero(et->basis_ptr(), kTau, kLevel);
    for (int i = 0; i < ft->basis().size(); ++i) {
      if (ft->basis().set.degree(i) > 6) continue;
      phi.coeffs(map[i]) = rng.complex_normal();
      psi.coeffs(map[i]) = rng.complex_normal();
    }
    Section lap_phi = phi;
    lap_phi.coeffs = lap * phi.coeffs;
    cd pairing = inner_product(lap_phi, psi);
    CHECK(std::abs(pairing) < 1e-9 * std::max(1.0, std::abs(inner_product(phi, phi))));
  }
}

TEST_CASE("weyl algebra composes and commutes correctly") {
  // [d/dx, x] = 1
  WeylOp x = WeylOp::coordinate(2, 0);
  WeylOp d = WeylOp::derivative(2, 0);
  WeylOp comm = d.commutator(x);
  CHECK(comm.terms().size() == 1);
  CHECK(std::abs(comm.max_abs_coeff() - 1.0) < 1e-15);

  // prequantum curvature: [nabla_a, nabla_b] = -i omega(e_a, e_b)
  Mat omega(2, 2);
  omega << 0, 1.7, -1.7, 0;
  CVec e0 = CVec::Zero(2), e1 = CVec::Zero(2);
  e0(0) = 1;
  e1(1) = 1;
  WeylOp curv = prequantum_weyl(omega, e0).commutator(prequantum_weyl(omega, e1));
  CHECK(curv.terms().size() == 1);
  cd c = curv.terms().begin()->second;
  CHECK(std::abs(c - (-I * 1.7)) < 1e-14);
}

TEST_CASE("weyl operators act on packets like pointwise calculus") {
  GaussianPacket g;
  g.A = CMat::Zero(2, 2);
  g.A(0, 0) = cd(-1.1, 0.2);
  g.A(1, 1) = cd(-0.7, -0.3);
  g.A(0, 1) = g.A(1, 0) = cd(0.15, 0.05);
  g.b = CVec::Zero(2);
  g.b << cd(0.2, -0.4), cd(0.1, 0.3);
  g.c = cd(-0.2, 0.1);

  WeylOp op(2);
  op.add_term({1, 0}, {0, 1}, cd(2.0, 1.0));   // 2+i x d/dy
  op.add_term({0, 0}, {2, 0}, cd(0.0, -0.5));  // -i/2 d^2/dx^2

  PolyPacket f = PolyPacket::pure(g);
  PolyPacket image = apply_weyl(op, f);

  Vec pt(2);
  pt << 0.37, -0.81;
  const double h = 1e-5;
  auto eval = [&](double dx, double dy) {
    Vec p = pt;
    p(0) += dx;
    p(1) += dy;
    return packet_eval(g, p);
  };
  cd dyv = (eval(0, h) - eval(0, -h)) / (2 * h);
  cd dxx = (eval(h, 0) - 2.0 * eval(0, 0) + eval(-h, 0)) / (h * h);
  cd want = cd(2.0, 1.0) * pt(0) * dyv + cd(0.0, -0.5) * dxx;
  CHECK(std::abs(polypacket_eval(image, pt) - want) < 1e-6 * std::max(1.0, std::abs(want)));
}

TEST_CASE("degree guards raise instead of silently truncating") {
  BasisPtr b = make_basis(BasisFamily::fock, 1, 6);
  CHECK_THROWS_AS(Section::unit(b, kTau, kLevel, {7, 0}), Error);
}
