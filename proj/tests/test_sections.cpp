#include <doctest.h>

#include "cslab/errors.hpp"
#include "cslab/quadrature.hpp"
#include "cslab/rng.hpp"
#include "cslab/sections.hpp"

using namespace cslab;

namespace {
const cd I{0.0, 1.0};
const TeichmullerPoint kTau{0.1, 1.3};
}

TEST_CASE("gauss-hermite rule integrates gaussian moments") {
  GaussHermiteRule rule = gauss_hermite(24);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  CHECK(total == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));

  // even moments against the closed form int x^{2m} e^{-x^2} dx
  double m2 = 0.0, m4 = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    m2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    m4 += rule.weights[i] * std::pow(rule.nodes[i], 4);
  }
  CHECK(m2 == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-13));
  CHECK(m4 == doctest::Approx(3 * std::sqrt(M_PI) / 4).epsilon(1e-13));
}

TEST_CASE("hermite basis is orthonormal under quadrature") {
  Level level(2, 0.5);
  const double h = level.hbar();
  BasisPtr b = make_basis(BasisFamily::hermite, 1, 5);
  Section s = Section::zero(b, kTau, level);
  GaussHermiteRule rule = gauss_hermite_scaled(64, std::sqrt(h));

  for (int i = 0; i < b->size(); ++i)
    for (int j = i; j < b->size(); ++j) {
      Section a = s, c = s;
      a.coeffs(i) = 1.0;
      c.coeffs(j) = 1.0;
      cd g = tensor_integrate(rule, 2, [&](const Vec& q) {
        return evaluate_wave(a, q) * std::conj(evaluate_wave(c, q));
      });
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("holomorphic pairing weights match the gaussian moments") {
  Level level(1, 1.2);
  const double h = level.hbar();
  BasisPtr b = make_basis(BasisFamily::fock, 1, 4);

  SUBCASE("displayed low moments") {
    Section zj = Section::unit(b, kTau, level, {1, 0});
    Section zl = Section::unit(b, kTau, level, {0, 1});
    Section zj2 = Section::unit(b, kTau, level, {2, 0});
    CHECK(std::abs(inner_product(zj, zj) - 2.0 * h) < 1e-14);
    CHECK(std::abs(inner_product(zj2, zj2) - 2.0 * (2 * h) * (2 * h)) < 1e-14);
    CHECK(std::abs(inner_product(zj, zl)) < 1e-14);
  }

  SUBCASE("gram matrix against the quadrature oracle") {
    GaussHermiteRule rule = gauss_hermite_scaled(40, std::sqrt(h));
    const double norm = std::pow(2.0 * M_PI * h, -2);
    for (int i = 0; i < b->size(); ++i)
      for (int j = 0; j < b->size(); ++j) {
        Section a = Section::zero(b, kTau, level), c = Section::zero(b, kTau, level);
        a.coeffs(i) = 1.0;
        c.coeffs(j) = 1.0;
        cd g = tensor_integrate(rule, 4, [&](const Vec& xy) {
          CVec z(2);
          z << cd(xy(0), xy(2)), cd(xy(1), xy(3));
          return evaluate_wave(a, z) * std::conj(evaluate_wave(c, z)) *
                 std::exp(-z.squaredNorm() / (2.0 * h));
        });
        CHECK(std::abs(norm * g - inner_product(a, c)) < 1e-10);
      }
  }
}

TEST_CASE("extended pairing restricts to the holomorphic one") {
  Level level(2, -0.4);
  BasisPtr fock = make_basis(BasisFamily::fock, 1, 4);
  BasisPtr ext = make_basis(BasisFamily::extended, 1, 4, 2);
  Rng rng(23);

  Section f1 = Section::zero(fock, kTau, level), f2 = Section::zero(fock, kTau, level);
  Section e1 = Section::zero(ext, kTau, level), e2 = Section::zero(ext, kTau, level);
  for (int i = 0; i < fock->size(); ++i) {
    std::vector<int> idx = fock->set.exponents(i);
    idx.resize(4, 0);
    int j = ext->set.find(idx);
    cd c1 = rng.complex_normal(), c2 = rng.complex_normal();
    f1.coeffs(i) = c1;
    f2.coeffs(i) = c2;
    e1.coeffs(j) = c1;
    e2.coeffs(j) = c2;
  }
  CHECK(std::abs(inner_product(e1, e2) - inner_product(f1, f2)) < 1e-12);
}

TEST_CASE("evaluation peaks and frames") {
  Level level(2, 1.0);
  const double h = level.hbar();
  CartanData cartan = CartanData::a1();
  FrameSet fs = build_frames(kTau, level, cartan);

  BasisPtr b = make_basis(BasisFamily::hermite, 1, 6);
  Section h0 = Section::unit(b, kTau, level, {0, 0});
  CHECK(std::abs(evaluate_wave(h0, Vec::Zero(2)) - std::pow(M_PI * h, -0.5)) < 1e-13);

  BasisPtr fb = make_basis(BasisFamily::fock, 1, 6);
  Section mono = Section::unit(fb, kTau, level, {2, 1});
  CHECK(std::abs(evaluate_wave(mono, CVec::Zero(2))) < 1e-15);

  // rho is unimodular, and equals one when the p.q pairing vanishes
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    Vec x = Vec::NullaryExpr(4, [&](Eigen::Index) { return rng.normal(); });
    CHECK(std::abs(std::abs(frame_rho(fs, level, x)) - 1.0) < 1e-13);
  }
  Vec c = Vec::Zero(4);
  c(0) = 0.7;  // pure p coordinates
  CHECK(std::abs(frame_rho(fs, level, coords_uv(fs, c)) - 1.0) < 1e-13);

  // |sigma|^2 integrates to (2 pi h)^{-2r} over the model
  GaussHermiteRule rule = gauss_hermite_scaled(32, std::sqrt(h));
  cd mass = tensor_integrate(rule, 4, [&](const Vec& cpq) {
    Vec x = coords_uv(fs, cpq);
    cd s = frame_sigma(fs, level, x);
    return s * std::conj(s);
  });
  CHECK(std::abs(mass - std::pow(2 * M_PI * h, -2)) < 1e-10);

  // out-of-window evaluation flags the range check
  bool ok = true;
  Vec far = Vec::Zero(4);
  far(2) = 1e3;
  evaluate_model(h0, fs, coords_uv(fs, far), false, &ok);
  CHECK_FALSE(ok);
}

TEST_CASE("gaussian integrals in closed form") {
  Rng rng(29);
  // diagonal complex case against the 1d formula
  CMat a = CMat::Zero(2, 2);
  a(0, 0) = cd(-1.3, 0.4);
  a(1, 1) = cd(-0.8, -0.9);
  CVec bvec(2);
  bvec << cd(0.2, -0.1), cd(-0.5, 0.3);
  cd direct = gaussian_integral(a, bvec, cd(0.1, 0.2));
  cd expect = std::exp(cd(0.1, 0.2));
  for (int i = 0; i < 2; ++i)
    expect *= std::sqrt(2.0 * M_PI / -a(i, i)) * std::exp(-bvec(i) * bvec(i) / (2.0 * a(i, i)));
  CHECK(std::abs(direct - expect) < 1e-12 * std::abs(expect));

  // quadrature oracle for a generic symmetric matrix
  Mat re = Mat::Identity(2, 2) * -1.0;
  re(0, 1) = re(1, 0) = 0.3;
  Mat im = Mat::Zero(2, 2);
  im(0, 0) = 0.2;
  im(0, 1) = im(1, 0) = -0.4;
  GaussianPacket p;
  p.A = re.cast<cd>() + I * im.cast<cd>();
  p.b = CVec::Zero(2);
  p.b << cd(0.1, 0.5), cd(-0.2, 0.0);
  p.c = cd(0.0, 0.3);
  GaussHermiteRule rule = gauss_hermite_scaled(48, 1.0);
  cd quad = tensor_integrate(rule, 2, [&](const Vec& x) { return packet_eval(p, x); });
  CHECK(std::abs(packet_integral(p) - quad) < 1e-10 * std::abs(quad));
}

TEST_CASE("lattice averaging") {
  CartanData cartan = CartanData::a1();
  Level level(1, 0.0);

  SUBCASE("zero input stays zero") {
    SliceFn zero = [](const Vec&) { return cd(0.0); };
    std::vector<Vec> probes{Vec::Zero(2)};
    EquivariantSection avg = equivariantize(cartan, level, zero, 3, 1e-6, probes);
    CHECK(std::abs(avg.fn(Vec::Zero(2))) < 1e-15);
  }

  SUBCASE("gaussian seed: orbit invariance and radius refinement") {
    GaussianPacket seed = GaussianPacket::standard(2, 1.0);
    SliceFn s = [&](const Vec& u) { return packet_eval(seed, u); };
    Rng rng(31);
    std::vector<Vec> probes;
    for (int i = 0; i < 3; ++i)
      probes.push_back(Vec::NullaryExpr(2, [&](Eigen::Index) { return rng.uniform(-1, 1); }));

    EquivariantSection avg = equivariantize(cartan, level, s, 5, 1e-6, probes);
    EquivariantSection wide = equivariantize(cartan, level, s, 7, 1e-6, probes);
    GaugeElement gen = GaugeElement::identity(1);
    gen.shift_dx(0) = 1;
    SliceFn moved = gauge_apply_A0(cartan, level, gen, avg.fn);
    for (const Vec& u : probes) {
      CHECK(std::abs(moved(u) - avg.fn(u)) < 1e-8);
      CHECK(std::abs(avg.fn(u) - wide.fn(u)) < 1e-8);
    }

    // the packet expansion agrees with the callable route
    std::vector<GaussianPacket> packets = equivariant_packets(cartan, level, seed, 5);
    for (const Vec& u : probes) {
      cd sum = 0.0;
      for (const auto& p : packets) sum += packet_eval(p, u);
      CHECK(std::abs(sum - avg.fn(u)) < 1e-12);
    }
  }

  SUBCASE("tail failure raises") {
    // a barely-decaying seed cannot settle at small radius
    GaussianPacket wide_seed = GaussianPacket::standard(2, 400.0);
    SliceFn s = [&](const Vec& u) { return packet_eval(wide_seed, u); };
    std::vector<Vec> probes{Vec::Zero(2)};
    CHECK_THROWS_AS(equivariantize(cartan, level, s, 2, 1e-10, probes), Error);
  }
}
