#include <doctest.h>

#include "cslab/errors.hpp"
#include "cslab/frames.hpp"
#include "cslab/rng.hpp"

using namespace cslab;

namespace {
const cd I{0.0, 1.0};
}

TEST_CASE("hodge star on the square torus") {
  TeichmullerPoint tau(0.0, 1.0);
  Eigen::Vector2d dx(1, 0), dy(0, 1);
  CHECK((hodge_star(tau, dx) - dy).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((hodge_star(tau, dy) + dx).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hodge star squares to minus one") {
  Rng rng(3);
  for (int t = 0; t < 25; ++t) {
    TeichmullerPoint tau(rng.uniform(-2, 2), rng.uniform(0.1, 3.0));
    Eigen::Vector2d f(rng.normal(), rng.normal());
    CHECK((hodge_star(tau, hodge_star(tau, f)) + f).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("degenerate tau is rejected") {
  CHECK_THROWS_AS(TeichmullerPoint(0.0, 0.0), Error);
  CHECK_THROWS_AS(TeichmullerPoint(0.0, 1e-10), Error);
  CHECK_THROWS_AS(Level(0, 1.0), Error);
}

TEST_CASE("structure tensors") {
  CartanData cartan = CartanData::an(3);
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    TeichmullerPoint tau(rng.uniform(-1, 1), rng.uniform(0.3, 2.5));
    Level level(rng.uniform_int(1, 3), rng.uniform(-2, 2));
    StructureTensors st = build_structures(tau, level, cartan);
    const int d = st.dim();
    Mat id = Mat::Identity(d, d);

    CHECK((st.I_t * st.I_t + id).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((st.I_C * st.J - st.K).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((st.g_t - st.g_t.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Mat> es(st.g_t);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
  // at s = 0 the selected structure is the Hodge one
  StructureTensors st0 = build_structures({0.4, 0.9}, Level(3, 0.0), cartan);
  CHECK((st0.I_t - st0.I_C).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("frame and coordinates on the square torus at level two") {
  CartanData a1 = CartanData::a1();
  TeichmullerPoint tau(0.0, 1.0);
  FrameSet fs = build_frames(tau, Level(2, 0.0), a1);

  Vec x1(4);
  x1 << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  CHECK((fs.frame.col(0) - x1).cwiseAbs().maxCoeff() < 1e-14);

  Vec pt(4);
  pt << 1, 0, 0, 0;
  Vec c = coords_pq(fs, pt);
  CHECK(c(0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-13));  // p_1
  CHECK(std::abs(c(1)) < 1e-14);                                      // p_2
  CHECK(std::abs(c(2)) < 1e-14);                                      // q_1
  CHECK(c(3) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-13));  // q_2
}

TEST_CASE("round trip and polarisation frame properties") {
  CartanData cartan = CartanData::a1();
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    TeichmullerPoint tau(rng.uniform(-1, 1), rng.uniform(0.3, 2.0));
    Level level(rng.uniform_int(1, 4), rng.uniform(-1.5, 1.5));
    FrameSet fs = build_frames(tau, level, cartan);
    StructureTensors st = build_structures(tau, level, cartan);

    Vec x = Vec::NullaryExpr(4, [&](Eigen::Index) { return rng.normal(); });
    CHECK((coords_uv(fs, coords_pq(fs, x)) - x).cwiseAbs().maxCoeff() < 1e-12);

    // the polarisation block is Lagrangian
    Mat X = fs.frame.leftCols(2);
    CHECK((X.transpose() * st.omega_t * X).cwiseAbs().maxCoeff() < 1e-12);

    // the slice tangents are antiholomorphic for the Hodge structure
    CMat ic = st.I_C.cast<cd>();
    CHECK((ic * fs.script_X + I * fs.script_X).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("projections split points of the real slice") {
  CartanData cartan = CartanData::an(3);
  TeichmullerPoint tau(0.37, 1.21);
  Level level(2, -0.8);
  PolarisationProjectors pr = project_PQ(tau, level, cartan);
  StructureTensors st = build_structures(tau, level, cartan);
  const int d = st.dim();
  Rng rng(17);

  CHECK((pr.P + pr.Q - CMat::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((pr.P * pr.P - pr.P).cwiseAbs().maxCoeff() < 1e-12);

  // vectors already on the polarised side are annihilated by the complement
  FrameSet fs = build_frames(tau, level, cartan);
  CHECK((pr.Q * fs.frame.leftCols(d / 2).cast<cd>()).cwiseAbs().maxCoeff() < 1e-12);

  // on complexified slice tangents the displayed half-difference applies
  for (int t = 0; t < 5; ++t) {
    CVec a = CVec::Zero(d);
    for (int i = 0; i < d / 2; ++i) a(i) = rng.complex_normal();
    CMat k = st.K.cast<cd>();
    CHECK((pr.P * a - 0.5 * (a - k * a)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((pr.Q * a - 0.5 * (a + k * a)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("analytic frame variation matches finite differences") {
  CartanData cartan = CartanData::a1();
  TeichmullerPoint tau(0.21, 0.83);
  Level level(2, 1.1);
  Variations var = build_variations(tau, level, cartan);

  const double h = 1e-6;
  Mat fd1 = (build_frames({tau.tau1 + h, tau.tau2}, level, cartan).frame -
             build_frames({tau.tau1 - h, tau.tau2}, level, cartan).frame) /
            (2 * h);
  Mat fd2 = (build_frames({tau.tau1, tau.tau2 + h}, level, cartan).frame -
             build_frames({tau.tau1, tau.tau2 - h}, level, cartan).frame) /
            (2 * h);
  CHECK((fd1 - var.dframe_d1).cwiseAbs().maxCoeff() < 1e-7);
  CHECK((fd2 - var.dframe_d2).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("variation tensors split by type") {
  CartanData cartan = CartanData::a1();
  TeichmullerPoint tau(-0.4, 1.7);
  Level level(3, 0.6);
  Variations var = build_variations(tau, level, cartan);
  CHECK((var.GC_tau + var.GbarC_tau - var.Gt_tau).cwiseAbs().maxCoeff() < 1e-11);
  // symmetric bivectors
  CHECK((var.GC_tau - var.GC_tau.transpose()).cwiseAbs().maxCoeff() < 1e-11);
}
