#include "suites_common.hpp"

namespace cslab {

using detail::make_check;
using detail::rel_fro;

namespace {
const cd kI{0.0, 1.0};

// worst-case accumulator over the sample grid
struct Worst {
  double value = 0.0;
  void track(double v) { value = std::max(value, v); }
};

}  // namespace

CheckList suite_frames(const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0xf7a3e5u);
  detail::SampleGrid grid = detail::sample_grid(cfg, rng, 3, 2);
  const CartanData& cartan = cfg.cartan;
  const int r = cartan.rank;
  const int dim = 4 * r;
  const CMat id = CMat::Identity(dim, dim);

  Worst quat, it_sq, dolbeault, g_sym, g_posdef, g_hyper, om_11, omC_20, om_restrict;
  Worst lagrangian, symplectic, orthonormal, antiholo;
  Worst roundtrip, coord_paper, coord_sympl, a0_embed;
  Worst proj_sum, proj_idem, proj_kernel, proj_slice, proj_scriptx, metric_scriptx;
  Worst star_invol;

  for (const auto& tau : grid.taus) {
    for (const auto& level : grid.levels) {
      const StructureTensors st = build_structures(tau, level, cartan);
      const FrameSet fs = build_frames(tau, level, cartan);
      const double at = level.abs_t();
      CMat J = st.J.cast<cd>(), I = st.I_C.cast<cd>(), K = st.K.cast<cd>(),
           It = st.I_t.cast<cd>();

      quat.track(rel_fro(I * I, CMat(-id)));
      quat.track(rel_fro(J * J, CMat(-id)));
      quat.track(rel_fro(K * K, CMat(-id)));
      quat.track(rel_fro(I * J, K));
      quat.track(rel_fro(J * I, CMat(-K)));
      it_sq.track(rel_fro(It * It, CMat(-id)));

      // degenerate s = 0 case collapses I_t onto the Hodge structure
      StructureTensors st0 = build_structures(tau, Level(level.k, 0.0), cartan);
      dolbeault.track(rel_fro(st0.I_t.cast<cd>(), st0.I_C.cast<cd>()));

      CMat gt = st.g_t.cast<cd>();
      g_sym.track(rel_fro(gt.transpose(), gt));
      Eigen::SelfAdjointEigenSolver<Mat> es(st.g_t);
      g_posdef.track(std::max(0.0, -es.eigenvalues().minCoeff() / at));
      g_hyper.track(rel_fro(gt, CMat(at * metric_full(tau, r).cast<cd>())));

      CMat om = st.omega_t.cast<cd>();
      om_11.track(rel_fro(CMat(It.transpose() * om * It), om));
      CMat omC = omega_complex(r);
      omC_20.track(rel_fro(CMat(J.transpose() * omC), CMat(kI * omC)));
      om_restrict.track(rel_fro(CMat(om.topLeftCorner(2 * r, 2 * r)),
                                CMat(static_cast<double>(level.k) *
                                     omega_A0(r).cast<cd>())));

      // frame relations for omega_t/|t| and g_t/|t|
      Mat X = fs.frame.leftCols(2 * r), Y = fs.frame.rightCols(2 * r);
      Mat oXX = X.transpose() * st.omega_t * X;
      Mat oXY = X.transpose() * st.omega_t * Y;
      Mat oYY = Y.transpose() * st.omega_t * Y;
      lagrangian.track(oXX.cwiseAbs().maxCoeff() / at);
      symplectic.track((oXY - at * Mat::Identity(2 * r, 2 * r)).cwiseAbs().maxCoeff() / at);
      symplectic.track(oYY.cwiseAbs().maxCoeff() / at);
      Mat gF = fs.frame.transpose() * st.g_t * fs.frame;
      orthonormal.track((gF - at * Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() / at);

      // the complex slice tangents are antiholomorphic for the Hodge structure
      antiholo.track((I * fs.script_X + kI * fs.script_X).cwiseAbs().maxCoeff());

      // Hodge star is an involution up to sign
      Eigen::Vector2d form(rng.uniform(-1, 1), rng.uniform(-1, 1));
      Eigen::Vector2d twice = hodge_star(tau, hodge_star(tau, form));
      star_invol.track((twice + form).cwiseAbs().maxCoeff());

      // coordinates
      for (int trial = 0; trial < 4; ++trial) {
        Vec x = detail::random_vec(rng, dim);
        Vec cpq = coords_pq(fs, x);
        roundtrip.track((coords_uv(fs, cpq) - x).cwiseAbs().maxCoeff() /
                        std::max(1.0, x.cwiseAbs().maxCoeff()));
        // displayed coordinate formulas for the q block
        const double c0 = 1.0 / (at * std::sqrt(2.0 * tau.tau2));
        for (int j = 0; j < r; ++j) {
          double uj = x(j), ujr = x(j + r);
          double vj = x(2 * r + j), vjr = x(2 * r + j + r);
          double k = level.k, s = level.s;
          double qj = c0 * (-(k * tau.tau1 - s * tau.tau2) * uj +
                            (k * tau.tau2 + s * tau.tau1) * vj + k * ujr - s * vjr);
          double qjr = c0 * ((k * tau.tau2 + s * tau.tau1) * uj +
                             (k * tau.tau1 - s * tau.tau2) * vj - s * ujr - k * vjr);
          coord_paper.track(std::abs(cpq(2 * r + j) - qj));
          coord_paper.track(std::abs(cpq(2 * r + j + r) - qjr));
        }
        // the coordinate symplectic form pulls back to omega_t/|t|
        Vec y = detail::random_vec(rng, dim);
        Vec cy = coords_pq(fs, y);
        double sp = 0.0;
        for (int l = 0; l < 2 * r; ++l)
          sp += cpq(l) * cy(2 * r + l) - cpq(2 * r + l) * cy(l);
        double target = (x.transpose() * st.omega_t * y)(0, 0) / at;
        coord_sympl.track(std::abs(sp - target) / std::max(1.0, std::abs(target)));
      }

      // the real slice sits at p = Apq q; compare the displayed block form
      Mat embed = slice_embedding(fs);
      Mat apq = fs.coords.topRows(2 * r) * embed;
      Mat apq_paper = Mat::Zero(2 * r, 2 * r);
      for (int j = 0; j < r; ++j) {
        apq_paper(j, j) = level.s / at;
        apq_paper(j, j + r) = level.k / at;
        apq_paper(j + r, j) = -static_cast<double>(level.k) / at;
        apq_paper(j + r, j + r) = level.s / at;
      }
      a0_embed.track((apq - apq_paper).cwiseAbs().maxCoeff());

      // polarisation splitting
      PolarisationProjectors pr = project_PQ(tau, level, cartan);
      proj_sum.track(rel_fro(pr.P + pr.Q, id));
      proj_idem.track(rel_fro(CMat(pr.P * pr.P), pr.P));
      proj_idem.track(rel_fro(CMat(pr.Q * pr.Q), pr.Q));
      proj_kernel.track((pr.P * Y.cast<cd>()).cwiseAbs().maxCoeff());
      proj_kernel.track((pr.Q * X.cast<cd>()).cwiseAbs().maxCoeff());
      // on tangents of the real slice they reduce to (1 -+ K)/2
      for (int trial = 0; trial < 3; ++trial) {
        CVec a = CVec::Zero(dim);
        a.head(2 * r) = detail::random_cvec(rng, 2 * r);
        proj_slice.track((pr.P * a - 0.5 * (a - K * a)).cwiseAbs().maxCoeff());
        proj_slice.track((pr.Q * a - 0.5 * (a + K * a)).cwiseAbs().maxCoeff());
      }
      // displayed projections of the slice tangents onto the Q side
      const cd tt = level.t();
      for (int j = 0; j < r; ++j) {
        CVec xj = fs.script_X.col(j);
        CVec target_x = CVec::Zero(dim);
        CVec target_xbar = CVec::Zero(dim);
        // coefficients against the coordinate fields d/dq_l = Y_l
        CVec yj = fs.frame.col(2 * r + j).cast<cd>();
        CVec yjr = fs.frame.col(2 * r + j + r).cast<cd>();
        target_x = (kI * std::conj(tt) / (2.0 * at)) * (yj - kI * yjr);
        target_xbar = (-kI * tt / (2.0 * at)) * (yj + kI * yjr);
        proj_scriptx.track((pr.Q * xj - target_x).cwiseAbs().maxCoeff());
        proj_scriptx.track((pr.Q * xj.conjugate() - target_xbar).cwiseAbs().maxCoeff());
        // metric pairings with slice points
        Vec apt = Vec::Zero(dim);
        apt.head(2 * r) = detail::random_vec(rng, 2 * r);
        Vec q_of_a = coords_pq(fs, apt).tail(2 * r);
        CMat g_full = metric_full(tau, r).cast<cd>();
        cd pair_x = (apt.cast<cd>().transpose() * g_full * xj)(0, 0);
        cd pair_xbar = (apt.cast<cd>().transpose() * g_full * xj.conjugate())(0, 0);
        cd want_x = kI * std::conj(tt) / at * (q_of_a(j) - kI * q_of_a(j + r));
        cd want_xbar = -kI * tt / at * (q_of_a(j) + kI * q_of_a(j + r));
        metric_scriptx.track(std::abs(pair_x - want_x));
        metric_scriptx.track(std::abs(pair_xbar - want_xbar));
      }
    }
  }

  // pinned examples at rank 1
  double x_example = 1.0, coord_example = 1.0, hodge_example = 1.0;
  {
    CartanData a1 = CartanData::a1();
    TeichmullerPoint taui(0.0, 1.0);
    FrameSet fs = build_frames(taui, Level(2, 0.0), a1);
    Vec x1(4);
    x1 << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    x_example = (fs.frame.col(0) - x1).cwiseAbs().maxCoeff();

    Vec pt(4);
    pt << 1.0, 0.0, 0.0, 0.0;
    Vec cpq = coords_pq(fs, pt);
    Vec expect(4);
    expect << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    coord_example = (cpq - expect).cwiseAbs().maxCoeff();

    Eigen::Vector2d dx(1, 0), dy(0, 1);
    hodge_example =
        std::max((hodge_star(taui, dx) - dy).cwiseAbs().maxCoeff(),
                 (hodge_star(taui, dy) + dx).cwiseAbs().maxCoeff());
  }

  const double tol = 1e-12;
  CheckList out;
  out.push_back(make_check("frames.quaternion_relations", "structures/quaternion", quat.value, tol));
  out.push_back(make_check("frames.it_square", "structures/complex-structure", it_sq.value, tol));
  out.push_back(make_check("frames.it_dolbeault_limit", "structures/s-zero-limit", dolbeault.value, tol));
  out.push_back(make_check("frames.metric_symmetric", "structures/kaehler-metric", g_sym.value, tol));
  out.push_back(make_check("frames.metric_positive", "structures/kaehler-metric", g_posdef.value, tol));
  out.push_back(make_check("frames.metric_hyperkaehler", "structures/hyperkaehler-metric", g_hyper.value, tol));
  out.push_back(make_check("frames.omega_type_11", "structures/omega-type", om_11.value, tol));
  out.push_back(make_check("frames.omega_complex_type_20", "structures/omega-complex-type", omC_20.value, tol));
  out.push_back(make_check("frames.omega_restriction", "structures/slice-restriction", om_restrict.value, tol));
  out.push_back(make_check("frames.polarisation_lagrangian", "frames/lagrangian", lagrangian.value, tol));
  out.push_back(make_check("frames.frame_symplectic", "frames/symplectic-orthonormal", symplectic.value, tol));
  out.push_back(make_check("frames.frame_orthonormal", "frames/symplectic-orthonormal", orthonormal.value, tol));
  out.push_back(make_check("frames.slice_tangents_antiholomorphic", "frames/slice-tangents", antiholo.value, tol));
  out.push_back(make_check("frames.hodge_involution", "hodge/involution", star_invol.value, tol));
  out.push_back(make_check("frames.hodge_example", "hodge/square-torus", hodge_example, tol));
  out.push_back(make_check("frames.frame_example", "frames/square-torus", x_example, tol));
  out.push_back(make_check("frames.coords_example", "coordinates/square-torus", coord_example, tol));
  out.push_back(make_check("frames.coords_roundtrip", "coordinates/roundtrip", roundtrip.value, tol));
  out.push_back(make_check("frames.coords_displayed_formula", "coordinates/displayed", coord_paper.value, tol));
  out.push_back(make_check("frames.coords_symplectic", "coordinates/symplectic", coord_sympl.value, tol));
  out.push_back(make_check("frames.slice_graph", "coordinates/slice-graph", a0_embed.value, tol));
  out.push_back(make_check("frames.projectors_resolution", "projections/resolution", proj_sum.value, tol));
  out.push_back(make_check("frames.projectors_idempotent", "projections/idempotent", proj_idem.value, tol));
  out.push_back(make_check("frames.projectors_kernels", "projections/kernels", proj_kernel.value, tol));
  out.push_back(make_check("frames.projectors_slice_formula", "projections/slice-formula", proj_slice.value, tol));
  out.push_back(make_check("frames.projected_slice_tangents", "projections/slice-tangents", proj_scriptx.value, tol));
  out.push_back(make_check("frames.metric_slice_tangents", "projections/metric-pairings", metric_scriptx.value, tol));
  return out;
}

CheckList suite_variations(const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0x9b12c4u);
  const CartanData& cartan = cfg.cartan;
  const int r = cartan.rank;
  const int dim = 4 * r;

  Worst varcoord_closed, varcoord_fd, metric_fd, lem_inverse, cor_derivative, lem_gc,
      purity, dolbeault_gc;

  // 20 random points of the (tau, t) parameter space
  for (int sample = 0; sample < 20; ++sample) {
    TeichmullerPoint tau(rng.uniform(-0.8, 0.8), rng.uniform(0.5, 2.0));
    Level level(rng.uniform_int(1, 4), rng.uniform(-2.0, 2.0));
    const double at = level.abs_t();
    const cd tt = level.t();
    const FrameSet fs = build_frames(tau, level, cartan);
    const Variations var = build_variations(tau, level, cartan);

    // displayed q-variation rows against the analytic frame derivative
    {
      CMat R = var.R_tau;
      for (int trial = 0; trial < 3; ++trial) {
        Vec x = detail::random_vec(rng, dim);
        Vec c = coords_pq(fs, x);
        CVec dq = R.bottomRows(2 * r) * c.cast<cd>();
        for (int j = 0; j < r; ++j) {
          cd pj{c(j), 0.0}, pjr{c(j + r), 0.0};
          cd want_j = -c(2 * r + j + r) / (4.0 * tau.tau2) -
                      tt / (4.0 * tau.tau2 * at) * (pj + kI * pjr);
          cd want_jr = c(2 * r + j) / (4.0 * tau.tau2) -
                       kI * tt / (4.0 * tau.tau2 * at) * (pj + kI * pjr);
          varcoord_closed.track(std::abs(dq(j) - want_j));
          varcoord_closed.track(std::abs(dq(j + r) - want_jr));
        }
      }
    }

    // coordinate variation against central differences of the chart
    {
      const double h = 1e-6;
      auto coords_at = [&](double t1, double t2, const Vec& x) {
        return coords_pq(build_frames({t1, t2}, level, cartan), x);
      };
      Vec x = detail::random_vec(rng, dim);
      auto fd_dir = [&](int which, double step) {
        Vec plus = which == 0 ? coords_at(tau.tau1 + step, tau.tau2, x)
                              : coords_at(tau.tau1, tau.tau2 + step, x);
        Vec minus = which == 0 ? coords_at(tau.tau1 - step, tau.tau2, x)
                               : coords_at(tau.tau1, tau.tau2 - step, x);
        return Vec((plus - minus) / (2.0 * step));
      };
      auto richardson = [&](int which) {
        Vec coarse = fd_dir(which, h);
        Vec fine = fd_dir(which, h / 2.0);
        return Vec((4.0 * fine - coarse) / 3.0);
      };
      Vec d1 = richardson(0), d2 = richardson(1);
      CVec dtau = 0.5 * (d1.cast<cd>() - kI * d2.cast<cd>());
      CVec analytic = var.R_tau * coords_pq(fs, x).cast<cd>();
      varcoord_fd.track((dtau - analytic).cwiseAbs().maxCoeff() /
                        std::max(1.0, analytic.cwiseAbs().maxCoeff()));
    }

    // inverse-metric variation against central differences
    {
      const double h = 1e-6;
      auto ginv_at = [&](double t1, double t2) {
        return Mat(metric_A0({t1, t2}, r).inverse());
      };
      Mat d1 = (ginv_at(tau.tau1 + h, tau.tau2) - ginv_at(tau.tau1 - h, tau.tau2)) / (2 * h);
      Mat d2 = (ginv_at(tau.tau1, tau.tau2 + h) - ginv_at(tau.tau1, tau.tau2 - h)) / (2 * h);
      CMat dtau = 0.5 * (d1.cast<cd>() - kI * d2.cast<cd>());
      metric_fd.track(rel_fro(CMat(-dtau), var.G_A0_tau));
    }

    // inverse-metric variation in closed form from the slice tangents
    {
      CMat want = CMat::Zero(2 * r, 2 * r);
      for (int j = 0; j < r; ++j) {
        CVec xbar = fs.script_X.col(j).head(2 * r).conjugate();
        want += (-kI / tau.tau2) * (xbar * xbar.transpose());
      }
      lem_inverse.track(rel_fro(var.G_A0_tau, want));
      CMat want_bar = CMat::Zero(2 * r, 2 * r);
      for (int j = 0; j < r; ++j) {
        CVec xc = fs.script_X.col(j).head(2 * r);
        want_bar += (kI / tau.tau2) * (xc * xc.transpose());
      }
      lem_inverse.track(rel_fro(var.G_A0_taubar, want_bar));
    }

    // covariant metric derivative on random slice vectors
    {
      Mat g = metric_A0(tau, r);
      for (int trial = 0; trial < 3; ++trial) {
        CVec a = detail::random_vec(rng, 2 * r).cast<cd>();
        CVec b = detail::random_vec(rng, 2 * r).cast<cd>();
        cd lhs = (a.transpose() * var.dg_A0_tau * b)(0, 0);
        cd rhs = 0.0;
        for (int j = 0; j < r; ++j) {
          CVec xbar = fs.script_X.col(j).head(2 * r).conjugate();
          cd ga = (xbar.transpose() * g.cast<cd>() * a)(0, 0);
          cd gb = (xbar.transpose() * g.cast<cd>() * b)(0, 0);
          rhs += (-kI / tau.tau2) * ga * gb;
        }
        cor_derivative.track(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }

    // holomorphic part of the model variation tensor in closed form
    {
      CMat w_basis = CMat::Zero(dim, r);
      for (int j = 0; j < r; ++j) {
        // d/dz_j + i d/dz_{j+r} written in the (u, v) chart
        CVec xj = fs.frame.col(j).cast<cd>();
        CVec xjr = fs.frame.col(j + r).cast<cd>();
        CVec yj = fs.frame.col(2 * r + j).cast<cd>();
        CVec yjr = fs.frame.col(2 * r + j + r).cast<cd>();
        w_basis.col(j) = 0.5 * ((xj + kI * xjr) - kI * (yj + kI * yjr));
      }
      CMat want = CMat::Zero(dim, dim);
      for (int j = 0; j < r; ++j)
        want += (-kI * tt / (tau.tau2 * at)) * (w_basis.col(j) * w_basis.col(j).transpose());
      lem_gc.track(rel_fro(var.GC_tau, want));
      CMat want_bar = CMat::Zero(dim, dim);
      for (int j = 0; j < r; ++j) {
        CVec wbar = 0.5 * ((fs.frame.col(j).cast<cd>() - kI * fs.frame.col(j + r).cast<cd>()) -
                           kI * (fs.frame.col(2 * r + j).cast<cd>() -
                                 kI * fs.frame.col(2 * r + j + r).cast<cd>()));
        want_bar += (-kI * std::conj(tt) / (tau.tau2 * at)) * (wbar * wbar.transpose());
      }
      lem_gc.track(rel_fro(var.GC_taubar, want_bar));
      // no mixed-type contamination
      purity.track(rel_fro(var.GC_tau + var.GbarC_tau, var.Gt_tau));
      purity.track(rel_fro(var.GC_taubar + var.GbarC_taubar, var.Gt_taubar));
    }
  }

  // square-torus real-level degeneration of the holomorphic tensor
  {
    TeichmullerPoint taui(0.0, 1.0);
    Level lk(2, 0.0);
    const FrameSet fs = build_frames(taui, lk, cartan);
    const Variations var = build_variations(taui, lk, cartan);
    CMat want = CMat::Zero(dim, dim);
    for (int j = 0; j < r; ++j) {
      CVec w = 0.5 * ((fs.frame.col(j).cast<cd>() + kI * fs.frame.col(j + r).cast<cd>()) -
                      kI * (fs.frame.col(2 * r + j).cast<cd>() +
                            kI * fs.frame.col(2 * r + j + r).cast<cd>()));
      want += -kI * (w * w.transpose());
    }
    dolbeault_gc.track(rel_fro(var.GC_tau, want));
  }

  const double tol = cfg.tol.fd;
  CheckList out;
  out.push_back(make_check("variations.coords_displayed", "variations/coordinates-displayed",
                           varcoord_closed.value, tol));
  out.push_back(make_check("variations.coords_fd", "variations/coordinates-fd",
                           varcoord_fd.value, tol));
  out.push_back(make_check("variations.inverse_metric_fd", "variations/inverse-metric-fd",
                           metric_fd.value, tol));
  out.push_back(make_check("variations.inverse_metric_closed",
                           "variations/inverse-metric-closed", lem_inverse.value, tol));
  out.push_back(make_check("variations.metric_derivative", "variations/metric-derivative",
                           cor_derivative.value, tol));
  out.push_back(make_check("variations.holomorphic_tensor", "variations/holomorphic-tensor",
                           lem_gc.value, tol));
  out.push_back(make_check("variations.tensor_type_purity", "variations/type-purity",
                           purity.value, tol));
  out.push_back(make_check("variations.square_torus_tensor", "variations/square-torus",
                           dolbeault_gc.value, tol));
  return out;
}

}  // namespace cslab
