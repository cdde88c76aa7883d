#include "suites_common.hpp"

namespace cslab {

using detail::make_check;
using detail::rel_fro;

namespace {
const cd kI{0.0, 1.0};

struct Worst {
  double value = 0.0;
  void track(double v) { value = std::max(value, v); }
};

}  // namespace

CheckList suite_bargmann(const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0x3d871fu);
  const CartanData& cartan = cfg.cartan;
  const int r = cartan.rank;
  const Level level = cfg.level;
  const int N = r == 1 ? cfg.degree : std::min(cfg.degree, 8);
  const int nodes = r == 1 ? cfg.quad_nodes : std::min(cfg.quad_nodes, 20);

  TablePtr ft = table_for(BasisFamily::fock, r, N, level);
  TablePtr ht = table_for(BasisFamily::hermite, r, N, level);
  const Basis& fb = ft->basis();
  const Basis& hb = ht->basis();
  const CMat B = bargmann_matrix(*ft);
  const TeichmullerPoint tau = cfg.taus.front();

  Worst ground, excited, gram, transf, unitary, degrees, quad_ground, quad_poly, translated;

  // ground state maps to the constant section
  {
    CVec g0 = CVec::Zero(fb.size());
    g0(0) = 1.0;
    ground.track((B.col(0) - g0).cwiseAbs().maxCoeff());
    // oracle: the defining integral itself, at a few sample points
    Section h0 = Section::unit(ht->basis_ptr(), tau, level, std::vector<int>(2 * r, 0));
    auto psi = [&](const Vec& q) { return evaluate_wave(h0, q); };
    for (int trial = 0; trial < 5; ++trial) {
      CVec z = detail::random_cvec(rng, 2 * r, 0.5);
      cd val = bargmann_kernel_point(psi, z, level, r, nodes);
      ground.track(std::abs(val - 1.0));
    }
  }

  // first excited states by the ladder relation
  {
    for (int j = 0; j < 2 * r; ++j) {
      Section h0 = Section::unit(ht->basis_ptr(), tau, level, std::vector<int>(2 * r, 0));
      Section qh0 = h0;
      qh0.coeffs = op_mult_q(hb, j, level) * h0.coeffs;
      Section image = bargmann_closed_form(qh0);
      CVec want = CVec::Zero(fb.size());
      std::vector<int> ej(2 * r, 0);
      ej[j] = 1;
      want(fb.set.find(ej)) = -kI * 0.5;
      excited.track((image.coeffs - want).cwiseAbs().maxCoeff());
    }
  }

  // unitarity: the weighted gram matrix of the image basis is the identity
  {
    CVec w(fb.size());
    for (int i = 0; i < fb.size(); ++i) w(i) = fock_weight(level, fb.set.exponents(i));
    CMat gmat = B.adjoint() * w.asDiagonal() * B;
    // degree <= 6 block
    std::vector<int> block;
    for (int i = 0; i < fb.size(); ++i)
      if (fb.set.degree(i) <= 6) block.push_back(i);
    double res = 0.0;
    for (int a : block)
      for (int b : block) res = std::max(res, std::abs(gmat(a, b) - (a == b ? 1.0 : 0.0)));
    gram.track(res);
    // norm preservation on random truncated sections
    for (int trial = 0; trial < 100; ++trial) {
      CVec psi = detail::random_section_coeffs(rng, hb, N);
      CVec img = B * psi;
      cd nrm2 = (img.adjoint() * CMat(w.asDiagonal()) * img)(0, 0);
      double lhs = std::sqrt(std::abs(nrm2.real()));
      unitary.track(std::abs(lhs - psi.norm()) / psi.norm());
    }
    // block structure across degrees
    double off = 0.0;
    for (int i = 0; i < fb.size(); ++i)
      for (int j = 0; j < fb.size(); ++j)
        if (fb.set.degree(i) != fb.set.degree(j)) off = std::max(off, std::abs(B(i, j)));
    degrees.track(off);
  }

  // operator transport identities through the transform
  {
    for (int j = 0; j < r; ++j) {
      CMat M = CMat(md_operator(*ht, j, MdKind::M));
      CMat D = CMat(md_operator(*ht, j, MdKind::D));
      CMat mu = CMat(mudelta_operator(*ft, j, MuDeltaKind::mu));
      CMat de = CMat(mudelta_operator(*ft, j, MuDeltaKind::delta));
      CMat lhs_m = B * M;
      CMat rhs_m = 0.5 * kI * (de - mu) * B;
      CMat lhs_d = B * D;
      CMat rhs_d = 0.5 * kI * (mu + de) * B;
      // compare away from the truncation boundary
      double res = 0.0, scale = 1.0;
      for (int col = 0; col < fb.size(); ++col) {
        if (fb.set.degree(col) > N - 2) continue;
        res = std::max(res, (lhs_m.col(col) - rhs_m.col(col)).cwiseAbs().maxCoeff());
        res = std::max(res, (lhs_d.col(col) - rhs_d.col(col)).cwiseAbs().maxCoeff());
        scale = std::max({scale, rhs_m.col(col).cwiseAbs().maxCoeff(),
                          rhs_d.col(col).cwiseAbs().maxCoeff()});
      }
      transf.track(res / scale);
    }
  }

  // quadrature oracle against the closed form
  {
    auto closed_at = [&](const Section& pos, const CVec& z) {
      Section img = bargmann_closed_form(pos);
      return evaluate_wave(img, z);
    };
    Section h0 = Section::unit(ht->basis_ptr(), tau, level, std::vector<int>(2 * r, 0));
    std::vector<CVec> zs;
    for (int trial = 0; trial < 20; ++trial) zs.push_back(detail::random_cvec(rng, 2 * r, 0.6));
    CVec vals = bargmann_quadrature(h0, zs, nodes, 1e-10);
    for (std::size_t i = 0; i < zs.size(); ++i)
      quad_ground.track(std::abs(vals(static_cast<int>(i)) - closed_at(h0, zs[i])));

    Section poly = Section::zero(ht->basis_ptr(), tau, level);
    poly.coeffs = detail::random_section_coeffs(rng, hb, 3);
    std::vector<CVec> zs3(zs.begin(), zs.begin() + 8);
    CVec vals3 = bargmann_quadrature(poly, zs3, nodes, 1e-9);
    for (std::size_t i = 0; i < zs3.size(); ++i)
      quad_poly.track(std::abs(vals3(static_cast<int>(i)) - closed_at(poly, zs3[i])));
  }

  // translated gaussian: packet closed form against node-doubled quadrature
  {
    const FrameSet fs = build_frames(tau, level, cartan);
    const int n = 2 * r;
    GaussianPacket seed = GaussianPacket::standard(n, 1.0 / level.abs_t());
    Vec center = detail::random_vec(rng, n, 0.4);
    GaussianPacket shifted = packet_pullback(seed, Mat::Identity(n, n), -center);
    SliceFn s = [shifted](const Vec& u) { return packet_eval(shifted, u); };
    std::vector<CVec> zs;
    for (int trial = 0; trial < 4; ++trial) zs.push_back(detail::random_cvec(rng, n, 0.5));
    EquivariantTransform tq = bargmann_equivariant(s, fs, level, zs, nodes, 1e-8);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      cd closed = bargmann_packet_value(shifted, fs, level, zs[i]);
      translated.track(std::abs(tq.values(static_cast<int>(i)) - closed));
    }
  }

  CheckList out;
  out.push_back(make_check("bargmann.ground_state", "transform/ground-state", ground.value, 1e-10));
  out.push_back(make_check("bargmann.first_excited", "transform/ladder-step", excited.value, 1e-12));
  out.push_back(make_check("bargmann.gram_identity", "transform/unitarity-gram", gram.value, 1e-10));
  out.push_back(make_check("bargmann.operator_transport", "transform/operator-identities",
                           transf.value, 1e-10));
  out.push_back(make_check("bargmann.unitarity", "transform/unitarity-random", unitary.value, 1e-9));
  out.push_back(make_check("bargmann.degree_preservation", "transform/degree-blocks",
                           degrees.value, 1e-12));
  out.push_back(make_check("bargmann.quadrature_ground", "transform/quadrature-ground",
                           quad_ground.value, 1e-10));
  out.push_back(make_check("bargmann.quadrature_cubic", "transform/quadrature-cubic",
                           quad_poly.value, 1e-9));
  out.push_back(make_check("bargmann.translated_gaussian", "transform/translated-gaussian",
                           translated.value, 1e-8));
  return out;
}

CheckList suite_transport(const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0xabc217u);
  const CartanData& cartan = cfg.cartan;
  const int r = cartan.rank;
  const Level level = cfg.level;
  const int N = r == 1 ? cfg.degree : std::min(cfg.degree, 8);

  TablePtr ht = table_for(BasisFamily::hermite, r, N, level);
  TablePtr ft = table_for(BasisFamily::fock, r, N, level);
  TransportFamily hw_fam = make_transport_family(*ht, ConnectionKind::hitchin_witten);
  TransportFamily ch_fam = make_transport_family(*ft, ConnectionKind::l2);

  Worst const_path, reversible, two_path, hol_ch, hol_hw, hol_scaling, holomorphy,
      inter_ground, inter_random, inter_l2ch, delta_const, delta_analytic, step_check;

  const TeichmullerPoint tau0 = cfg.taus.front();

  // constant path is the identity
  {
    Section h0 = Section::unit(ht->basis_ptr(), tau0, level, std::vector<int>(2 * r, 0));
    TeichPath path;
    path.waypoints = {tau0, tau0};
    path.steps_per_segment = 16;
    TransportResult res = transport(hw_fam, ht->basis(), path, h0);
    const_path.track((res.endpoint.coeffs - h0.coeffs).norm());
  }

  // there and back again
  {
    Section psi = Section::zero(ht->basis_ptr(), tau0, level);
    psi.coeffs = detail::random_section_coeffs(rng, ht->basis(), N - 6);
    TeichPath fwd;
    fwd.waypoints = {tau0, {tau0.tau1 + 0.4, tau0.tau2 + 0.3}};
    fwd.steps_per_segment = cfg.steps;
    TransportResult go = transport(hw_fam, ht->basis(), fwd, psi);
    TeichPath back;
    back.waypoints = {fwd.waypoints[1], tau0};
    back.steps_per_segment = cfg.steps;
    TransportResult ret = transport(hw_fam, ht->basis(), back, go.endpoint);
    reversible.track((ret.endpoint.coeffs - psi.coeffs).norm() / psi.coeffs.norm());
  }

  // flatness as path independence within a simply connected chart
  {
    Section h0 = Section::unit(ht->basis_ptr(), TeichmullerPoint(0.0, 1.0), level,
                               std::vector<int>(2 * r, 0));
    TeichPath direct;
    direct.waypoints = {{0.0, 1.0}, {0.0, 2.0}};
    direct.steps_per_segment = 400;
    TeichPath detour;
    detour.waypoints = {{0.0, 1.0}, {1.0, 1.0}, {0.0, 2.0}};
    detour.steps_per_segment = 400;
    TransportResult a = transport(hw_fam, ht->basis(), direct, h0);
    TransportResult b = transport(hw_fam, ht->basis(), detour, h0);
    two_path.track((a.endpoint.coeffs - b.endpoint.coeffs).norm());
    // step halving keeps the endpoint
    TransportResult checked =
        transport_checked(hw_fam, ht->basis(), direct, h0, cfg.tol.transport);
    step_check.track((checked.endpoint.coeffs - a.endpoint.coeffs).norm());
  }

  // holonomy of small random loops
  {
    for (int trial = 0; trial < 10; ++trial) {
      TeichmullerPoint center(rng.uniform(-0.5, 0.5), rng.uniform(0.8, 1.6));
      double radius = rng.uniform(0.05, 0.2);
      TeichPath loop = circle_loop(center, radius, 4, cfg.steps / 4);
      CMat hol_c = holonomy(ch_fam, ft->basis(), loop, 4);
      hol_ch.track((hol_c - CMat::Identity(hol_c.rows(), hol_c.cols())).norm());
      CMat hol_h = holonomy(hw_fam, ht->basis(), loop, 4);
      hol_hw.track((hol_h - CMat::Identity(hol_h.rows(), hol_h.cols())).norm());
    }
    // integrator scaling: shrinking the loop shrinks the defect
    TeichmullerPoint center(0.0, 1.2);
    TeichPath big = circle_loop(center, 0.2, 4, 8);
    TeichPath small = circle_loop(center, 0.1, 4, 8);
    CMat hol_big = holonomy(ch_fam, ft->basis(), big, 4);
    CMat hol_small = holonomy(ch_fam, ft->basis(), small, 4);
    CMat eye = CMat::Identity(hol_big.rows(), hol_big.cols());
    double ratio = (hol_big - eye).norm() / std::max((hol_small - eye).norm(), 1e-300);
    hol_scaling.track(ratio >= 3.0 ? 0.0 : 1.0);
  }

  // the full holomorphic-side derivative keeps transported sections holomorphic
  {
    const int Ne = std::min(N, 8);
    TablePtr et = table_for(BasisFamily::extended, r, Ne, level, cfg.beta_degree);
    TablePtr ft_small = table_for(BasisFamily::fock, r, Ne, level);
    std::vector<int> mapix = fock_into_extended(et->basis(), ft_small->basis());
    CVec start = CVec::Zero(et->basis().size());
    CVec cf = detail::random_section_coeffs(rng, ft_small->basis(), Ne - 4);
    for (int i = 0; i < ft_small->basis().size(); ++i) start(mapix[i]) = cf(i);

    TeichmullerPoint a = tau0;
    TeichmullerPoint b{tau0.tau1 + 0.3, tau0.tau2 + 0.4};
    const int steps = 400;
    CVec c = start;
    const cd w{b.tau1 - a.tau1, b.tau2 - a.tau2};
    auto rhs = [&](double s, const CVec& y) {
      TeichmullerPoint p{a.tau1 + s * (b.tau1 - a.tau1), a.tau2 + s * (b.tau2 - a.tau2)};
      SpMat th_t = ch_extended_generator(*et, p, level, cartan, TauDir::d_tau);
      SpMat th_tb = ch_extended_generator(*et, p, level, cartan, TauDir::d_tau_bar);
      return CVec(-(w * (th_t * y) + std::conj(w) * (th_tb * y)));
    };
    const double ds = 1.0 / steps;
    double worst_beta = 0.0;
    for (int i = 0; i < steps; ++i) {
      double s = i * ds;
      CVec k1 = rhs(s, c);
      CVec k2 = rhs(s + 0.5 * ds, c + 0.5 * ds * k1);
      CVec k3 = rhs(s + 0.5 * ds, c + 0.5 * ds * k2);
      CVec k4 = rhs(s + ds, c + ds * k3);
      c += (ds / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (i % 50 == 0 || i == steps - 1) {
        double bad = 0.0;
        for (int l = 0; l < et->basis().size(); ++l) {
          const auto& e = et->basis().set.exponents(l);
          for (int v = 0; v < 2 * r; ++v)
            if (e[2 * r + v] != 0) { bad = std::max(bad, std::abs(c(l))); break; }
        }
        worst_beta = std::max(worst_beta, bad / c.norm());
      }
    }
    holomorphy.track(worst_beta);
  }

  // the transform intertwines the two transport generators
  {
    IntertwiningReport rep = verify_intertwining(tau0, level, cartan, N, N - 4, 1, rng);
    inter_ground.track(rep.max_residual);

    Worst rnd;
    for (int sample = 0; sample < 10; ++sample) {
      TeichmullerPoint tau(rng.uniform(-0.8, 0.8), rng.uniform(0.5, 2.0));
      Level lv(rng.uniform_int(1, 4), rng.uniform(-2.0, 2.0));
      IntertwiningReport rr = verify_intertwining(tau, lv, cartan, N, N - 4, 5, rng);
      rnd.track(rr.max_residual);
    }
    inter_random.track(rnd.value);

    // swapping in the fock block of the model-level derivative changes nothing
    const int Ne = std::min(N, 8);
    TablePtr et = table_for(BasisFamily::extended, r, Ne, level, cfg.beta_degree);
    TablePtr fsm = table_for(BasisFamily::fock, r, Ne, level);
    for (TauDir dir : {TauDir::d_tau, TauDir::d_tau_bar}) {
      CMat via_ext =
          fock_block(et->basis(), fsm->basis(), ch_extended_generator(*et, tau0, level, cartan, dir));
      CMat direct = CMat(transport_generator(*fsm, ConnectionKind::l2, tau0, dir));
      double res = 0.0, scale = 1.0;
      for (int col = 0; col < fsm->basis().size(); ++col) {
        if (fsm->basis().set.degree(col) > Ne - 2) continue;
        res = std::max(res, (via_ext.col(col) - direct.col(col)).cwiseAbs().maxCoeff());
        scale = std::max(scale, direct.col(col).cwiseAbs().maxCoeff());
      }
      inter_l2ch.track(res / scale);
    }
  }

  // coefficient derivative of families
  {
    // constant family
    Section base = Section::zero(ft->basis_ptr(), tau0, level);
    base.coeffs = detail::random_section_coeffs(rng, ft->basis(), N - 4);
    SectionFamily constant{[&](const TeichmullerPoint& t) {
      Section s = base;
      s.tau = t;
      return s;
    }};
    Section d = delta_derivative(constant, tau0, TauDir::d_tau);
    delta_const.track(d.coeffs.norm());

    // polynomial-in-tau coefficients have an exact derivative
    SectionFamily poly{[&](const TeichmullerPoint& t) {
      Section s = base;
      s.tau = t;
      cd z{t.tau1, t.tau2};
      s.coeffs = base.coeffs * (z * z + 2.0 * z - cd(0.5, 0.25));
      return s;
    }};
    cd z0{tau0.tau1, tau0.tau2};
    Section dp = delta_derivative(poly, tau0, TauDir::d_tau);
    CVec want = base.coeffs * (2.0 * z0 + 2.0);
    delta_analytic.track((dp.coeffs - want).norm() / want.norm());
    Section dpbar = delta_derivative(poly, tau0, TauDir::d_tau_bar);
    delta_analytic.track(dpbar.coeffs.norm() / want.norm());
  }

  CheckList out;
  out.push_back(make_check("transport.constant_path", "transport/constant-path",
                           const_path.value, 1e-12));
  out.push_back(make_check("transport.reversibility", "transport/reversibility",
                           reversible.value, 1e-8));
  out.push_back(make_check("transport.path_independence", "transport/path-independence",
                           two_path.value, cfg.tol.transport));
  out.push_back(make_check("transport.step_halving", "transport/step-halving",
                           step_check.value, 10.0 * cfg.tol.transport));
  out.push_back(make_check("transport.holonomy_holomorphic", "holonomy/holomorphic-side",
                           hol_ch.value, cfg.tol.transport));
  out.push_back(make_check("transport.holonomy_real", "holonomy/real-side", hol_hw.value,
                           cfg.tol.transport));
  out.push_back(make_check("transport.holonomy_scaling", "holonomy/loop-scaling",
                           hol_scaling.value, 0.5));
  out.push_back(make_check("transport.preserves_holomorphicity",
                           "transport/preserves-holomorphicity", holomorphy.value, 1e-8));
  out.push_back(make_check("transport.intertwining_ground", "intertwining/ground-state",
                           inter_ground.value, 1e-9));
  out.push_back(make_check("transport.intertwining_random", "intertwining/property-run",
                           inter_random.value, 1e-8));
  out.push_back(make_check("transport.intertwining_l2_route", "intertwining/l2-route",
                           inter_l2ch.value, cfg.tol.matrix));
  out.push_back(make_check("transport.delta_constant_family", "families/constant",
                           delta_const.value, 1e-10));
  out.push_back(make_check("transport.delta_analytic_family", "families/analytic",
                           delta_analytic.value, 1e-7));
  return out;
}

}  // namespace cslab
