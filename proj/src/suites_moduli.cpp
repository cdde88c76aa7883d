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

// gauge action on a slice function, as packets: seed the group element into
// the closed-form lattice machinery
cd apply_group_packets(const std::vector<GaussianPacket>& packets, const Vec& u) {
  cd acc = 0.0;
  for (const auto& p : packets) acc += packet_eval(p, u);
  return acc;
}

}  // namespace

CheckList suite_equivariance(const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0x68b1d3u);
  const CartanData& cartan = cfg.cartan;
  const int r = cartan.rank;
  const Level level = cfg.level;
  const int N = r == 1 ? std::min(cfg.degree, 10) : std::min(cfg.degree, 6);
  const int nodes2 = r == 1 ? std::min(cfg.quad_nodes, 48) : 16;
  const int nodes4 = r == 1 ? 16 : 8;
  const TeichmullerPoint tau = cfg.taus.front();
  const FrameSet fs = build_frames(tau, level, cartan);
  const StructureTensors st = build_structures(tau, level, cartan);

  Worst weyl_order, weyl_gram, weyl_lattice, act_identity, act_compose, lift_group_law;
  Worst equi_invariant, equi_refine, below_refine, below_equivariant;
  Worst fig1, transpose_square, point_kernel, dual_linear, dual_direct, dual_point;
  Worst mcg_t_symplectic, mcg_s_frames, mcg_covariance, mcg_intertwine;

  // --- residual gauge group -------------------------------------------------
  {
    const auto& group = cartan.weyl_group();
    // closure under products: every product lands in the enumeration
    for (int trial = 0; trial < 20; ++trial) {
      int a = rng.uniform_int(0, static_cast<int>(group.size()) - 1);
      int b = rng.uniform_int(0, static_cast<int>(group.size()) - 1);
      Mat prod = group[a] * group[b];
      double best = 1e300;
      for (const auto& g : group) best = std::min(best, (g - prod).cwiseAbs().maxCoeff());
      weyl_order.track(best);
    }
    Mat lat_inv = cartan.lattice_basis.inverse();
    for (const auto& w : group) {
      weyl_gram.track((w.transpose() * cartan.gram * w - cartan.gram).cwiseAbs().maxCoeff());
      Mat m = lat_inv * w * cartan.lattice_basis;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          weyl_lattice.track(std::abs(m(i, j) - std::round(m(i, j))));
    }

    // action laws on points
    GaugeElement id = GaugeElement::identity(r);
    for (int trial = 0; trial < 100; ++trial) {
      Vec x = detail::random_vec(rng, 4 * r);
      act_identity.track((gauge_act(cartan, id, x) - x).cwiseAbs().maxCoeff());
      GaugeElement g1, g2;
      g1.weyl_index = rng.uniform_int(0, static_cast<int>(group.size()) - 1);
      g2.weyl_index = rng.uniform_int(0, static_cast<int>(group.size()) - 1);
      auto rand_shift = [&] {
        Eigen::VectorXi s(r);
        for (int i = 0; i < r; ++i) s(i) = rng.uniform_int(-2, 2);
        return s;
      };
      g1.shift_dx = rand_shift();
      g1.shift_dy = rand_shift();
      g2.shift_dx = rand_shift();
      g2.shift_dy = rand_shift();
      Vec seq = gauge_act(cartan, g1, gauge_act(cartan, g2, x));
      Vec composed = gauge_act(cartan, gauge_compose(cartan, g1, g2), x);
      act_compose.track((seq - composed).cwiseAbs().maxCoeff() /
                        std::max(1.0, x.cwiseAbs().maxCoeff()));
    }
  }

  // --- lifted lattice action on slice sections ------------------------------
  {
    GaussianPacket seed = GaussianPacket::standard(2 * r, 1.0 / level.abs_t());
    SliceFn s = [seed](const Vec& u) { return packet_eval(seed, u); };
    // the lift composes exactly (with the ordered-basis semicharacter)
    for (int trial = 0; trial < 10; ++trial) {
      GaugeElement g1 = GaugeElement::identity(r), g2 = GaugeElement::identity(r);
      auto rand_shift = [&] {
        Eigen::VectorXi v(r);
        for (int i = 0; i < r; ++i) v(i) = rng.uniform_int(-1, 1);
        return v;
      };
      g1.shift_dx = rand_shift();
      g1.shift_dy = rand_shift();
      g2.shift_dx = rand_shift();
      g2.shift_dy = rand_shift();
      SliceFn via1 = gauge_apply_A0(cartan, level, g1, gauge_apply_A0(cartan, level, g2, s));
      SliceFn via2 = gauge_apply_A0(cartan, level, gauge_compose(cartan, g1, g2), s);
      for (int p = 0; p < 5; ++p) {
        Vec u = detail::random_vec(rng, 2 * r, 1.5);
        lift_group_law.track(std::abs(via1(u) - via2(u)));
      }
    }

    // averaging commutes with the action (projection onto invariants, up to
    // the truncation tail)
    std::vector<Vec> probes;
    for (int p = 0; p < 4; ++p) probes.push_back(detail::random_vec(rng, 2 * r, 0.8));
    EquivariantSection avg =
        equivariantize(cartan, level, s, cfg.lattice_radius, 1e-6, probes);
    GaugeElement gen = GaugeElement::identity(r);
    gen.shift_dx(0) = 1;
    SliceFn moved = gauge_apply_A0(cartan, level, gen, avg.fn);
    GaugeElement wgen = GaugeElement::identity(r);
    wgen.weyl_index = static_cast<int>(cartan.weyl_group().size()) - 1;
    SliceFn moved_w = gauge_apply_A0(cartan, level, wgen, avg.fn);
    for (const Vec& u : probes) {
      equi_invariant.track(std::abs(moved(u) - avg.fn(u)));
      equi_invariant.track(std::abs(moved_w(u) - avg.fn(u)));
    }

    // radius refinement on fundamental-domain samples
    EquivariantSection avg2 =
        equivariantize(cartan, level, s, cfg.lattice_radius + 2, 1e-6, probes);
    for (const Vec& u : probes) equi_refine.track(std::abs(avg.fn(u) - avg2.fn(u)));
  }

  // --- holomorphic transform of bounded equivariant sections ---------------
  {
    GaussianPacket seed = GaussianPacket::standard(2 * r, 1.2 / level.abs_t());
    std::vector<GaussianPacket> theta =
        equivariant_packets(cartan, level, seed, cfg.lattice_radius);
    SliceFn s = [&theta](const Vec& u) { return apply_group_packets(theta, u); };

    std::vector<CVec> zs;
    for (int i = 0; i < 3; ++i) zs.push_back(detail::random_cvec(rng, 2 * r, 0.4));
    EquivariantTransform coarse = bargmann_equivariant(s, fs, level, zs, nodes2 / 2, 1e-4);
    EquivariantTransform fine = bargmann_equivariant(s, fs, level, zs, nodes2, 1e-7);
    below_refine.track((coarse.values - fine.values).cwiseAbs().maxCoeff());

    // closed-form packet route agrees with quadrature
    for (std::size_t i = 0; i < zs.size(); ++i) {
      cd closed = 0.0;
      for (const auto& p : theta) closed += bargmann_packet_value(p, fs, level, zs[i]);
      below_refine.track(std::abs(closed - fine.values(static_cast<int>(i))));
    }

    // equivariance of the transformed section on gauge orbits: the bounded
    // representative transforms by the full-space lift phase
    GaugeElement gen = GaugeElement::identity(r);
    gen.shift_dx(0) = 1;
    Eigen::VectorXi n(2 * r);
    n << gen.shift_dx, gen.shift_dy;
    Vec lambda4 = gauge_translation(cartan, gen);
    for (int trial = 0; trial < 3; ++trial) {
      Vec x = detail::random_vec(rng, 4 * r, 0.4);
      Vec gx = gauge_act(cartan, gen, x);
      CVec z = fs.z_rows() * x.cast<cd>();
      CVec gz = fs.z_rows() * gx.cast<cd>();
      cd val = 0.0, gval = 0.0;
      for (const auto& p : theta) {
        val += bargmann_packet_value(p, fs, level, z);
        gval += bargmann_packet_value(p, fs, level, gz);
      }
      cd phase = lattice_semicharacter(cartan, level, n) *
                 lift_phase_full(st, lambda4, gx);
      // T_g Psi = Psi for the descended section: Psi(g x) = phase^{-1} Psi(x)
      below_equivariant.track(std::abs(gval - val / phase) /
                              std::max(1.0, std::abs(val)));
    }
  }

  // --- duality square -------------------------------------------------------
  {
    // pairing of transformed sections equals the slice pairing
    GaussianPacket seed = GaussianPacket::standard(2 * r, 1.0 / level.abs_t());
    std::vector<GaussianPacket> theta =
        equivariant_packets(cartan, level, seed, cfg.lattice_radius);
    // Schwartz test: a displaced gaussian on the slice
    Vec center = detail::random_vec(rng, 2 * r, 0.3);
    GaussianPacket test_packet =
        packet_pullback(GaussianPacket::standard(2 * r, 0.8 / level.abs_t()),
                        Mat::Identity(2 * r, 2 * r), -center);

    // left side: gaussian pairing of the two transforms over the holomorphic
    // model, via closed-form integrals packet by packet
    Mat embed = slice_embedding(fs);
    Mat embed_u = embed.topRows(2 * r);
    Mat apq = fs.coords.topRows(2 * r) * embed;
    CMat symq = 0.5 * (apq + apq.transpose()).cast<cd>();
    const double h = level.hbar();
    auto q_side_packet = [&](const GaussianPacket& p) {
      GaussianPacket g = packet_pullback(p, embed_u, Vec::Zero(2 * r));
      g.A += (kI / h) * symq;  // conj(rho) on the slice
      return g;
    };
    auto fock_value = [&](const GaussianPacket& p, const CVec& z) {
      // f-side transform (no damping): exp(z.z/4h) gaussian integral
      GaussianPacket g = q_side_packet(p);
      g.A += -(1.0 / h) * CMat::Identity(2 * r, 2 * r);
      g.b += -(kI / h) * z;
      g.c += (z.transpose() * z)(0, 0) / (4.0 * h);
      return std::pow(M_PI * h, -0.5 * r) * packet_integral(g);
    };
    // quadrature over the holomorphic model with the gaussian measure
    GaussHermiteRule rule4 = gauss_hermite_scaled(nodes4, std::sqrt(h));
    auto fock_pairing = [&](const std::function<cd(const CVec&)>& f1,
                            const std::function<cd(const CVec&)>& f2) {
      auto integrand = [&](const Vec& xy) {
        CVec z(2 * r);
        for (int l = 0; l < 2 * r; ++l) z(l) = cd(xy(l), xy(2 * r + l));
        return f1(z) * std::conj(f2(z)) * std::exp(-z.squaredNorm() / (2.0 * h));
      };
      cd val = tensor_integrate(rule4, 4 * r, integrand);
      return std::pow(2.0 * M_PI * h, -2 * r) * val;
    };
    auto theta_transform = [&](const CVec& z) {
      cd acc = 0.0;
      for (const auto& p : theta) acc += fock_value(p, z);
      return acc;
    };
    auto test_transform = [&](const CVec& z) { return fock_value(test_packet, z); };
    cd lhs = fock_pairing(theta_transform, test_transform);

    // right side: the slice pairing in the polarised chart
    GaussHermiteRule rule2 = gauss_hermite_scaled(nodes2, std::sqrt(h));
    auto q_pairing = [&](const std::function<cd(const Vec&)>& a,
                         const std::function<cd(const Vec&)>& b) {
      auto integrand = [&](const Vec& q) { return a(q) * std::conj(b(q)); };
      return tensor_integrate(rule2, 2 * r, integrand);
    };
    auto theta_q = [&](const Vec& q) {
      cd acc = 0.0;
      for (const auto& p : theta) acc += packet_eval(q_side_packet(p), q);
      return acc;
    };
    auto test_q = [&](const Vec& q) { return packet_eval(q_side_packet(test_packet), q); };
    cd rhs = q_pairing(theta_q, test_q);
    fig1.track(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

    // transpose square on truncated sections: (tB T | psi) = (T | B psi)
    TablePtr ht = table_for(BasisFamily::hermite, r, N, level);
    Section psi1 = Section::zero(ht->basis_ptr(), tau, level);
    psi1.coeffs = detail::random_section_coeffs(rng, ht->basis(), 3);
    Section psi2 = Section::zero(ht->basis_ptr(), tau, level);
    psi2.coeffs = detail::random_section_coeffs(rng, ht->basis(), 3);
    Section f1 = bargmann_closed_form(psi1);
    auto payload = [f1](const CVec& z) { return evaluate_wave(f1, z); };
    DualElement T = dual_regular_fock(payload, level, r, nodes4);
    DualElement tB = transpose_bargmann(T);
    cd left = tB.pair(psi2);
    cd right = inner_product(psi1, psi2);
    transpose_square.track(std::abs(left - right) / std::max(1.0, std::abs(right)));
    // linearity of the transpose on combinations
    DualElement combo = dual_combo({{cd(2.0, 1.0), T}, {cd(0.0, -3.0), T}});
    cd lin = transpose_bargmann(combo).pair(psi2) - cd(2.0, -2.0) * left;
    dual_linear.track(std::abs(lin) / std::max(1.0, std::abs(left)));

    // point evaluation transposes to the kernel pairing
    CVec z0 = detail::random_cvec(rng, 2 * r, 0.4);
    DualElement pt = dual_point_eval_z(z0);
    cd via_transpose = transpose_bargmann(pt).pair(psi2);
    auto psi2_fn = [&](const Vec& q) { return evaluate_wave(psi2, q); };
    cd via_kernel = std::conj(bargmann_kernel_point(psi2_fn, z0, level, r, nodes2));
    point_kernel.track(std::abs(via_transpose - via_kernel) /
                       std::max(1.0, std::abs(via_kernel)));
  }

  // --- dual connections ------------------------------------------------------
  {
    // tau-independent bounded equivariant family: dual derivative against the
    // direct potential application, entirely at the function level
    GaussianPacket seed = GaussianPacket::standard(2 * r, 1.0 / level.abs_t());
    std::vector<GaussianPacket> theta =
        equivariant_packets(cartan, level, seed, cfg.lattice_radius);
    const double h = level.hbar();
    GaussHermiteRule rule2 = gauss_hermite_scaled(nodes2, std::sqrt(1.5 * h));
    // test section: polynomial times gaussian via a hermite section
    TablePtr ht = table_for(BasisFamily::hermite, r, N, level);
    Section psi0 = Section::zero(ht->basis_ptr(), tau, level);
    psi0.coeffs = detail::random_section_coeffs(rng, ht->basis(), 2);
    Mat embed = slice_embedding(fs);
    Mat chart = embed.topRows(2 * r).inverse();  // u -> q
    auto psi0_u = [&](const Vec& u) {
      // wavefunction times the polarised frame, as a function on the slice
      Vec x = Vec::Zero(4 * r);
      x.head(2 * r) = u;
      return evaluate_wave(psi0, Vec(chart * u)) * frame_rho(fs, level, x);
    };
    for (const Eigen::Vector2d& dirv :
         {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)}) {
      WeylOp pot = hw_potential_weyl(tau, level, cartan, dirv);
      // direct side: -(1/2) u(V) applied to the theta sum
      auto nabla_T = [&](const Vec& u) {
        cd acc = 0.0;
        for (const auto& p : theta)
          acc += polypacket_eval(apply_weyl(pot, PolyPacket::pure(p)), u);
        return cd(-0.5) * acc;
      };
      auto T_fn = [&](const Vec& u) { return apply_group_packets(theta, u); };
      auto pair_u = [&](const std::function<cd(const Vec&)>& a,
                        const std::function<cd(const Vec&)>& b) {
        auto integrand = [&](const Vec& u) { return a(u) * std::conj(b(u)); };
        return tensor_integrate(rule2, 2 * r, integrand);
      };
      cd direct = pair_u(nabla_T, psi0_u);
      // dual side: the pairing is tau-independent, so only the potential term
      // of the test section contributes; it acts through the displayed
      // operators on the hermite coefficients
      SpMat u_tau = hw_potential(*ht, tau, TauDir::d_tau);
      SpMat u_taubar = hw_potential(*ht, tau, TauDir::d_tau_bar);
      const cd w{dirv(0), dirv(1)};
      Section upsi = psi0;
      upsi.coeffs = w * (u_tau * psi0.coeffs) + std::conj(w) * (u_taubar * psi0.coeffs);
      auto upsi_u = [&](const Vec& u) {
        Vec x = Vec::Zero(4 * r);
        x.head(2 * r) = u;
        return evaluate_wave(upsi, Vec(chart * u)) * frame_rho(fs, level, x);
      };
      cd dual = -pair_u(T_fn, upsi_u);
      dual_direct.track(std::abs(direct - dual) /
                        std::max(1.0, std::abs(direct)));
    }

    // point-evaluation family derivative against finite differences
    Vec q0 = detail::random_vec(rng, 2 * r, 0.3);
    auto T_point = [&](const TeichmullerPoint&) { return dual_point_eval_q(q0); };
    SectionFamily family{[&](const TeichmullerPoint& t) {
      Section s = psi0;
      s.tau = t;
      cd zt{t.tau1, t.tau2};
      s.coeffs = psi0.coeffs * std::exp(cd(0.3) * zt);
      return s;
    }};
    cd val = dual_apply(ConnectionKind::hitchin_witten, T_point, family, tau,
                        Eigen::Vector2d(1.0, 0.0), 1e-4);
    // oracle: the pairing derivative cancels the coefficient part of the
    // covariant derivative exactly, leaving minus the generator term
    SpMat w_tau = transport_generator(*ht, ConnectionKind::hitchin_witten, tau, TauDir::d_tau);
    SpMat w_taubar =
        transport_generator(*ht, ConnectionKind::hitchin_witten, tau, TauDir::d_tau_bar);
    Section fam0 = family.at(tau);
    Section pot_only = fam0;
    pot_only.coeffs = w_tau * fam0.coeffs + w_taubar * fam0.coeffs;
    cd expected = -std::conj(evaluate_wave(pot_only, q0));
    dual_point.track(std::abs(val - expected) / std::max(1.0, std::abs(expected)));
  }

  // --- mapping class moves ---------------------------------------------------
  {
    // integer move preserves the symplectic pairing of pushed vectors
    MCGElement tmove = MCGElement::T();
    Mat p = mcg_point_matrix(tmove, r);
    for (int trial = 0; trial < 10; ++trial) {
      Vec x = detail::random_vec(rng, 4 * r);
      Vec y = detail::random_vec(rng, 4 * r);
      double before = x.transpose() * st.omega_t * y;
      double after = (p * x).transpose() * st.omega_t * (p * y);
      mcg_t_symplectic.track(std::abs(after - before) / std::max(1.0, std::abs(before)));
    }

    // the quarter-turn fixes the square torus and its frame data
    MCGElement smove = MCGElement::S();
    TeichmullerPoint taui(0.0, 1.0);
    TeichmullerPoint simg = mcg_act(smove, taui);
    mcg_s_frames.track(std::hypot(simg.tau1 - taui.tau1, simg.tau2 - taui.tau2));
    double mix = 0.0;
    CMat u = mcg_frame_change(smove, taui, level, cartan, &mix);
    mcg_s_frames.track(mix);
    CMat uu = u * u.adjoint();
    mcg_s_frames.track(rel_fro(uu, CMat(CMat::Identity(2 * r, 2 * r))));

    // gauge covariance of the holomorphic transport generator under the
    // modular moves: dSub + (gamma)' Theta(g tau) Sub = Sub Theta(tau)
    TablePtr ft = table_for(BasisFamily::fock, r, N, level);
    for (const MCGElement& g : {MCGElement::S(), MCGElement::T()}) {
      TeichmullerPoint at = (g.m - MCGElement::S().m).cwiseAbs().sum() == 0
                                ? TeichmullerPoint(0.0, 1.17)
                                : cfg.taus.front();
      auto sub_at = [&](const TeichmullerPoint& tt) {
        double mixing = 0.0;
        CMat uc = mcg_frame_change(g, tt, level, cartan, &mixing);
        return fock_substitution(ft->basis(), CMat(uc.inverse()));
      };
      CMat sub = sub_at(at);
      const double hh = 1e-5;
      CMat d1 = (sub_at({at.tau1 + hh, at.tau2}) - sub_at({at.tau1 - hh, at.tau2})) /
                (2.0 * hh);
      CMat d2 = (sub_at({at.tau1, at.tau2 + hh}) - sub_at({at.tau1, at.tau2 - hh})) /
                (2.0 * hh);
      CMat dsub_tau = 0.5 * (d1 - kI * d2);
      CMat dsub_taubar = 0.5 * (d1 + kI * d2);
      TeichmullerPoint img = mcg_act(g, at);
      cd den = cd(g.m(1, 0)) * at.tau() + cd(g.m(1, 1));
      cd gprime = 1.0 / (den * den);
      for (TauDir dir : {TauDir::d_tau, TauDir::d_tau_bar}) {
        CMat theta_here = CMat(transport_generator(*ft, ConnectionKind::l2, at, dir));
        CMat theta_img = CMat(transport_generator(*ft, ConnectionKind::l2, img, dir));
        cd jac = dir == TauDir::d_tau ? gprime : std::conj(gprime);
        CMat dsub = dir == TauDir::d_tau ? dsub_tau : dsub_taubar;
        CMat lhs = dsub + jac * theta_img * sub;
        CMat rhs = sub * theta_here;
        // compare away from the truncation boundary
        double res = 0.0, scale = 1.0;
        for (int col = 0; col < ft->basis().size(); ++col) {
          if (ft->basis().set.degree(col) > N - 2) continue;
          res = std::max(res, (lhs.col(col) - rhs.col(col)).cwiseAbs().maxCoeff());
          scale = std::max(scale, rhs.col(col).cwiseAbs().maxCoeff());
        }
        mcg_covariance.track(res / scale);
      }
    }

    // the intertwining residual is unchanged by a simultaneous move on the
    // base point and the test section
    for (const MCGElement& g : {MCGElement::S(), MCGElement::T()}) {
      TeichmullerPoint at(0.21, 1.33);
      TeichmullerPoint img = mcg_act(g, at);
      TablePtr ht = table_for(BasisFamily::hermite, r, N, level);
      TablePtr ftb = table_for(BasisFamily::fock, r, N, level);
      CMat B = bargmann_matrix(*ftb);
      auto defect = [&](const TeichmullerPoint& p, TauDir dir) {
        CMat W = CMat(transport_generator(*ht, ConnectionKind::hitchin_witten, p, dir));
        CMat V = CMat(transport_generator(*ftb, ConnectionKind::l2, p, dir));
        return CMat(B * W - V * B);
      };
      CMat here_t = defect(at, TauDir::d_tau), here_tb = defect(at, TauDir::d_tau_bar);
      CMat there_t = defect(img, TauDir::d_tau), there_tb = defect(img, TauDir::d_tau_bar);
      for (int trial = 0; trial < 3; ++trial) {
        Section psi = Section::zero(ht->basis_ptr(), at, level);
        psi.coeffs = detail::random_section_coeffs(rng, ht->basis(), N - 4);
        double res_here =
            std::max((here_t * psi.coeffs).norm(), (here_tb * psi.coeffs).norm()) /
            psi.coeffs.norm();
        double res_there;
        if (r == 1) {
          Section pushed = mcg_act_section(g, psi, cartan);
          res_there = std::max((there_t * pushed.coeffs).norm(),
                               (there_tb * pushed.coeffs).norm()) /
                      pushed.coeffs.norm();
        } else {
          res_there =
              std::max((there_t * psi.coeffs).norm(), (there_tb * psi.coeffs).norm()) /
              psi.coeffs.norm();
        }
        mcg_intertwine.track(std::abs(res_here - res_there));
      }
    }
  }

  CheckList out;
  out.push_back(make_check("equivariance.weyl_closure", "gauge/weyl-closure", weyl_order.value, 1e-10));
  out.push_back(make_check("equivariance.weyl_isometry", "gauge/weyl-isometry", weyl_gram.value, 1e-12));
  out.push_back(make_check("equivariance.weyl_lattice", "gauge/weyl-lattice", weyl_lattice.value, 1e-9));
  out.push_back(make_check("equivariance.action_identity", "gauge/action-identity", act_identity.value, 1e-12));
  out.push_back(make_check("equivariance.action_composition", "gauge/action-composition", act_compose.value, 1e-12));
  out.push_back(make_check("equivariance.lift_group_law", "gauge/lift-group-law", lift_group_law.value, 1e-10));
  out.push_back(make_check("equivariance.average_invariant", "lattice/average-invariant", equi_invariant.value, 1e-8));
  out.push_back(make_check("equivariance.average_refinement", "lattice/average-refinement", equi_refine.value, 1e-8));
  out.push_back(make_check("equivariance.transform_convergence", "lattice/transform-convergence", below_refine.value, 1e-8));
  out.push_back(make_check("equivariance.transform_equivariance", "lattice/transform-equivariance", below_equivariant.value, 1e-7));
  out.push_back(make_check("equivariance.pairing_square", "duality/pairing-square", fig1.value, 1e-6));
  out.push_back(make_check("equivariance.transpose_square", "duality/transpose-square", transpose_square.value, 1e-6));
  out.push_back(make_check("equivariance.transpose_point", "duality/transpose-point", point_kernel.value, 1e-6));
  out.push_back(make_check("equivariance.transpose_linear", "duality/transpose-linearity", dual_linear.value, 1e-10));
  out.push_back(make_check("equivariance.dual_agreement", "duality/dual-vs-direct", dual_direct.value, 1e-6));
  out.push_back(make_check("equivariance.dual_point_family", "duality/point-family-fd", dual_point.value, 1e-6));
  out.push_back(make_check("equivariance.modular_symplectic", "modular/integer-symplectic", mcg_t_symplectic.value, 1e-12));
  out.push_back(make_check("equivariance.modular_fixed_point", "modular/square-torus-fixed", mcg_s_frames.value, 1e-8));
  out.push_back(make_check("equivariance.modular_covariance", "modular/potential-covariance", mcg_covariance.value, 1e-7));
  out.push_back(make_check("equivariance.modular_intertwining", "modular/intertwining-invariance", mcg_intertwine.value, 1e-7));
  return out;
}

}  // namespace cslab
