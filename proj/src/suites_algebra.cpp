#include "suites_common.hpp"

#include "cslab/errors.hpp"

namespace cslab {

using detail::make_check;
using detail::rel_fro;

namespace {

const cd kI{0.0, 1.0};

// worst-case accumulator
struct Worst {
  double value = 0.0;
  void track(double v) { value = std::max(value, v); }
};

// degree-capped block comparison: operators are only exact away from the
// truncation boundary, so identities are asserted on columns with headroom
double block_residual(const Basis& b, const SpMat& lhs, const SpMat& rhs, int headroom) {
  CMat dl(lhs), dr(rhs);
  double res = 0.0, scale = 1.0;
  for (int col = 0; col < b.size(); ++col) {
    if (b.set.degree(col) > b.degree - headroom) continue;
    res = std::max(res, (dl.col(col) - dr.col(col)).cwiseAbs().maxCoeff());
    scale = std::max(scale, dr.col(col).cwiseAbs().maxCoeff());
  }
  return res / scale;
}

// diagonal weight matrix of the holomorphic inner product
CVec fock_weights(const Basis& b, const Level& level) {
  CVec w(b.size());
  for (int i = 0; i < b.size(); ++i) w(i) = fock_weight(level, b.set.exponents(i));
  return w;
}

// adjoint w.r.t. the weighted pairing: A* = W^{-1} A^H W
CMat fock_adjoint(const Basis& b, const Level& level, const CMat& a) {
  CVec w = fock_weights(b, level);
  return w.cwiseInverse().asDiagonal() * a.adjoint() * CMat(w.asDiagonal());
}

// Weyl-symbol to extended-basis matrix in the sigma trivialisation at tau:
// coordinates x_a become linear combinations of z, zbar; derivatives pick up
// the frame-weight correction d_a log sigma.
SpMat weyl_to_extended(const WeylOp& op, const OperatorTable& t, const FrameSet& fs) {
  const Basis& b = t.basis();
  const int n = 2 * b.rank;
  const int dim = 4 * b.rank;
  const double h = t.level().hbar();
  if (op.vars() != dim) fail(ErrorCode::DimensionMismatch, "symbol arity");

  // x_a = sum_l (frame_{a,l} z-part): x = F c with c = (p, q), p = (z+zbar)/2,
  // q = (z-zbar)/(2i)
  std::vector<SpMat> xmul, dmat;
  for (int a = 0; a < dim; ++a) {
    SpMat xa(b.size(), b.size());
    for (int l = 0; l < n; ++l) {
      cd zc = 0.5 * (fs.frame(a, l) - kI * fs.frame(a, n + l));
      cd zbc = 0.5 * (fs.frame(a, l) + kI * fs.frame(a, n + l));
      if (zc != cd(0.0)) xa = xa + zc * t.Z(l);
      if (zbc != cd(0.0)) xa = xa + zbc * t.Zb(l);
    }
    xmul.push_back(std::move(xa));
    // d/dx_a in the sigma trivialisation
    CVec dir = CVec::Zero(dim);
    dir(a) = 1.0;
    CVec c = fs.coords.cast<cd>() * dir;
    SpMat da(b.size(), b.size());
    for (int l = 0; l < n; ++l) {
      cd zeta = c(l) + kI * c(l + n);
      cd xi = c(l) - kI * c(l + n);
      if (zeta != cd(0.0)) da = da + zeta * (t.Dz(l) - (1.0 / (4.0 * h)) * t.Zb(l));
      if (xi != cd(0.0)) da = da + xi * (t.Dzb(l) - (1.0 / (4.0 * h)) * t.Z(l));
    }
    dmat.push_back(std::move(da));
  }

  SpMat out(b.size(), b.size());
  for (const auto& [key, coeff] : op.terms()) {
    SpMat term(b.size(), b.size());
    term.setIdentity();
    for (int a = 0; a < dim; ++a)
      for (int rep = 0; rep < key.second[a]; ++rep) term = SpMat(dmat[a] * term);
    for (int a = 0; a < dim; ++a)
      for (int rep = 0; rep < key.first[a]; ++rep) term = SpMat(xmul[a] * term);
    out = out + coeff * term;
  }
  return out;
}

}  // namespace

CheckList suite_operators(const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0x51c2aeu);
  const CartanData& cartan = cfg.cartan;
  const int r = cartan.rank;
  const Level level = cfg.level;
  const double h = level.hbar();
  const int N = r == 1 ? cfg.degree : std::min(cfg.degree, 8);

  TablePtr ft = table_for(BasisFamily::fock, r, N, level);
  TablePtr ht = table_for(BasisFamily::hermite, r, N, level);
  TablePtr et = table_for(BasisFamily::extended, r, std::min(N, 8), level, cfg.beta_degree);
  const Basis& fb = ft->basis();
  const Basis& hb = ht->basis();
  const Basis& eb = et->basis();

  Worst ann_const, ladder_comm, ladder_adj, md_comm, md_ground, md_fd, mu_comm, mu_coord,
      mu_ladder, preq_holo, preq_curv, preq_curv20;

  // ladder operators annihilate constants and satisfy the canonical relations
  {
    CVec ground = CVec::Zero(fb.size());
    ground(0) = 1.0;
    for (int j = 0; j < 2 * r; ++j) {
      SpMat a = ladder(*ft, j, LadderKind::annihilate);
      SpMat astar = ladder(*ft, j, LadderKind::create);
      ann_const.track((a * ground).norm());
      // a(a*(1)) returns 2 hbar times the constant
      CVec raised = astar * ground;
      ann_const.track((a * raised - 2.0 * h * ground).norm());
      for (int l = 0; l < 2 * r; ++l) {
        SpMat al = ladder(*ft, l, LadderKind::create);
        SpMat comm = SpMat(a * al) - SpMat(al * a);
        SpMat want(fb.size(), fb.size());
        if (l == j) {
          want.setIdentity();
          want = SpMat(2.0 * h * want);
        }
        ladder_comm.track(block_residual(fb, comm, want, 2));
      }
      // adjointness for the weighted pairing on random sections
      CMat astar_dense(astar);
      CMat adj = fock_adjoint(fb, level, CMat(a));
      ladder_adj.track(rel_fro(adj, astar_dense));
    }
  }

  // M/D pairs commute and act on the ground state by the displayed shifts
  {
    CVec ground = CVec::Zero(hb.size());
    ground(0) = 1.0;
    for (int j = 0; j < r; ++j) {
      SpMat M = md_operator(*ht, j, MdKind::M);
      SpMat D = md_operator(*ht, j, MdKind::D);
      md_comm.track(block_residual(hb, SpMat(M * D), SpMat(D * M), 2));
      CVec want = CVec::Zero(hb.size());
      std::vector<int> ej(2 * r, 0), ejr(2 * r, 0);
      ej[j] = 1;
      ejr[j + r] = 1;
      want(hb.set.find(ej)) = std::sqrt(h / 2.0);
      want(hb.set.find(ejr)) = kI * std::sqrt(h / 2.0);
      md_ground.track((M * ground - want).norm());
      CVec wantd = CVec::Zero(hb.size());
      wantd(hb.set.find(ej)) = -std::sqrt(h / 2.0);
      wantd(hb.set.find(ejr)) = -kI * std::sqrt(h / 2.0);
      md_fd.track((D * ground - wantd).norm());
      // pointwise finite-difference of the evaluated section
      Section h0 = Section::unit(ht->basis_ptr(), cfg.taus.front(), level,
                                 std::vector<int>(2 * r, 0));
      Section dh0 = h0;
      dh0.coeffs = D * ground;
      Vec q = detail::random_vec(rng, 2 * r, 0.4);
      const double step = 1e-6;
      auto shift = [&](int axis, double delta) {
        Vec qq = q;
        qq(axis) += delta;
        return evaluate_wave(h0, qq);
      };
      cd fd = h * ((shift(j, step) - shift(j, -step)) / (2.0 * step) +
                   kI * (shift(j + r, step) - shift(j + r, -step)) / (2.0 * step));
      md_fd.track(std::abs(fd - evaluate_wave(dh0, q)) / std::max(1.0, std::abs(fd)));
    }
  }

  // mu/delta pairs and their expansion through the ladder operators
  {
    for (int j = 0; j < r; ++j) {
      SpMat mu = mudelta_operator(*ft, j, MuDeltaKind::mu);
      SpMat de = mudelta_operator(*ft, j, MuDeltaKind::delta);
      mu_comm.track(block_residual(fb, SpMat(mu * de), SpMat(de * mu), 2));
      // delta_j z_j = 2 hbar on the constant
      std::vector<int> ej(2 * r, 0);
      ej[j] = 1;
      CVec zj = CVec::Zero(fb.size());
      zj(fb.set.find(ej)) = 1.0;
      CVec want = CVec::Zero(fb.size());
      want(0) = 2.0 * h;
      mu_coord.track((de * zj - want).norm());
      SpMat viaLadder = ladder(*ft, j, LadderKind::create) +
                        kI * ladder(*ft, j + r, LadderKind::create);
      mu_ladder.track(rel_fro(mu, viaLadder));
    }
  }

  // prequantum derivative: holomorphic frame, curvature identities
  {
    // antiholomorphic derivative kills the beta = 0 slice
    for (int j = 0; j < 2 * r; ++j) {
      SpMat nzb = nabla_zbar(*et, j);
      double res = 0.0;
      for (int col = 0; col < eb.size(); ++col) {
        const auto& e = eb.set.exponents(col);
        bool holo = true;
        for (int l = 0; l < 2 * r; ++l)
          if (e[2 * r + l] != 0) { holo = false; break; }
        if (!holo) continue;
        res = std::max(res, CMat(nzb).col(col).cwiseAbs().maxCoeff());
      }
      preq_holo.track(res);
    }
    // curvature on coordinate pairs: [nabla_{z_j}, nabla_{zbar_l}] = delta/2h
    for (int j = 0; j < 2 * r; ++j)
      for (int l = 0; l < 2 * r; ++l) {
        SpMat comm = SpMat(nabla_z(*et, j) * nabla_zbar(*et, l)) -
                     SpMat(nabla_zbar(*et, l) * nabla_z(*et, j));
        SpMat want(eb.size(), eb.size());
        if (j == l) {
          want.setIdentity();
          want = SpMat((1.0 / (2.0 * h)) * want);
        }
        preq_curv.track(block_residual(eb, comm, want, 2));
        SpMat comm20 = SpMat(nabla_z(*et, j) * nabla_z(*et, l)) -
                       SpMat(nabla_z(*et, l) * nabla_z(*et, j));
        preq_curv20.track(block_residual(eb, comm20, SpMat(eb.size(), eb.size()), 2));
      }
  }

  const double tol = cfg.tol.matrix;
  CheckList out;
  out.push_back(make_check("operators.ladder_annihilates_constant", "ladders/constants",
                           ann_const.value, tol));
  out.push_back(make_check("operators.ladder_commutator", "ladders/commutator",
                           ladder_comm.value, tol));
  out.push_back(make_check("operators.ladder_adjoint", "ladders/adjoint", ladder_adj.value, tol));
  out.push_back(make_check("operators.md_commute", "md-operators/commute", md_comm.value, tol));
  out.push_back(make_check("operators.md_ground_state", "md-operators/ground-state",
                           md_ground.value, tol));
  out.push_back(make_check("operators.md_derivative_fd", "md-operators/derivative-fd",
                           md_fd.value, cfg.tol.fd));
  out.push_back(make_check("operators.mudelta_commute", "mudelta/commute", mu_comm.value, tol));
  out.push_back(make_check("operators.mudelta_coordinate", "mudelta/coordinate",
                           mu_coord.value, tol));
  out.push_back(make_check("operators.mu_ladder_expansion", "mudelta/ladder-expansion",
                           mu_ladder.value, tol));
  out.push_back(make_check("operators.prequantum_holomorphic_frame",
                           "prequantum/holomorphic-frame", preq_holo.value, tol));
  out.push_back(make_check("operators.prequantum_curvature", "prequantum/curvature",
                           preq_curv.value, tol));
  out.push_back(make_check("operators.prequantum_type20", "prequantum/type-20",
                           preq_curv20.value, tol));
  return out;
}

namespace {

// Wirtinger finite difference of a tau-indexed Weyl-symbol family
WeylOp symbol_wirtinger_fd(const std::function<WeylOp(const TeichmullerPoint&)>& fam,
                           const TeichmullerPoint& tau, TauDir dir, double h) {
  WeylOp d1 = (fam({tau.tau1 + h, tau.tau2}) - fam({tau.tau1 - h, tau.tau2})) *
              cd(1.0 / (2.0 * h));
  WeylOp d2 = (fam({tau.tau1, tau.tau2 + h}) - fam({tau.tau1, tau.tau2 - h})) *
              cd(1.0 / (2.0 * h));
  if (dir == TauDir::d_tau) return d1 * cd(0.5) + d2 * cd(0.0, -0.5);
  return d1 * cd(0.5) + d2 * cd(0.0, 0.5);
}

double fock_column_residual(const Basis& eb, const CMat& op, int headroom) {
  const int n = 2 * eb.rank;
  double res = 0.0;
  for (int col = 0; col < eb.size(); ++col) {
    const auto& e = eb.set.exponents(col);
    bool holo = true;
    int deg = 0;
    for (int l = 0; l < n; ++l) {
      deg += e[l];
      if (e[n + l] != 0) holo = false;
    }
    if (!holo || deg > eb.degree - headroom) continue;
    res = std::max(res, op.col(col).cwiseAbs().maxCoeff());
  }
  return res;
}

}  // namespace

CheckList suite_connections(const RunConfig& cfg) {
  Rng rng(cfg.seed ^ 0x77e09bu);
  const CartanData& cartan = cfg.cartan;
  const int r = cartan.rank;
  const Level level = cfg.level;
  const int Ne = std::min(cfg.degree, r == 1 ? 8 : 6);
  const int Nh = r == 1 ? cfg.degree : std::min(cfg.degree, 8);
  const cd tt = level.t();
  const double at = level.abs_t();

  TablePtr et = table_for(BasisFamily::extended, r, Ne, level, cfg.beta_degree);
  TablePtr ft_small = table_for(BasisFamily::fock, r, Ne, level);
  TablePtr ht = table_for(BasisFamily::hermite, r, Nh, level);
  const Basis& eb = et->basis();
  const Basis& hb = ht->basis();

  Worst lap_closed, hw_closed, hw_example, pvd, ch_fock, ch_sections, l2_vs_ch,
      lap_const, lap_ortho, flat_comm, flat_mixed, flat_fock, hw_flat, skew_h, skew_f;

  for (const auto& tau : cfg.taus) {
    const FrameSet fs = build_frames(tau, level, cartan);
    const Variations var = build_variations(tau, level, cartan);

    // generic Laplacian assembly against the displayed second-order form
    {
      SpMat generic_tau = laplacian_extended(*et, fs, var.GC_tau);
      SpMat generic_taubar = laplacian_extended(*et, fs, var.GC_taubar);
      SpMat closed_tau(eb.size(), eb.size()), closed_taubar(eb.size(), eb.size());
      for (int j = 0; j < r; ++j) {
        SpMat L = nabla_z(*et, j) + kI * nabla_z(*et, j + r);
        SpMat Lb = nabla_z(*et, j) - kI * nabla_z(*et, j + r);
        closed_tau = closed_tau + SpMat(L * L);
        closed_taubar = closed_taubar + SpMat(Lb * Lb);
      }
      closed_tau = (-kI * tt / (tau.tau2 * at)) * closed_tau;
      closed_taubar = (-kI * std::conj(tt) / (tau.tau2 * at)) * closed_taubar;
      lap_closed.track(block_residual(eb, generic_tau, closed_tau, 2));
      lap_closed.track(block_residual(eb, generic_taubar, closed_taubar, 2));

      // constants map into the antiholomorphic part only
      CVec image = CMat(generic_tau).col(0);
      double res = 0.0;
      for (int i = 0; i < eb.size(); ++i) {
        const auto& e = eb.set.exponents(i);
        bool holo = true;
        for (int l = 0; l < 2 * r; ++l)
          if (e[2 * r + l] != 0) holo = false;
        if (holo) res = std::max(res, std::abs(image(i)));
      }
      lap_const.track(res);

      // orthogonality to holomorphic sections under the gaussian pairing
      for (int trial = 0; trial < 5; ++trial) {
        Section phi = Section::zero(et->basis_ptr(), tau, level);
        Section phi2 = Section::zero(et->basis_ptr(), tau, level);
        std::vector<int> mapix = fock_into_extended(eb, ft_small->basis());
        CVec cf = detail::random_section_coeffs(rng, ft_small->basis(), Ne - 2);
        CVec cf2 = detail::random_section_coeffs(rng, ft_small->basis(), Ne - 2);
        for (int i = 0; i < ft_small->basis().size(); ++i) {
          phi.coeffs(mapix[i]) = cf(i);
          phi2.coeffs(mapix[i]) = cf2(i);
        }
        Section lap_phi = phi;
        lap_phi.coeffs = generic_tau * phi.coeffs;
        cd pairing = inner_product(lap_phi, phi2);
        double scale = std::sqrt(std::abs(inner_product(phi, phi).real()) *
                                 std::abs(inner_product(phi2, phi2).real()));
        lap_ortho.track(std::abs(pairing) / std::max(1.0, scale));
      }
    }

    // closed HW potential against the slice-derivative assembly
    {
      for (TauDir dir : {TauDir::d_tau, TauDir::d_tau_bar}) {
        SpMat closed = hw_potential(*ht, tau, dir);
        SpMat assembled = hw_potential_assembled(*ht, tau, level, cartan, dir);
        hw_closed.track(block_residual(hb, assembled, closed, 2));
        // transport term assembled from the frame variations
        SpMat w_closed = transport_generator(*ht, ConnectionKind::hitchin_witten, tau, dir);
        SpMat w_assembled = hw_transport_term_assembled(*ht, tau, level, cartan, dir) + closed;
        pvd.track(block_residual(hb, w_assembled, w_closed, 2));
      }
    }

    // the full holomorphic-side covariant derivative preserves holomorphicity
    {
      for (TauDir dir : {TauDir::d_tau, TauDir::d_tau_bar}) {
        SpMat gen = ch_extended_generator(*et, tau, level, cartan, dir);
        ch_fock.track(fock_column_residual(eb, CMat(gen), 2));
        CMat block = fock_block(eb, ft_small->basis(), gen);
        CMat direct = CMat(transport_generator(*ft_small, ConnectionKind::l2, tau, dir));
        l2_vs_ch.track(block_residual(ft_small->basis(), SpMat(block.sparseView()),
                                      SpMat(direct.sparseView()), 2));
        // random holomorphic sections stay holomorphic
        std::vector<int> mapix = fock_into_extended(eb, ft_small->basis());
        for (int trial = 0; trial < 50; ++trial) {
          CVec cf = detail::random_section_coeffs(rng, ft_small->basis(), Ne - 2);
          CVec ext = CVec::Zero(eb.size());
          for (int i = 0; i < ft_small->basis().size(); ++i) ext(mapix[i]) = cf(i);
          CVec image = gen * ext;
          double bad = 0.0;
          for (int i = 0; i < eb.size(); ++i) {
            const auto& e = eb.set.exponents(i);
            for (int l = 0; l < 2 * r; ++l)
              if (e[2 * r + l] != 0) { bad = std::max(bad, std::abs(image(i))); break; }
          }
          ch_sections.track(bad / std::max(1.0, image.cwiseAbs().maxCoeff()));
        }
      }
    }

    // flatness pieces at the symbol level
    {
      auto gc_symbol = [&](const TeichmullerPoint& at_tau, TauDir dir) {
        Variations v = build_variations(at_tau, level, cartan);
        Mat om = build_structures(at_tau, level, cartan).omega_t;
        return laplacian_weyl(om, dir == TauDir::d_tau ? v.GC_tau : v.GC_taubar);
      };
      auto gt_symbol = [&](const TeichmullerPoint& at_tau, TauDir dir) {
        Variations v = build_variations(at_tau, level, cartan);
        Mat om = build_structures(at_tau, level, cartan).omega_t;
        return laplacian_weyl(om, dir == TauDir::d_tau ? v.Gt_tau : v.Gt_taubar);
      };
      WeylOp lap_tau = gc_symbol(tau, TauDir::d_tau);
      WeylOp lap_taubar = gc_symbol(tau, TauDir::d_tau_bar);
      double scale = std::max(1.0, lap_tau.max_abs_coeff() * lap_taubar.max_abs_coeff());
      flat_comm.track(lap_tau.commutator(lap_taubar).max_abs_coeff() / scale);

      const double h = 1e-5;
      auto fam_tau = [&](const TeichmullerPoint& p) { return gt_symbol(p, TauDir::d_tau); };
      auto fam_taubar = [&](const TeichmullerPoint& p) {
        return gt_symbol(p, TauDir::d_tau_bar);
      };
      WeylOp mixed = symbol_wirtinger_fd(fam_tau, tau, TauDir::d_tau_bar, h) -
                     symbol_wirtinger_fd(fam_taubar, tau, TauDir::d_tau, h);
      flat_mixed.track(mixed.max_abs_coeff() /
                       std::max(1.0, gt_symbol(tau, TauDir::d_tau).max_abs_coeff()));

      // mixed-derivative defect of the holomorphic-part family annihilates
      // holomorphic sections (together with the vanishing commutator this is
      // the curvature on the quantum subbundle)
      auto fam_gc_tau = [&](const TeichmullerPoint& p) { return gc_symbol(p, TauDir::d_tau); };
      auto fam_gc_taubar = [&](const TeichmullerPoint& p) {
        return gc_symbol(p, TauDir::d_tau_bar);
      };
      WeylOp defect = symbol_wirtinger_fd(fam_gc_tau, tau, TauDir::d_tau_bar, h) -
                      symbol_wirtinger_fd(fam_gc_taubar, tau, TauDir::d_tau, h);
      SpMat defect_ext = weyl_to_extended(defect, *et, fs);
      flat_fock.track(fock_column_residual(eb, CMat(defect_ext), 2) /
                      std::max(1.0, lap_tau.max_abs_coeff()));

      // full curvature of the real-polarised connection at the symbol level
      auto hw_theta = [&](const TeichmullerPoint& p, TauDir dir) {
        Variations v = build_variations(p, level, cartan);
        Mat om = static_cast<double>(level.k) * omega_A0(r);
        if (dir == TauDir::d_tau)
          return laplacian_weyl(om, v.G_A0_tau) * (cd(0.5) / tt);
        return laplacian_weyl(om, v.G_A0_taubar) * (cd(-0.5) / std::conj(tt));
      };
      auto fam_hw_tau = [&](const TeichmullerPoint& p) { return hw_theta(p, TauDir::d_tau); };
      auto fam_hw_taubar = [&](const TeichmullerPoint& p) {
        return hw_theta(p, TauDir::d_tau_bar);
      };
      WeylOp curv = symbol_wirtinger_fd(fam_hw_taubar, tau, TauDir::d_tau, h) -
                    symbol_wirtinger_fd(fam_hw_tau, tau, TauDir::d_tau_bar, h) +
                    hw_theta(tau, TauDir::d_tau).commutator(hw_theta(tau, TauDir::d_tau_bar));
      hw_flat.track(curv.max_abs_coeff() /
                    std::max(1.0, hw_theta(tau, TauDir::d_tau).max_abs_coeff()));
    }

    // skew-adjointness of the potentials along real directions
    {
      CMat u_tau = CMat(hw_potential(*ht, tau, TauDir::d_tau));
      CMat u_taubar = CMat(hw_potential(*ht, tau, TauDir::d_tau_bar));
      skew_h.track(rel_fro(u_tau.adjoint(), CMat(-u_taubar)));
      CMat v_tau = CMat(transport_generator(*ft_small, ConnectionKind::l2, tau, TauDir::d_tau));
      CMat v_taubar =
          CMat(transport_generator(*ft_small, ConnectionKind::l2, tau, TauDir::d_tau_bar));
      skew_f.track(rel_fro(fock_adjoint(ft_small->basis(), level, v_tau), CMat(-v_taubar)));
    }
  }

  // square-torus example at real level: the displayed quadratic form
  {
    CartanData a1 = CartanData::a1();
    Level lk(2, 0.0);
    TablePtr h1 = table_for(BasisFamily::hermite, 1, cfg.degree, lk);
    TeichmullerPoint taui(0.0, 1.0);
    SpMat M = md_operator(*h1, 0, MdKind::M);
    SpMat D = md_operator(*h1, 0, MdKind::D);
    SpMat want = (kI / 8.0) * (SpMat(D * D) - 2.0 * SpMat(M * D) + SpMat(M * M));
    hw_example.track(rel_fro(hw_potential(*h1, taui, TauDir::d_tau), want));
  }

  const double tol = cfg.tol.matrix;
  CheckList out;
  out.push_back(make_check("connections.laplacian_assembly", "laplacian/generic-vs-displayed",
                           lap_closed.value, tol));
  out.push_back(make_check("connections.laplacian_constant", "laplacian/constants",
                           lap_const.value, tol));
  out.push_back(make_check("connections.laplacian_orthogonality",
                           "laplacian/holomorphic-orthogonality", lap_ortho.value, 1e-9));
  out.push_back(make_check("connections.hw_assembly", "hitchin-witten/assembly-vs-displayed",
                           hw_closed.value, tol));
  out.push_back(make_check("connections.hw_square_torus", "hitchin-witten/square-torus",
                           hw_example.value, tol));
  out.push_back(make_check("connections.polarised_transport_term",
                           "hitchin-witten/polarised-transport", pvd.value, tol));
  out.push_back(make_check("connections.holomorphicity_potential",
                           "complexified/potential-preserves-fock", ch_fock.value, tol));
  out.push_back(make_check("connections.holomorphicity_sections",
                           "complexified/sections-stay-holomorphic", ch_sections.value, 1e-9));
  out.push_back(make_check("connections.l2_equals_complexified", "l2/equals-complexified",
                           l2_vs_ch.value, tol));
  out.push_back(make_check("connections.flatness_commutator", "flatness/commutator",
                           flat_comm.value, tol));
  out.push_back(make_check("connections.flatness_mixed_derivatives",
                           "flatness/mixed-derivatives", flat_mixed.value, cfg.tol.fd));
  out.push_back(make_check("connections.flatness_on_holomorphic",
                           "flatness/on-holomorphic-sections", flat_fock.value, cfg.tol.fd));
  out.push_back(make_check("connections.hw_flatness", "flatness/real-polarised",
                           hw_flat.value, cfg.tol.fd));
  out.push_back(make_check("connections.potential_skew_hermite", "duals/skew-adjoint-real",
                           skew_h.value, tol));
  out.push_back(make_check("connections.potential_skew_fock", "duals/skew-adjoint-holomorphic",
                           skew_f.value, tol));
  return out;
}

}  // namespace cslab
