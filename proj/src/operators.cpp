#include "cslab/operators.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "cslab/errors.hpp"

namespace cslab {

namespace {
const cd kI{0.0, 1.0};
}

OperatorTable::OperatorTable(BasisPtr basis, const Level& level)
    : basis_(std::move(basis)), level_(level) {
  const Basis& b = *basis_;
  const int n = 2 * b.rank;
  if (b.family == BasisFamily::hermite) {
    for (int j = 0; j < n; ++j) {
      q_.push_back(op_mult_q(b, j, level_));
      dq_.push_back(op_diff_q(b, j, level_));
    }
  } else {
    for (int j = 0; j < n; ++j) {
      z_.push_back(op_mult_z(b, j));
      dz_.push_back(op_diff_z(b, j));
    }
    if (b.family == BasisFamily::extended) {
      for (int j = 0; j < n; ++j) {
        zb_.push_back(op_mult_zbar(b, j));
        dzb_.push_back(op_diff_zbar(b, j));
      }
    }
  }
}

namespace {
const SpMat& pick(const std::vector<SpMat>& v, int j, const char* what) {
  if (j < 0 || j >= static_cast<int>(v.size())) fail(ErrorCode::BasisMismatch, what);
  return v[static_cast<std::size_t>(j)];
}
}  // namespace

const SpMat& OperatorTable::Q(int j) const { return pick(q_, j, "q operator unavailable"); }
const SpMat& OperatorTable::Dq(int j) const { return pick(dq_, j, "dq operator unavailable"); }
const SpMat& OperatorTable::Z(int j) const { return pick(z_, j, "z operator unavailable"); }
const SpMat& OperatorTable::Dz(int j) const { return pick(dz_, j, "dz operator unavailable"); }
const SpMat& OperatorTable::Zb(int j) const { return pick(zb_, j, "zbar operator unavailable"); }
const SpMat& OperatorTable::Dzb(int j) const {
  return pick(dzb_, j, "dzbar operator unavailable");
}

TablePtr table_for(BasisFamily family, int rank, int degree, const Level& level,
                   int beta_degree) {
  using Key = std::tuple<int, int, int, int, int, double>;
  static std::map<Key, TablePtr> cache;
  static std::shared_mutex mutex;
  Key key{static_cast<int>(family), rank, degree,
          family == BasisFamily::extended ? beta_degree : 0, level.k, level.s};
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = std::make_shared<OperatorTable>(make_basis(family, rank, degree, beta_degree),
                                               level);
  std::unique_lock lock(mutex);
  auto [it, inserted] = cache.emplace(key, table);
  return it->second;
}

SpMat ladder(const OperatorTable& t, int j, LadderKind kind) {
  const double h = t.level().hbar();
  if (kind == LadderKind::create) return t.Z(j);
  return SpMat(2.0 * h * t.Dz(j));
}

SpMat md_operator(const OperatorTable& t, int j, MdKind kind) {
  const int r = t.basis().rank;
  if (j < 0 || j >= r) fail(ErrorCode::InvalidArgument, "md operator index");
  const double h = t.level().hbar();
  switch (kind) {
    case MdKind::M: return t.Q(j) + kI * t.Q(j + r);
    case MdKind::Mbar: return t.Q(j) - kI * t.Q(j + r);
    case MdKind::D: return h * (t.Dq(j) + kI * t.Dq(j + r));
    case MdKind::Dbar: return h * (t.Dq(j) - kI * t.Dq(j + r));
  }
  fail(ErrorCode::InvalidArgument, "md kind");
}

SpMat mudelta_operator(const OperatorTable& t, int j, MuDeltaKind kind) {
  const int r = t.basis().rank;
  if (j < 0 || j >= r) fail(ErrorCode::InvalidArgument, "mudelta operator index");
  const double h = t.level().hbar();
  switch (kind) {
    case MuDeltaKind::mu: return t.Z(j) + kI * t.Z(j + r);
    case MuDeltaKind::mubar: return t.Z(j) - kI * t.Z(j + r);
    case MuDeltaKind::delta: return 2.0 * h * (t.Dz(j) + kI * t.Dz(j + r));
    case MuDeltaKind::deltabar: return 2.0 * h * (t.Dz(j) - kI * t.Dz(j + r));
  }
  fail(ErrorCode::InvalidArgument, "mudelta kind");
}

SpMat nabla_z(const OperatorTable& t, int j) {
  const double h = t.level().hbar();
  return t.Dz(j) - (1.0 / (2.0 * h)) * t.Zb(j);
}

SpMat nabla_zbar(const OperatorTable& t, int j) { return t.Dzb(j); }

SpMat prequantum_extended(const OperatorTable& t, const FrameSet& fs, const CVec& dir_uv) {
  const Basis& b = t.basis();
  const int n = 2 * b.rank;
  if (dir_uv.size() != 4 * b.rank) fail(ErrorCode::DimensionMismatch, "direction dimension");
  // frame coordinates of the direction, then z / zbar components:
  //   d_p = d_z + d_zbar ,  d_q = i (d_z - d_zbar)
  CVec c = fs.coords.cast<cd>() * dir_uv;
  SpMat op(b.size(), b.size());
  for (int j = 0; j < n; ++j) {
    cd zeta = c(j) + kI * c(j + n);   // coefficient of d/dz_j
    cd xi = c(j) - kI * c(j + n);     // coefficient of d/dzbar_j
    if (zeta != cd(0.0)) op = op + zeta * nabla_z(t, j);
    if (xi != cd(0.0)) op = op + xi * nabla_zbar(t, j);
  }
  return op;
}

Mat slice_embedding(const FrameSet& fs) {
  const int n = 2 * fs.rank;
  // q(x) = Cq_u u for x = (u, 0); invert to parametrise by q
  Mat cq_u = fs.coords.bottomRows(n).leftCols(n);
  Eigen::FullPivLU<Mat> lu(cq_u);
  if (!lu.isInvertible()) fail(ErrorCode::SingularFrame, "slice chart degenerate");
  Mat m = Mat::Zero(4 * fs.rank, n);
  m.topRows(n) = lu.inverse();
  return m;
}

SpMat nabla_slice(const OperatorTable& t, const TeichmullerPoint& tau, const Level& level,
                  const CartanData& cartan, const CVec& dir_u) {
  const Basis& b = t.basis();
  if (b.family != BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "slice derivative needs the hermite basis");
  const int r = b.rank;
  const int n = 2 * r;
  if (dir_u.size() != n) fail(ErrorCode::DimensionMismatch, "slice direction dimension");

  const FrameSet fs = build_frames(tau, level, cartan);
  const StructureTensors st = build_structures(tau, level, cartan);
  CVec dir4 = CVec::Zero(4 * r);
  dir4.head(n) = dir_u;

  CVec c = fs.coords.cast<cd>() * dir4;
  CVec cp = c.head(n), cq = c.tail(n);

  // p_l as multiplication operators on the slice: p(q) = Apq q
  Mat embed = slice_embedding(fs);
  Mat apq = fs.coords.topRows(n) * embed;
  std::vector<SpMat> pmul;
  pmul.reserve(n);
  for (int l = 0; l < n; ++l) {
    SpMat m(b.size(), b.size());
    for (int mcol = 0; mcol < n; ++mcol)
      if (apq(l, mcol) != 0.0) m = m + cd(apq(l, mcol)) * t.Q(mcol);
    pmul.push_back(std::move(m));
  }

  SpMat op(b.size(), b.size());
  // derivative part: polarised functions only see the q components
  for (int l = 0; l < n; ++l)
    if (cq(l) != cd(0.0)) op = op + cq(l) * t.Dq(l);
  // X[log rho] = -(i/(2 hbar)) X[p.q]
  const cd fac = -kI / (2.0 * level.hbar());
  for (int l = 0; l < n; ++l) {
    if (cp(l) != cd(0.0)) op = op + fac * cp(l) * t.Q(l);
    if (cq(l) != cd(0.0)) op = op + fac * cq(l) * pmul[l];
  }
  // -(i/2) omega_t(A, X) with A = embed q
  CVec w = embed.transpose().cast<cd>() * (st.omega_t.cast<cd>() * dir4);
  for (int l = 0; l < n; ++l)
    if (w(l) != cd(0.0)) op = op + (-kI * 0.5) * w(l) * t.Q(l);
  return op;
}

SpMat laplacian_extended(const OperatorTable& t, const FrameSet& fs, const CMat& G_uv) {
  const Basis& b = t.basis();
  if (b.family != BasisFamily::extended)
    fail(ErrorCode::BasisMismatch, "model laplacian needs the extended basis");
  const int dim = 4 * b.rank;
  if (G_uv.rows() != dim || G_uv.cols() != dim)
    fail(ErrorCode::DimensionMismatch, "tensor dimension");
  std::vector<SpMat> nabla;
  nabla.reserve(dim);
  for (int a = 0; a < dim; ++a) {
    CVec dir = CVec::Zero(dim);
    dir(a) = 1.0;
    nabla.push_back(prequantum_extended(t, fs, dir));
  }
  SpMat out(b.size(), b.size());
  for (int a = 0; a < dim; ++a)
    for (int c = 0; c < dim; ++c) {
      if (G_uv(a, c) == cd(0.0)) continue;
      out = out + G_uv(a, c) * SpMat(nabla[a] * nabla[c]);
    }
  return out;
}

SpMat laplacian_slice(const OperatorTable& t, const TeichmullerPoint& tau,
                      const Level& level, const CartanData& cartan, const CMat& G_u) {
  const Basis& b = t.basis();
  const int n = 2 * b.rank;
  if (G_u.rows() != n || G_u.cols() != n) fail(ErrorCode::DimensionMismatch, "tensor dimension");
  std::vector<SpMat> nabla;
  nabla.reserve(n);
  for (int a = 0; a < n; ++a) {
    CVec dir = CVec::Zero(n);
    dir(a) = 1.0;
    nabla.push_back(nabla_slice(t, tau, level, cartan, dir));
  }
  SpMat out(b.size(), b.size());
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) {
      if (G_u(a, c) == cd(0.0)) continue;
      out = out + G_u(a, c) * SpMat(nabla[a] * nabla[c]);
    }
  return out;
}

namespace {

SpMat rotation_term_hermite(const OperatorTable& t) {
  const int r = t.basis().rank;
  SpMat out(t.basis().size(), t.basis().size());
  for (int j = 0; j < r; ++j)
    out = out + SpMat(t.Q(j + r) * t.Dq(j)) - SpMat(t.Q(j) * t.Dq(j + r));
  return out;
}

SpMat rotation_term_fock(const OperatorTable& t) {
  const int r = t.basis().rank;
  SpMat out(t.basis().size(), t.basis().size());
  for (int j = 0; j < r; ++j)
    out = out + SpMat(t.Z(j + r) * t.Dz(j)) - SpMat(t.Z(j) * t.Dz(j + r));
  return out;
}

}  // namespace

SpMat hw_potential(const OperatorTable& t, const TeichmullerPoint& tau, TauDir dir) {
  const Basis& b = t.basis();
  if (b.family != BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "HW potential lives on the hermite basis");
  const cd tt = t.level().t();
  const double at = t.level().abs_t();
  SpMat out(b.size(), b.size());
  if (dir == TauDir::d_tau) {
    const cd pref = kI * tt / (8.0 * std::conj(tt) * tau.tau2);
    for (int j = 0; j < b.rank; ++j) {
      SpMat M = md_operator(t, j, MdKind::M);
      SpMat D = md_operator(t, j, MdKind::D);
      out = out + pref * (std::conj(tt) * SpMat(D * D) - 2.0 * at * SpMat(M * D) +
                          std::conj(tt) * SpMat(M * M));
    }
  } else {
    // mirror formula; the cross term enters with the opposite sign
    const cd pref = kI * std::conj(tt) / (8.0 * tt * tau.tau2);
    for (int j = 0; j < b.rank; ++j) {
      SpMat M = md_operator(t, j, MdKind::Mbar);
      SpMat D = md_operator(t, j, MdKind::Dbar);
      out = out + pref * (tt * SpMat(D * D) + 2.0 * at * SpMat(M * D) + tt * SpMat(M * M));
    }
  }
  return out;
}

SpMat hw_potential_assembled(const OperatorTable& t, const TeichmullerPoint& tau,
                             const Level& level, const CartanData& cartan, TauDir dir) {
  const Basis& b = t.basis();
  const int r = b.rank;
  const int n = 2 * r;
  const FrameSet fs = build_frames(tau, level, cartan);
  const Variations var = build_variations(tau, level, cartan);
  const cd tt = level.t();

  SpMat second(b.size(), b.size());
  for (int j = 0; j < r; ++j) {
    CVec x = fs.script_X.col(j).head(n);
    if (dir == TauDir::d_tau) x = x.conjugate();
    SpMat nab = nabla_slice(t, tau, level, cartan, x);
    second = second + SpMat(nab * nab);
  }
  const cd pref = (dir == TauDir::d_tau) ? -kI / (2.0 * tt * tau.tau2)
                                         : -kI / (2.0 * std::conj(tt) * tau.tau2);
  SpMat out = pref * second;

  // variation of the polarised frame phase: rho restricted to the slice is
  // exp(-(i s / 4) g_tau(A, A))
  Mat embed = slice_embedding(fs);
  const CMat dg = (dir == TauDir::d_tau) ? var.dg_A0_tau : var.dg_A0_taubar;
  CMat quad = embed.topRows(n).transpose().cast<cd>() * dg * embed.topRows(n).cast<cd>();
  const cd fac = -kI * level.s / 4.0;
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) {
      if (quad(l, m) == cd(0.0)) continue;
      out = out + fac * quad(l, m) * SpMat(t.Q(l) * t.Q(m));
    }
  return out;
}

SpMat transport_generator(const OperatorTable& t, ConnectionKind kind,
                          const TeichmullerPoint& tau, TauDir dir) {
  const Basis& b = t.basis();
  const cd tt = t.level().t();
  const double t2 = tau.tau2;
  if (kind == ConnectionKind::hitchin_witten) {
    if (b.family != BasisFamily::hermite)
      fail(ErrorCode::BasisMismatch, "HW transport lives on the hermite basis");
    SpMat out = (-1.0 / (4.0 * t2)) * rotation_term_hermite(t);
    const cd pref = (dir == TauDir::d_tau) ? kI * tt / (8.0 * t2)
                                           : kI * std::conj(tt) / (8.0 * t2);
    for (int j = 0; j < b.rank; ++j) {
      SpMat M = md_operator(t, j, dir == TauDir::d_tau ? MdKind::M : MdKind::Mbar);
      SpMat D = md_operator(t, j, dir == TauDir::d_tau ? MdKind::D : MdKind::Dbar);
      out = out + pref * (SpMat(D * D) + SpMat(M * M));
    }
    return out;
  }
  // complexified Hitchin = L^2 on holomorphic families
  if (b.family != BasisFamily::fock)
    fail(ErrorCode::BasisMismatch, "holomorphic transport lives on the fock basis");
  SpMat out = (-1.0 / (4.0 * t2)) * rotation_term_fock(t);
  const cd pref = (dir == TauDir::d_tau) ? -kI * tt / (16.0 * t2)
                                         : -kI * std::conj(tt) / (16.0 * t2);
  for (int j = 0; j < b.rank; ++j) {
    SpMat mu = mudelta_operator(t, j, dir == TauDir::d_tau ? MuDeltaKind::mu : MuDeltaKind::mubar);
    SpMat de =
        mudelta_operator(t, j, dir == TauDir::d_tau ? MuDeltaKind::delta : MuDeltaKind::deltabar);
    out = out + pref * (SpMat(de * de) + SpMat(mu * mu));
  }
  return out;
}

SpMat hw_transport_term_assembled(const OperatorTable& t, const TeichmullerPoint& tau,
                                  const Level& level, const CartanData& cartan,
                                  TauDir dir) {
  const Basis& b = t.basis();
  const int n = 2 * b.rank;
  const FrameSet fs = build_frames(tau, level, cartan);
  const Variations var = build_variations(tau, level, cartan);
  const CMat& R = (dir == TauDir::d_tau) ? var.R_tau : var.R_taubar;
  Mat embed = slice_embedding(fs);
  // dq_l/dtau restricted to the slice, as a linear function of q
  CMat apq_full = fs.coords.cast<cd>() * embed.cast<cd>();  // (p(q); q) rows
  CMat beta = R.bottomRows(n) * apq_full;                   // 2r x 2r
  SpMat out(b.size(), b.size());
  for (int l = 0; l < n; ++l)
    for (int m = 0; m < n; ++m) {
      if (beta(l, m) == cd(0.0)) continue;
      out = out + beta(l, m) * SpMat(t.Q(m) * t.Dq(l));
    }
  return out;
}

SpMat ch_extended_generator(const OperatorTable& t, const TeichmullerPoint& tau,
                            const Level& level, const CartanData& cartan, TauDir dir) {
  const Basis& b = t.basis();
  if (b.family != BasisFamily::extended)
    fail(ErrorCode::BasisMismatch, "full CH derivative lives on the extended basis");
  const int r = b.rank;
  const int n = 2 * r;
  const double h = level.hbar();
  const cd tt = level.t();
  const FrameSet fs = build_frames(tau, level, cartan);
  const Variations var = build_variations(tau, level, cartan);

  // potential: -(i / (4 tau2 conj(t))) sum_j L_j^2  (and the mirror)
  SpMat out(b.size(), b.size());
  const cd pref = (dir == TauDir::d_tau) ? -kI / (4.0 * tau.tau2 * std::conj(tt))
                                         : -kI / (4.0 * tau.tau2 * tt);
  const cd sgn = (dir == TauDir::d_tau) ? kI : -kI;
  for (int j = 0; j < r; ++j) {
    SpMat L = nabla_z(t, j) + sgn * nabla_z(t, j + r);
    out = out + pref * SpMat(L * L);
  }

  // coordinate-variation term
  const CMat& ZA = (dir == TauDir::d_tau) ? var.Zt_A : var.Ztb_A;
  const CMat& ZB = (dir == TauDir::d_tau) ? var.Zt_B : var.Ztb_B;
  const CMat& ZbA = (dir == TauDir::d_tau) ? var.Zbt_A : var.Zbtb_A;
  const CMat& ZbB = (dir == TauDir::d_tau) ? var.Zbt_B : var.Zbtb_B;
  std::vector<SpMat> zdot, zbdot;
  for (int j = 0; j < n; ++j) {
    SpMat zj(b.size(), b.size()), zbj(b.size(), b.size());
    for (int l = 0; l < n; ++l) {
      if (ZA(j, l) != cd(0.0)) zj = zj + ZA(j, l) * t.Z(l);
      if (ZB(j, l) != cd(0.0)) zj = zj + ZB(j, l) * t.Zb(l);
      if (ZbA(j, l) != cd(0.0)) zbj = zbj + ZbA(j, l) * t.Z(l);
      if (ZbB(j, l) != cd(0.0)) zbj = zbj + ZbB(j, l) * t.Zb(l);
    }
    zdot.push_back(std::move(zj));
    zbdot.push_back(std::move(zbj));
  }
  for (int j = 0; j < n; ++j) {
    out = out + SpMat(zdot[j] * t.Dz(j)) + SpMat(zbdot[j] * t.Dzb(j));
    // variation of the frame weight: -(1/4h) (zdot_j zbar_j + zbdot_j z_j)
    out = out - (1.0 / (4.0 * h)) * (SpMat(zdot[j] * t.Zb(j)) + SpMat(zbdot[j] * t.Z(j)));
  }
  return out;
}

CMat TransportFamily::at(const TeichmullerPoint& tau, TauDir dir) const {
  std::vector<cd> c = coeffs(tau, dir);
  CMat out = CMat::Zero(parts.front().rows(), parts.front().cols());
  for (std::size_t i = 0; i < parts.size(); ++i) out += c[i] * parts[i];
  return out;
}

TransportFamily make_transport_family(const OperatorTable& t, ConnectionKind kind) {
  TransportFamily fam;
  const cd tt = t.level().t();
  const Basis& b = t.basis();
  if (kind == ConnectionKind::hitchin_witten) {
    if (b.family != BasisFamily::hermite)
      fail(ErrorCode::BasisMismatch, "HW transport lives on the hermite basis");
    SpMat rot = rotation_term_hermite(t);
    SpMat s(b.size(), b.size()), sbar(b.size(), b.size());
    for (int j = 0; j < b.rank; ++j) {
      SpMat M = md_operator(t, j, MdKind::M), D = md_operator(t, j, MdKind::D);
      SpMat Mb = md_operator(t, j, MdKind::Mbar), Db = md_operator(t, j, MdKind::Dbar);
      s = s + SpMat(D * D) + SpMat(M * M);
      sbar = sbar + SpMat(Db * Db) + SpMat(Mb * Mb);
    }
    fam.parts = {CMat(rot), CMat(s), CMat(sbar)};
    fam.coeffs = [tt](const TeichmullerPoint& tau, TauDir dir) {
      if (dir == TauDir::d_tau)
        return std::vector<cd>{-1.0 / (4.0 * tau.tau2), kI * tt / (8.0 * tau.tau2), 0.0};
      return std::vector<cd>{-1.0 / (4.0 * tau.tau2), 0.0,
                             kI * std::conj(tt) / (8.0 * tau.tau2)};
    };
    return fam;
  }
  if (b.family != BasisFamily::fock)
    fail(ErrorCode::BasisMismatch, "holomorphic transport lives on the fock basis");
  SpMat rot = rotation_term_fock(t);
  SpMat s(b.size(), b.size()), sbar(b.size(), b.size());
  for (int j = 0; j < b.rank; ++j) {
    SpMat mu = mudelta_operator(t, j, MuDeltaKind::mu);
    SpMat de = mudelta_operator(t, j, MuDeltaKind::delta);
    SpMat mub = mudelta_operator(t, j, MuDeltaKind::mubar);
    SpMat deb = mudelta_operator(t, j, MuDeltaKind::deltabar);
    s = s + SpMat(de * de) + SpMat(mu * mu);
    sbar = sbar + SpMat(deb * deb) + SpMat(mub * mub);
  }
  fam.parts = {CMat(rot), CMat(s), CMat(sbar)};
  fam.coeffs = [tt](const TeichmullerPoint& tau, TauDir dir) {
    if (dir == TauDir::d_tau)
      return std::vector<cd>{-1.0 / (4.0 * tau.tau2), -kI * tt / (16.0 * tau.tau2), 0.0};
    return std::vector<cd>{-1.0 / (4.0 * tau.tau2), 0.0,
                           -kI * std::conj(tt) / (16.0 * tau.tau2)};
  };
  return fam;
}

std::vector<int> fock_into_extended(const Basis& ext, const Basis& fock) {
  if (ext.family != BasisFamily::extended || fock.family != BasisFamily::fock ||
      ext.rank != fock.rank || ext.degree < fock.degree)
    fail(ErrorCode::BasisMismatch, "incompatible extended/fock pair");
  const int n = 2 * ext.rank;
  std::vector<int> map(fock.size(), -1);
  for (int i = 0; i < fock.size(); ++i) {
    std::vector<int> e = fock.set.exponents(i);
    e.resize(2 * n, 0);
    map[i] = ext.set.find(e);
    if (map[i] < 0) fail(ErrorCode::BasisMismatch, "fock index missing from extension");
  }
  return map;
}

double antiholomorphic_residual(const Basis& ext, const SpMat& op) {
  const int n = 2 * ext.rank;
  double res = 0.0;
  for (int col = 0; col < op.outerSize(); ++col) {
    const auto& ecol = ext.set.exponents(col);
    bool col_holo = true;
    for (int l = 0; l < n; ++l)
      if (ecol[n + l] != 0) { col_holo = false; break; }
    if (!col_holo) continue;
    for (SpMat::InnerIterator it(op, col); it; ++it) {
      const auto& erow = ext.set.exponents(static_cast<int>(it.row()));
      for (int l = 0; l < n; ++l)
        if (erow[n + l] != 0) {
          res = std::max(res, std::abs(it.value()));
          break;
        }
    }
  }
  return res;
}

CMat fock_block(const Basis& ext, const Basis& fock, const SpMat& op) {
  std::vector<int> map = fock_into_extended(ext, fock);
  CMat dense(op);
  CMat out(fock.size(), fock.size());
  for (int i = 0; i < fock.size(); ++i)
    for (int j = 0; j < fock.size(); ++j) out(i, j) = dense(map[i], map[j]);
  return out;
}

}  // namespace cslab
