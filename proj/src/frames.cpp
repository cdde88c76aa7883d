#include "cslab/frames.hpp"

#include <cmath>

#include "cslab/errors.hpp"

namespace cslab {

namespace {

const cd kI{0.0, 1.0};

// 2x2 star block on a (dx, dy) coefficient pair and its tau-derivatives.
Eigen::Matrix2d star2(double t1, double t2) {
  Eigen::Matrix2d s;
  s << t1 / t2, -1.0 / t2, (t1 * t1 + t2 * t2) / t2, -t1 / t2;
  return s;
}

Eigen::Matrix2d star2_d2(double t1, double t2) {
  Eigen::Matrix2d s;
  s << -t1 / (t2 * t2), 1.0 / (t2 * t2),
      1.0 - (t1 * t1) / (t2 * t2), t1 / (t2 * t2);
  return s;
}

Mat expand_pairs(const Eigen::Matrix2d& blk, int r) {
  // embed a 2x2 block acting on every (j, j+r) pair into a 2r x 2r matrix
  Mat m = Mat::Zero(2 * r, 2 * r);
  for (int j = 0; j < r; ++j) {
    m(j, j) = blk(0, 0);
    m(j, j + r) = blk(0, 1);
    m(j + r, j) = blk(1, 0);
    m(j + r, j + r) = blk(1, 1);
  }
  return m;
}

Mat omega0(int r) {
  Mat m = Mat::Zero(2 * r, 2 * r);
  for (int j = 0; j < r; ++j) {
    m(j, j + r) = 1.0;
    m(j + r, j) = -1.0;
  }
  return m;
}

struct StarDerivs {
  Mat S, S1, S2;  // star matrix and its tau1/tau2 derivatives, 2r x 2r
};

StarDerivs star_derivs(const TeichmullerPoint& tau, int r) {
  StarDerivs out;
  out.S = expand_pairs(star2(tau.tau1, tau.tau2), r);
  Eigen::Matrix2d d1;
  d1 << 1.0 / tau.tau2, 0.0, 2.0 * tau.tau1 / tau.tau2, -1.0 / tau.tau2;
  out.S1 = expand_pairs(d1, r);
  out.S2 = expand_pairs(star2_d2(tau.tau1, tau.tau2), r);
  return out;
}

Mat assemble_J(int r) {
  Mat j = Mat::Zero(4 * r, 4 * r);
  j.block(0, 2 * r, 2 * r, 2 * r) = -Mat::Identity(2 * r, 2 * r);
  j.block(2 * r, 0, 2 * r, 2 * r) = Mat::Identity(2 * r, 2 * r);
  return j;
}

Mat assemble_IC(const Mat& s) {
  const int n = static_cast<int>(s.rows());
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.block(0, 0, n, n) = s;
  m.block(n, n, n, n) = -s;
  return m;
}

Mat assemble_K(const Mat& s) {
  const int n = static_cast<int>(s.rows());
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.block(0, n, n, n) = -s;
  m.block(n, 0, n, n) = -s;
  return m;
}

}  // namespace

TeichmullerPoint::TeichmullerPoint(double t1, double t2) : tau1(t1), tau2(t2) {
  if (!(tau2 > 1e-9))
    fail(ErrorCode::InvalidArgument, "tau2 must exceed 1e-9");
}

Level::Level(int k_, double s_) : k(k_), s(s_) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "level k must be a positive integer");
}

Eigen::Vector2d hodge_star(const TeichmullerPoint& tau, const Eigen::Vector2d& form) {
  return star2(tau.tau1, tau.tau2) * form;
}

Mat hodge_star_matrix(const TeichmullerPoint& tau, int rank) {
  return expand_pairs(star2(tau.tau1, tau.tau2), rank);
}

CMat omega_complex(int rank) {
  const int n = 2 * rank;
  Mat o0 = omega0(rank);
  CMat m = CMat::Zero(2 * n, 2 * n);
  m.block(0, 0, n, n) = o0.cast<cd>();
  m.block(0, n, n, n) = kI * o0.cast<cd>();
  m.block(n, 0, n, n) = kI * o0.cast<cd>();
  m.block(n, n, n, n) = -o0.cast<cd>();
  return m;
}

StructureTensors build_structures(const TeichmullerPoint& tau, const Level& level,
                                  const CartanData& cartan) {
  cartan.validate();
  const int r = cartan.rank;
  const int n = 2 * r;
  StructureTensors st;
  st.rank = r;
  Mat s = hodge_star_matrix(tau, r);
  st.J = assemble_J(r);
  st.I_C = assemble_IC(s);
  st.K = assemble_K(s);
  const double kp = level.k / level.abs_t();
  const double sp = level.s / level.abs_t();
  st.I_t = kp * st.I_C + sp * st.K;

  Mat o0 = omega0(r);
  st.omega_t = Mat::Zero(4 * r, 4 * r);
  st.omega_t.block(0, 0, n, n) = level.k * o0;
  st.omega_t.block(0, n, n, n) = -level.s * o0;
  st.omega_t.block(n, 0, n, n) = -level.s * o0;
  st.omega_t.block(n, n, n, n) = -static_cast<double>(level.k) * o0;

  st.g_t = st.omega_t * st.I_t;
  return st;
}

FrameSet build_frames(const TeichmullerPoint& tau, const Level& level,
                      const CartanData& cartan) {
  const int r = cartan.rank;
  const StructureTensors st = build_structures(tau, level, cartan);
  const double c = 1.0 / std::sqrt(2.0 * tau.tau2);

  FrameSet fs;
  fs.rank = r;
  fs.frame = Mat::Zero(4 * r, 4 * r);
  for (int j = 0; j < r; ++j) {
    // X_j = T_j dzeta / sqrt(2 tau2): components along T_j dx, T_j dy, i T_j dy
    Vec x = Vec::Zero(4 * r);
    x(j) = c;
    x(j + r) = c * tau.tau1;
    x(2 * r + j + r) = c * tau.tau2;
    fs.frame.col(j) = x;
    fs.frame.col(j + r) = st.J * x;
  }
  for (int j = 0; j < 2 * r; ++j)
    fs.frame.col(2 * r + j) = st.I_t * fs.frame.col(j);

  Eigen::FullPivLU<Mat> lu(fs.frame);
  if (!lu.isInvertible() || lu.rcond() < 1e-12)
    fail(ErrorCode::SingularFrame, "frame matrix is numerically singular");
  fs.coords = lu.inverse();

  fs.script_X = CMat::Zero(4 * r, r);
  for (int j = 0; j < r; ++j) {
    fs.script_X(j, j) = c;
    fs.script_X(j + r, j) = c * tau.tau();
  }
  return fs;
}

CMat FrameSet::z_rows() const {
  const int n = 2 * rank;
  return coords.topRows(n).cast<cd>() + kI * coords.bottomRows(n).cast<cd>();
}

CMat FrameSet::zbar_rows() const {
  const int n = 2 * rank;
  return coords.topRows(n).cast<cd>() - kI * coords.bottomRows(n).cast<cd>();
}

Vec coords_pq(const FrameSet& fs, const Vec& x_uv) {
  if (x_uv.size() != fs.dim()) fail(ErrorCode::DimensionMismatch, "bad point dimension");
  return fs.coords * x_uv;
}

Vec coords_uv(const FrameSet& fs, const Vec& c_pq) {
  if (c_pq.size() != fs.dim()) fail(ErrorCode::DimensionMismatch, "bad coordinate dimension");
  return fs.frame * c_pq;
}

PolarisationProjectors project_PQ(const TeichmullerPoint& tau, const Level& level,
                                  const CartanData& cartan) {
  FrameSet fs = build_frames(tau, level, cartan);
  const int n = 2 * cartan.rank;
  const CMat frame_c = fs.frame.cast<cd>();
  const CMat coords_c = fs.coords.cast<cd>();
  PolarisationProjectors pr;
  pr.P = frame_c.leftCols(n) * coords_c.topRows(n);
  pr.Q = frame_c.rightCols(n) * coords_c.bottomRows(n);
  return pr;
}

Mat metric_full(const TeichmullerPoint& tau, int rank) {
  const int n = 2 * rank;
  Mat s = hodge_star_matrix(tau, rank);
  Mat g = Mat::Zero(4 * rank, 4 * rank);
  Mat blk = omega0(rank) * s;
  g.block(0, 0, n, n) = blk;
  g.block(n, n, n, n) = blk;
  return g;
}

Mat metric_A0(const TeichmullerPoint& tau, int rank) {
  return omega0(rank) * hodge_star_matrix(tau, rank);
}

Mat omega_A0(int rank) { return omega0(rank); }

Variations build_variations(const TeichmullerPoint& tau, const Level& level,
                            const CartanData& cartan) {
  const int r = cartan.rank;
  const int n = 2 * r;
  const double kp = level.k / level.abs_t();
  const double sp = level.s / level.abs_t();
  const StarDerivs sd = star_derivs(tau, r);
  const StructureTensors st = build_structures(tau, level, cartan);
  const FrameSet fs = build_frames(tau, level, cartan);

  Variations var;

  // frame derivatives: X_j depends on tau through 1/sqrt(2 tau2) and dzeta
  const double c = 1.0 / std::sqrt(2.0 * tau.tau2);
  Mat dX1 = Mat::Zero(4 * r, 2 * r), dX2 = Mat::Zero(4 * r, 2 * r);
  Mat j4 = assemble_J(r);
  for (int j = 0; j < r; ++j) {
    Vec x = fs.frame.col(j);
    Vec d1 = Vec::Zero(4 * r), d2 = Vec::Zero(4 * r);
    d1(j + r) = c;                     // d/dtau1: dy component
    d2(2 * r + j + r) = c;             // d/dtau2: i dy component
    d2 -= x / (2.0 * tau.tau2);        // derivative of the 1/sqrt(2 tau2) factor
    dX1.col(j) = d1;
    dX2.col(j) = d2;
    dX1.col(j + r) = j4 * d1;
    dX2.col(j + r) = j4 * d2;
  }
  Mat dIt1 = kp * assemble_IC(sd.S1) + sp * assemble_K(sd.S1);
  Mat dIt2 = kp * assemble_IC(sd.S2) + sp * assemble_K(sd.S2);

  var.dframe_d1 = Mat::Zero(4 * r, 4 * r);
  var.dframe_d2 = Mat::Zero(4 * r, 4 * r);
  var.dframe_d1.leftCols(n) = dX1;
  var.dframe_d2.leftCols(n) = dX2;
  var.dframe_d1.rightCols(n) = dIt1 * fs.frame.leftCols(n) + st.I_t * dX1;
  var.dframe_d2.rightCols(n) = dIt2 * fs.frame.leftCols(n) + st.I_t * dX2;

  // coordinate variation: c(tau) = F^{-1} x  =>  dc = -F^{-1} (dF) c
  Mat R1 = -fs.coords * var.dframe_d1;
  Mat R2 = -fs.coords * var.dframe_d2;
  var.R_tau = 0.5 * (R1.cast<cd>() - kI * R2.cast<cd>());
  var.R_taubar = 0.5 * (R1.cast<cd>() + kI * R2.cast<cd>());

  // z = p + i q rows; convert linear maps of (p,q) into (z, zbar) blocks
  auto z_split = [&](const CMat& R) {
    CMat zdot = R.topRows(n) + kI * R.bottomRows(n);       // d(z)/d., in (p,q)
    // p = (z + zbar)/2, q = (z - zbar)/(2i)
    CMat A = 0.5 * (zdot.leftCols(n) - kI * zdot.rightCols(n));
    CMat B = 0.5 * (zdot.leftCols(n) + kI * zdot.rightCols(n));
    return std::make_pair(A, B);
  };
  auto zb_split = [&](const CMat& R) {
    CMat zdot = R.topRows(n) - kI * R.bottomRows(n);
    CMat A = 0.5 * (zdot.leftCols(n) - kI * zdot.rightCols(n));
    CMat B = 0.5 * (zdot.leftCols(n) + kI * zdot.rightCols(n));
    return std::make_pair(A, B);
  };
  std::tie(var.Zt_A, var.Zt_B) = z_split(var.R_tau);
  std::tie(var.Ztb_A, var.Ztb_B) = z_split(var.R_taubar);
  std::tie(var.Zbt_A, var.Zbt_B) = zb_split(var.R_tau);
  std::tie(var.Zbtb_A, var.Zbtb_B) = zb_split(var.R_taubar);

  // inverse-metric variation on the full model:
  //   d(g^{-1}) = -g^{-1} (dg) g^{-1},  G(V) = -d_V(g^{-1})
  Mat g = metric_full(tau, r);
  Mat ginv = g.inverse();
  Mat o0s1 = omega0(r) * sd.S1, o0s2 = omega0(r) * sd.S2;
  Mat dg1 = Mat::Zero(4 * r, 4 * r), dg2 = Mat::Zero(4 * r, 4 * r);
  dg1.block(0, 0, n, n) = o0s1;
  dg1.block(n, n, n, n) = o0s1;
  dg2.block(0, 0, n, n) = o0s2;
  dg2.block(n, n, n, n) = o0s2;
  Mat dginv1 = -ginv * dg1 * ginv;
  Mat dginv2 = -ginv * dg2 * ginv;
  var.Gt_tau = -0.5 * (dginv1.cast<cd>() - kI * dginv2.cast<cd>());
  var.Gt_taubar = -0.5 * (dginv1.cast<cd>() + kI * dginv2.cast<cd>());

  // type split for I_t: (1,0) vectors are the +i eigenvectors
  CMat it = st.I_t.cast<cd>();
  CMat id = CMat::Identity(4 * r, 4 * r);
  CMat P10 = 0.5 * (id - kI * it);
  CMat P01 = 0.5 * (id + kI * it);
  auto type_split = [&](const CMat& G, CMat& holo, CMat& anti) {
    holo = P10 * G * P10.transpose();
    anti = P01 * G * P01.transpose();
  };
  type_split(var.Gt_tau, var.GC_tau, var.GbarC_tau);
  type_split(var.Gt_taubar, var.GC_taubar, var.GbarC_taubar);

  // restriction to the real slice (metric block is the u-block)
  Mat gA = metric_A0(tau, r);
  Mat gAinv = gA.inverse();
  Mat dgA1 = o0s1, dgA2 = o0s2;
  Mat dgAinv1 = -gAinv * dgA1 * gAinv;
  Mat dgAinv2 = -gAinv * dgA2 * gAinv;
  var.G_A0_tau = -0.5 * (dgAinv1.cast<cd>() - kI * dgAinv2.cast<cd>());
  var.G_A0_taubar = -0.5 * (dgAinv1.cast<cd>() + kI * dgAinv2.cast<cd>());
  var.dg_A0_tau = 0.5 * (dgA1.cast<cd>() - kI * dgA2.cast<cd>());
  var.dg_A0_taubar = 0.5 * (dgA1.cast<cd>() + kI * dgA2.cast<cd>());

  return var;
}

}  // namespace cslab
