#pragma once

#include <complex>

#include <Eigen/Dense>

#include "cslab/cartan.hpp"

namespace cslab {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Point of Teichmueller space (upper half-plane).
struct TeichmullerPoint {
  double tau1 = 0.0;
  double tau2 = 1.0;

  TeichmullerPoint() = default;
  TeichmullerPoint(double t1, double t2);
  cd tau() const { return {tau1, tau2}; }
};

// Quantum level t = k + is, k a positive integer; hbar = 1/|t|.
struct Level {
  int k = 1;
  double s = 0.0;

  Level() = default;
  Level(int k_, double s_);
  cd t() const { return {static_cast<double>(k), s}; }
  double abs_t() const { return std::sqrt(static_cast<double>(k) * k + s * s); }
  double hbar() const { return 1.0 / abs_t(); }
};

// Hodge star of the torus with modulus tau on coefficient pairs (a, b) of a
// 1-form a dx + b dy.
Eigen::Vector2d hodge_star(const TeichmullerPoint& tau, const Eigen::Vector2d& form);

// Star as a 2r x 2r matrix acting on the (dx, dy) coefficient pairs
// (w_j, w_{j+r}) for each basis direction of the Cartan algebra.
Mat hodge_star_matrix(const TeichmullerPoint& tau, int rank);

// Constant tensors of the model on R^{4r} with coordinates (u, v):
//   J     multiplication by i on the Lie-algebra factor
//   I_C   Hodge star on the real part, minus star on the imaginary part
//   K     I_C * J
//   I_t   k' I_C + s' K  with  k' = k/|t|, s' = s/|t|
//   omega_t, g_t = omega_t * I_t   as bilinear forms x^T M y
struct StructureTensors {
  int rank = 1;
  Mat J, I_C, K, I_t;
  Mat omega_t;
  Mat g_t;

  int dim() const { return 4 * rank; }
};

StructureTensors build_structures(const TeichmullerPoint& tau, const Level& level,
                                  const CartanData& cartan);

// omega^C as a complex bilinear form on complexified (u, v) coordinates.
CMat omega_complex(int rank);

// Frame of the model at (tau, t): columns [X_1..X_2r | Y_1..Y_2r].
// (p, q) coordinates of a point x are coords * x with p the first 2r entries.
struct FrameSet {
  int rank = 1;
  Mat frame;    // 4r x 4r
  Mat coords;   // frame^{-1}
  CMat script_X;  // 4r x r, complex tangents to the real slice

  int dim() const { return 4 * rank; }
  CMat z_rows() const;     // 2r x 4r: z = p + i q as functions of (u,v)
  CMat zbar_rows() const;
};

FrameSet build_frames(const TeichmullerPoint& tau, const Level& level,
                      const CartanData& cartan);

// (u,v) -> (p,q) and back.
Vec coords_pq(const FrameSet& fs, const Vec& x_uv);
Vec coords_uv(const FrameSet& fs, const Vec& c_pq);

// Splitting of the complexified model into the polarisation and its
// conjugate: true idempotent projections with image span(X) resp. span(Y).
// On vectors tangent to the real slice these agree with (1 -+ K)/2.
struct PolarisationProjectors {
  CMat P;  // onto span(X_j) along span(Y_j)
  CMat Q;
};

PolarisationProjectors project_PQ(const TeichmullerPoint& tau, const Level& level,
                                  const CartanData& cartan);

// tau-variation data. All derivatives are analytic (no finite differences).
struct Variations {
  Mat dframe_d1, dframe_d2;       // of the frame columns
  CMat R_tau, R_taubar;           // d(p,q)/dtau = R_tau (p,q), 4r x 4r complex
  // dz/dtau = Zt_A z + Zt_B zbar, and the same split for the other three
  // Wirtinger combinations (2r x 2r blocks).
  CMat Zt_A, Zt_B;      // dz/dtau
  CMat Ztb_A, Ztb_B;    // dz/dtaubar
  CMat Zbt_A, Zbt_B;    // dzbar/dtau
  CMat Zbtb_A, Zbtb_B;  // dzbar/dtaubar

  // Contravariant variation tensors in the (u, v) chart (complex symmetric):
  // Gt_* = -d/dtau of the inverse hyperkaehler metric; GC_* / GbarC_* its
  // (1,0)x(1,0) and (0,1)x(0,1) parts for I_t.
  CMat Gt_tau, Gt_taubar;
  CMat GC_tau, GC_taubar;
  CMat GbarC_tau, GbarC_taubar;
  // Restriction to the real slice (u-block), used by the real-polarised side.
  CMat G_A0_tau, G_A0_taubar;

  // metric derivative on the real slice, d g_tau / d tau (covariant, 2r x 2r)
  CMat dg_A0_tau, dg_A0_taubar;
};

Variations build_variations(const TeichmullerPoint& tau, const Level& level,
                            const CartanData& cartan);

// Hyperkaehler metric (t-independent) on the full model resp. the real slice.
Mat metric_full(const TeichmullerPoint& tau, int rank);
Mat metric_A0(const TeichmullerPoint& tau, int rank);
// Symplectic form on the real slice (u-block of Re omega^C).
Mat omega_A0(int rank);

}  // namespace cslab
