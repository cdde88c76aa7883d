#pragma once

#include <functional>
#include <string>

#include "cslab/dual.hpp"
#include "cslab/operators.hpp"
#include "cslab/rng.hpp"

namespace cslab {

struct TeichPath {
  std::vector<TeichmullerPoint> waypoints;
  int steps_per_segment = 1000;

  bool closed(double tol = 1e-12) const;
  double length() const;  // Euclidean in (tau1, tau2)
};

// "a+bi,c+di" waypoint syntax
TeichPath parse_path(const std::string& text, int steps_per_segment = 1000);
cd parse_complex(const std::string& text);

// tau-family of sections given by a coefficient rule (fixed basis shape).
struct SectionFamily {
  std::function<Section(const TeichmullerPoint&)> at;
};

// Coefficient derivative of a family at fixed frame coordinates, by central
// differences with one Richardson step. Throws NotDifferentiable when the
// half-step estimate disagrees past `consistency`.
Section delta_derivative(const SectionFamily& family, const TeichmullerPoint& tau,
                         TauDir dir, double step = 1e-5, double consistency = 1e-4);

struct TransportResult {
  Section endpoint;
  double norm_drift = 0.0;  // |final l2 norm - initial l2 norm|
};

// Parallel transport of the coefficient vector along the path: classical
// 4th-order stepping of c' = -(w Theta_tau + conj(w) Theta_taubar) c.
// Requires 4 degrees of headroom below the basis cap.
TransportResult transport(const TransportFamily& fam, const Basis& basis,
                          const TeichPath& path, const Section& initial);

// Step-halving check: throws StepUnstable if the endpoint moves by more than
// 10x tolerance when the step count doubles.
TransportResult transport_checked(const TransportFamily& fam, const Basis& basis,
                                  const TeichPath& path, const Section& initial,
                                  double tol);

// Holonomy of a closed loop on the block of basis elements of degree <=
// block_degree. Flat connections give the identity.
CMat holonomy(const TransportFamily& fam, const Basis& basis, const TeichPath& loop,
              int block_degree);

// circular loop through Teichmueller space, `segments` straight chords
TeichPath circle_loop(const TeichmullerPoint& center, double radius, int segments,
                      int steps_per_segment);

// ---------------------------------------------------------------------------
// mapping class group

struct MCGElement {
  Eigen::Matrix2i m;  // det 1, acts by Moebius transformations

  static MCGElement S();
  static MCGElement T();
  static MCGElement identity();
};

TeichmullerPoint mcg_act(const MCGElement& g, const TeichmullerPoint& tau);
// push-forward on the model: (gamma^{-1})^T per (dx, dy) coefficient pair,
// identically on the u and v blocks
Mat mcg_point_matrix(const MCGElement& g, int rank);

// holomorphic frame change U with z_{g tau} o P_g = U z_tau; `mixing` reports
// the antiholomorphic contamination (zero when P intertwines the structures)
CMat mcg_frame_change(const MCGElement& g, const TeichmullerPoint& tau,
                      const Level& level, const CartanData& cartan, double* mixing);
// real-polarised frame change A with q_{g tau} o P_g = A q_tau (+ B p, B ~ 0)
Mat mcg_q_frame_change(const MCGElement& g, const TeichmullerPoint& tau,
                       const Level& level, const CartanData& cartan, double* mixing);

// substitution matrix of f |-> f o L on the fock monomial basis
CMat fock_substitution(const Basis& fock, const CMat& L);
// substitution matrix of psi |-> psi o A on the hermite basis, projected by
// Gauss-Hermite quadrature
CMat hermite_substitution(const Basis& hermite, const Level& level, const Mat& A,
                          int nodes_per_axis);

// section push-forward to g tau: fock coefficients transform by substitution
// with U^{-1}, hermite ones with A^{-1}
Section mcg_act_section(const MCGElement& g, const Section& s, const CartanData& cartan);

// ---------------------------------------------------------------------------

struct IntertwiningReport {
  double max_residual = 0.0;  // over test sections and both tau directions
  int tested = 0;
};

// || B W psi - V B psi || / || psi || with W, V the transport generators of
// the two sides; the test set is h_0 plus `samples` random sections of the
// given degree.
IntertwiningReport verify_intertwining(const TeichmullerPoint& tau, const Level& level,
                                       const CartanData& cartan, int degree,
                                       int sample_degree, int samples, Rng& rng);

// (V[(T|psi)] - (T | nabla_V psi)) for a tau-family of functionals T and a
// coefficient family psi; V is the real direction v1 d/dtau1 + v2 d/dtau2.
// The connection matching the test side is used for nabla_V.
cd dual_apply(ConnectionKind kind,
              const std::function<DualElement(const TeichmullerPoint&)>& T,
              const SectionFamily& psi, const TeichmullerPoint& tau,
              const Eigen::Vector2d& V, double fd_step = 1e-4);

}  // namespace cslab
