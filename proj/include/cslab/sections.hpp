#pragma once

#include <functional>
#include <map>

#include "cslab/basis.hpp"
#include "cslab/cartan.hpp"
#include "cslab/frames.hpp"

namespace cslab {

// Truncated section of the prequantum bundle in one of the three bases.
struct Section {
  BasisPtr basis;
  TeichmullerPoint tau;
  Level level;
  CVec coeffs;

  static Section zero(BasisPtr b, const TeichmullerPoint& tau, const Level& level);
  static Section unit(BasisPtr b, const TeichmullerPoint& tau, const Level& level,
                      const std::vector<int>& index);
};

// L^2 pairing, linear in the first slot, conjugated in the second.
//   hermite:  Euclidean pairing of coefficients (orthonormal basis)
//   fock:     <z^a, z^b> = delta_ab (2 hbar)^|a| a!
//   extended: moments of the same Gaussian measure, mixed in z and zbar
cd inner_product(const Section& a, const Section& b);

double fock_weight(const Level& level, const std::vector<int>& alpha);

// Values of the coefficient function in the native chart: psi(q) for hermite
// (arg: real q in R^{2r}), f(z) resp. f(z, zbar) for the holomorphic bases
// (arg: complex z in C^{2r}).
cd evaluate_wave(const Section& s, const Vec& q);
cd evaluate_wave(const Section& s, const CVec& z);

// Same per-axis Hermite function values used by evaluate_wave.
double hermite_value(int n, double q, double hbar);

// Polarised frame values of the model at a point x in R^{4r}:
//   rho   = exp(-(i/2 hbar) p.q)
//   sigma = (2 pi hbar)^{-2r} exp(-|z|^2 / 4 hbar)
cd frame_rho(const FrameSet& fs, const Level& level, const Vec& x_uv);
cd frame_sigma(const FrameSet& fs, const Level& level, const Vec& x_uv);

// Section value at a model point; with_frame multiplies by rho resp. sigma.
// range_ok (optional) reports the |q| <= 10 sqrt(N hbar) evaluation window.
cd evaluate_model(const Section& s, const FrameSet& fs, const Vec& x_uv,
                  bool with_frame, bool* range_ok = nullptr);

// ---------------------------------------------------------------------------
// Gaussian packets: exp( x^T A x / 2 + b.x + c ) on R^d with complex symmetric
// A whose real part is negative definite. Closed under products, pullbacks by
// affine maps and integration; the workhorse behind the lattice sums.
struct GaussianPacket {
  CMat A;
  CVec b;
  cd c{0.0, 0.0};

  int dim() const { return static_cast<int>(b.size()); }
  static GaussianPacket standard(int dim, double variance);  // exp(-|x|^2/(2 var))
};

cd packet_eval(const GaussianPacket& p, const Vec& x);
GaussianPacket packet_multiply(const GaussianPacket& p, const GaussianPacket& q);
GaussianPacket packet_conjugate(const GaussianPacket& p);
GaussianPacket packet_pullback(const GaussianPacket& p, const Mat& m, const Vec& t);
GaussianPacket packet_scale(const GaussianPacket& p, cd factor);

// int exp( x^T A x / 2 + b.x + c ) d^d x, principal branches per eigenvalue
cd gaussian_integral(const CMat& A, const CVec& b, cd c);
cd packet_integral(const GaussianPacket& p);

// ---------------------------------------------------------------------------
// Lifted residual gauge action on sections over the real slice (functions of
// u in R^{2r}, invariant trivialisation, omega_t|A0 = k omega):
//   (T_lambda s)(u) = chi(lambda) exp(-(i/2) k omega(lambda, u)) s(u - lambda)
//   (T_w s)(u)      = s(w^{-1} u)
// chi is the ordered-basis semicharacter making T a true lattice action.
using SliceFn = std::function<cd(const Vec&)>;  // on R^{2r}

cd lattice_semicharacter(const CartanData& cartan, const Level& level,
                         const Eigen::VectorXi& n);  // n in Z^{2r}
cd lift_phase_A0(const CartanData& cartan, const Level& level, const Vec& lambda,
                 const Vec& u);
Vec lattice_vector_A0(const CartanData& cartan, const Eigen::VectorXi& n);
SliceFn gauge_apply_A0(const CartanData& cartan, const Level& level,
                       const GaugeElement& g, SliceFn s);

// Full-space lift on sections over the model (functions on R^{4r}), with the
// full omega_t in the phase. Used by the holomorphic-side equivariance checks.
cd lift_phase_full(const StructureTensors& st, const Vec& lambda4, const Vec& x);

struct EquivariantSection {
  SliceFn fn;
  int radius = 0;
  double tail_estimate = 0.0;
};

// Average of lattice translates (all Weyl images, shifts |n|_inf <= radius)
// of a decaying section over the real slice. Throws TailTooLarge when the
// shell-refinement estimate exceeds `tail_tol`.
EquivariantSection equivariantize(const CartanData& cartan, const Level& level,
                                  SliceFn s, int radius, double tail_tol,
                                  const std::vector<Vec>& probe_points);

// Same sum in closed form for a Gaussian packet seed; returns the translated
// packets (with phases folded into the exponents) for downstream calculus.
std::vector<GaussianPacket> equivariant_packets(const CartanData& cartan,
                                                const Level& level,
                                                const GaussianPacket& seed,
                                                int radius);

}  // namespace cslab
