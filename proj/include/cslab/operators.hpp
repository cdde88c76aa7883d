#pragma once

#include <memory>

#include "cslab/basis.hpp"
#include "cslab/cartan.hpp"
#include "cslab/frames.hpp"

namespace cslab {

// Elementary operator matrices on a fixed basis, built once and shared.
class OperatorTable {
 public:
  OperatorTable(BasisPtr basis, const Level& level);

  const Basis& basis() const { return *basis_; }
  BasisPtr basis_ptr() const { return basis_; }
  const Level& level() const { return level_; }

  const SpMat& Q(int j) const;    // hermite: q_j .
  const SpMat& Dq(int j) const;   // hermite: d/dq_j
  const SpMat& Z(int j) const;    // fock/extended: z_j .
  const SpMat& Dz(int j) const;   // fock/extended: d/dz_j
  const SpMat& Zb(int j) const;   // extended: zbar_j .
  const SpMat& Dzb(int j) const;  // extended: d/dzbar_j

 private:
  BasisPtr basis_;
  Level level_;
  std::vector<SpMat> q_, dq_, z_, dz_, zb_, dzb_;
};

using TablePtr = std::shared_ptr<const OperatorTable>;

// Process-wide table cache, safe for concurrent readers.
TablePtr table_for(BasisFamily family, int rank, int degree, const Level& level,
                   int beta_degree = 4);

enum class LadderKind { create, annihilate };
enum class MdKind { M, D, Mbar, Dbar };
enum class MuDeltaKind { mu, delta, mubar, deltabar };
enum class ConnectionKind { hitchin_witten, complexified_hitchin, l2 };
enum class TauDir { d_tau, d_tau_bar };

// a*_j = z_j .   a_j = 2 hbar d/dz_j      (fock or extended)
SpMat ladder(const OperatorTable& t, int j, LadderKind kind);

// M_j = (q_j + i q_{j+r}) .   D_j = hbar (d_{q_j} + i d_{q_{j+r}}), j in [0, r)
SpMat md_operator(const OperatorTable& t, int j, MdKind kind);

// mu_j = (z_j + i z_{j+r}) .  delta_j = 2 hbar (d_{z_j} + i d_{z_{j+r}})
SpMat mudelta_operator(const OperatorTable& t, int j, MuDeltaKind kind);

// sigma-trivialised prequantum derivatives on the extended basis
SpMat nabla_z(const OperatorTable& t, int j);     // d/dz_j - zbar_j/(2 hbar)
SpMat nabla_zbar(const OperatorTable& t, int j);  // d/dzbar_j
// along a constant complex direction of the model, (u,v) components
SpMat prequantum_extended(const OperatorTable& t, const FrameSet& fs, const CVec& dir_uv);

// Embedding of the real slice in frame coordinates: the 4r x 2r matrix M with
// x = M q, so that coords(x) = (p(q), q). Column space is the v = 0 slice.
Mat slice_embedding(const FrameSet& fs);

// rho-trivialised covariant derivative along a complex tangent of the real
// slice (components in the u-chart), acting on polarised functions of q.
SpMat nabla_slice(const OperatorTable& t, const TeichmullerPoint& tau,
                  const Level& level, const CartanData& cartan, const CVec& dir_u);

// Laplacians sum_ab G^{ab} nabla_a nabla_b for a contravariant symmetric G:
// on the extended basis (G over the 4r model directions), or on the hermite
// basis for the real slice (G over the 2r slice directions).
SpMat laplacian_extended(const OperatorTable& t, const FrameSet& fs, const CMat& G_uv);
SpMat laplacian_slice(const OperatorTable& t, const TeichmullerPoint& tau,
                      const Level& level, const CartanData& cartan, const CMat& G_u);

// Closed-form potentials (the operator added to the fixed-point tau
// derivative in the covariant derivative). Hermite basis.
SpMat hw_potential(const OperatorTable& t, const TeichmullerPoint& tau, TauDir dir);
// Independent assembly from the second-order slice derivatives plus the
// frame-phase variation; must agree with hw_potential.
SpMat hw_potential_assembled(const OperatorTable& t, const TeichmullerPoint& tau,
                             const Level& level, const CartanData& cartan, TauDir dir);

// Transport generators Theta in  (coefficient derivative) + Theta  along
// d/dtau resp. d/dtaubar:
//   hermite basis: lifted Hitchin-Witten on polarised families
//   fock basis:    L^2 = complexified Hitchin on holomorphic families
SpMat transport_generator(const OperatorTable& t, ConnectionKind kind,
                          const TeichmullerPoint& tau, TauDir dir);
// The coordinate-variation transport term of the hermite generator assembled
// from the frame variations (the route through the slice restriction).
SpMat hw_transport_term_assembled(const OperatorTable& t, const TeichmullerPoint& tau,
                                  const Level& level, const CartanData& cartan,
                                  TauDir dir);

// Full complexified-Hitchin covariant derivative on the extended basis:
// coordinate-variation term plus the G-Laplacian potential.
SpMat ch_extended_generator(const OperatorTable& t, const TeichmullerPoint& tau,
                            const Level& level, const CartanData& cartan, TauDir dir);

// Transport families: fixed matrices with tau-dependent scalar coefficients,
// for the inner loops of parallel transport.
struct TransportFamily {
  std::vector<CMat> parts;  // dense: transport dims stay small
  std::function<std::vector<cd>(const TeichmullerPoint&, TauDir)> coeffs;

  CMat at(const TeichmullerPoint& tau, TauDir dir) const;
};

TransportFamily make_transport_family(const OperatorTable& t, ConnectionKind kind);

// Index bookkeeping between the extended basis and the fock basis (beta = 0
// slice): fock index -> extended index.
std::vector<int> fock_into_extended(const Basis& ext, const Basis& fock);
// Largest |entry| of rows with beta != 0, over the beta = 0 columns: the
// anti-holomorphicity residual of an extended operator.
double antiholomorphic_residual(const Basis& ext, const SpMat& op);
// beta = 0 block of an extended operator as a fock-basis matrix.
CMat fock_block(const Basis& ext, const Basis& fock, const SpMat& op);

}  // namespace cslab
