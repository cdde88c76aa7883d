#pragma once

#include <functional>

#include "cslab/operators.hpp"
#include "cslab/quadrature.hpp"
#include "cslab/sections.hpp"

namespace cslab {

// Matrix of the transform on matching truncations: hermite basis |n| <= N to
// fock monomials of the same multi-indices. Built recursively from the image
// of the ground state (the constant 1) by the ladder commutation relations;
// degree-preserving and unitary for the module's measure conventions.
CMat bargmann_matrix(const OperatorTable& fock_table);

// Apply to a hermite section.
Section bargmann_closed_form(const Section& position);

// Integral-kernel evaluation at one holomorphic point: the oracle path.
//   (1/(pi hbar)^{m/4}) int psi(q) exp(-(1/(4 hbar))(4i q.z + 2|q|^2 - z.z)) dq
cd bargmann_kernel_point(const std::function<cd(const Vec&)>& psi, const CVec& z,
                         const Level& level, int rank, int nodes_per_axis);

// Quadrature transform of a position section on a list of points; checks
// node-doubling stability and throws QuadratureDiverged past `tol`.
CVec bargmann_quadrature(const Section& position, const std::vector<CVec>& zs,
                         int nodes_per_axis, double tol);

// Equivariant transform of a bounded section over the real slice, given in
// the invariant trivialisation as a function of u. Values of the bounded
// representative (section value in the invariant trivialisation times
// (2 pi hbar)^{2r}); domain expansion via node doubling until the change is
// below `tol` (else TailTooLarge).
struct EquivariantTransform {
  CVec values;
  double refinement_change = 0.0;
};

EquivariantTransform bargmann_equivariant(const SliceFn& s, const FrameSet& fs,
                                          const Level& level, const std::vector<CVec>& zs,
                                          int nodes_per_axis, double tol);

// Same holomorphic-side values for a sum of Gaussian packets on the slice,
// in closed form (lattice seeds; the fast path behind the dual-side checks).
cd bargmann_packet_value(const GaussianPacket& packet_u, const FrameSet& fs,
                         const Level& level, const CVec& z);

// Bounded-representative value from fock coefficients:
//   f(z) exp(-|z|^2 / (4 hbar))
cd bounded_representative(const Section& fock, const CVec& z);

}  // namespace cslab
