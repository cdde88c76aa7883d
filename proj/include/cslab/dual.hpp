#pragma once

#include <functional>

#include "cslab/bargmann.hpp"
#include "cslab/weylop.hpp"

namespace cslab {

// Elements of the topological duals at desk scale: functionals on test
// sections, represented by their pairing rule. Regular elements pair by
// quadrature, point evaluations by conjugated evaluation, finite combinations
// linearly.
struct DualElement {
  bool fock_side = false;
  std::function<cd(const Section&)> pair;
};

// hermite side: (T | psi) = conj(psi(q0)) on wavefunctions
DualElement dual_point_eval_q(const Vec& q0);
// fock side: (T | f sigma) = conj(f(z0))
DualElement dual_point_eval_z(const CVec& z0);
// hermite side regular: int payload(q) conj(psi(q)) d^m q by quadrature
DualElement dual_regular_hermite(std::function<cd(const Vec&)> payload, const Level& level,
                                 int rank, int nodes_per_axis);
// fock side regular: (2 pi hbar)^{-m} int payload(z) conj(f(z)) e^{-|z|^2/2h}
DualElement dual_regular_fock(std::function<cd(const CVec&)> payload, const Level& level,
                              int rank, int nodes_per_axis);
DualElement dual_combo(const std::vector<std::pair<cd, DualElement>>& parts);

// (tB T | psi) := (T | B psi); maps fock-side functionals to hermite-side.
DualElement transpose_bargmann(const DualElement& T);

// Hitchin-Witten potential of the real slice as a differential operator in
// the invariant trivialisation (2r variables), along a real Teichmueller
// direction V = v1 d/dtau1 + v2 d/dtau2:
//   u(V) = (1/conj(t)) Lap_{Gbar(V)} - (1/t) Lap_{G(V)}
// The covariant derivative of a tau-independent section is -(1/2) u(V).
WeylOp hw_potential_weyl(const TeichmullerPoint& tau, const Level& level,
                         const CartanData& cartan, const Eigen::Vector2d& V);

}  // namespace cslab
