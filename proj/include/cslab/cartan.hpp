#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cslab {

// Lie-theoretic input: rank, inner product on the Cartan subalgebra in a
// chosen basis (T_1..T_r), Weyl group generators as matrices on that basis,
// and the translation lattice of the residual gauge group.
//
// Units: the pairing is normalised so that the prequantum integrality holds
// at every integer level, i.e. omega(lattice, lattice) is a subset of
// 2*pi*Z. The built-in presets realise this with gram = Id (orthonormal
// basis) and lattice columns sqrt(2*pi) * (coroot basis).
struct CartanData {
  int rank = 1;
  Eigen::MatrixXd gram;                         // r x r, symmetric positive definite
  std::vector<Eigen::MatrixXd> weyl_generators; // isometries of gram preserving the lattice
  Eigen::MatrixXd lattice_basis;                // r x r, columns span the lattice

  // SU(2): one-dimensional Cartan, Weyl group {+1, -1}.
  static CartanData a1();
  // SU(n): trace-zero diagonals, permutation Weyl action, rank n-1.
  static CartanData an(int n);

  void validate() const;

  // Full Weyl group by closure of the generators (cached after first call).
  // Throws GroupTooLarge past `bound` elements.
  const std::vector<Eigen::MatrixXd>& weyl_group(int bound = 10000) const;

 private:
  mutable std::vector<Eigen::MatrixXd> weyl_cache_;
};

// Brute-force closure of a generator list under products, deduplicated.
std::vector<Eigen::MatrixXd> enumerate_weyl(const std::vector<Eigen::MatrixXd>& generators,
                                            int bound = 10000);

// Residual gauge transformation: a Weyl element acting diagonally on both
// torus factors followed by a lattice translation (one lattice vector per
// H^1 generator of the surface).
struct GaugeElement {
  int weyl_index = 0;
  Eigen::VectorXi shift_dx;  // integer coordinates in lattice_basis
  Eigen::VectorXi shift_dy;

  static GaugeElement identity(int rank);
};

// Composition in the semidirect product W |x (Lambda + Lambda):
// (w1, s1) * (w2, s2) = (w1 w2, s1 + w1 s2).
GaugeElement gauge_compose(const CartanData& cartan, const GaugeElement& a,
                           const GaugeElement& b);

// Translation part of g in ambient coordinates: a vector in R^{4r} supported
// on the u-block (real points of the model).
Eigen::VectorXd gauge_translation(const CartanData& cartan, const GaugeElement& g);

// Weyl part of g as a 4r x 4r block-diagonal matrix on (u, v) coordinates.
Eigen::MatrixXd gauge_weyl_matrix(const CartanData& cartan, const GaugeElement& g);

// Action on points of the model, x in R^{4r} ordered (u_1..u_2r, v_1..v_2r):
// apply the Weyl matrix diagonally, then shift the u-block by the lattice
// translation.
Eigen::VectorXd gauge_act(const CartanData& cartan, const GaugeElement& g,
                          const Eigen::VectorXd& x);

}  // namespace cslab
