#pragma once

#include <map>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "cslab/frames.hpp"

namespace cslab {

using SpMat = Eigen::SparseMatrix<cd>;

// Multi-indices in `vars` variables with total degree <= max_total.
class MonomialSet {
 public:
  MonomialSet(int vars, int max_total);
  // concatenations [a | b] of two sets (used for the z, zbar split)
  static MonomialSet product(const MonomialSet& a, const MonomialSet& b);

  int vars() const { return vars_; }
  int size() const { return static_cast<int>(list_.size()); }
  const std::vector<int>& exponents(int i) const { return list_[i]; }
  int degree(int i) const;
  // index of a multi-index, or -1 if outside the set
  int find(const std::vector<int>& e) const;

 private:
  MonomialSet() = default;
  int vars_ = 0, max_total_ = 0;
  std::vector<std::vector<int>> list_;
  std::map<std::vector<int>, int> lookup_;
};

enum class BasisFamily { hermite, fock, extended };

// Truncated basis of a quantum space at fixed (tau, t):
//   hermite  h_n(q), n in N^{2r}, coefficients against the frame rho_tau
//   fock     z^alpha, coefficients against the frame sigma_tau
//   extended z^alpha zbar^beta (exponent vector [alpha | beta]), frame sigma
struct Basis {
  BasisFamily family;
  int rank;
  int degree;       // cap on |n| resp. |alpha|
  int beta_degree;  // extended only: cap on |beta|
  MonomialSet set;

  int point_vars() const { return 2 * rank; }
  int size() const { return set.size(); }
};

using BasisPtr = std::shared_ptr<const Basis>;

BasisPtr make_basis(BasisFamily family, int rank, int degree, int beta_degree = 4);

// Elementary operator matrices on a basis. Entries that would leave the
// truncation are dropped; callers track degree headroom.
SpMat op_mult_q(const Basis& b, int j, const Level& level);   // hermite
SpMat op_diff_q(const Basis& b, int j, const Level& level);   // hermite
SpMat op_mult_z(const Basis& b, int j);                       // fock / extended
SpMat op_diff_z(const Basis& b, int j);                       // fock / extended
SpMat op_mult_zbar(const Basis& b, int j);                    // extended
SpMat op_diff_zbar(const Basis& b, int j);                    // extended

// Largest total degree carried by nonzero coefficients (alpha-part only for
// the extended family). Used by transport headroom guards.
int max_degree_of(const Basis& b, const Eigen::VectorXcd& coeffs, double tol = 0.0);

}  // namespace cslab
