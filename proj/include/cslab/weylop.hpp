#pragma once

#include <map>
#include <vector>

#include "cslab/sections.hpp"

namespace cslab {

// Polynomial-coefficient differential operators in normal order,
//   sum_{a,b} c_{ab} x^a d^b,
// represented coordinate-free of any truncated basis. Used wherever an
// operator identity must hold as such (flatness pieces, function-level
// potentials), not just on a matrix representation.
class WeylOp {
 public:
  using Key = std::pair<std::vector<int>, std::vector<int>>;  // (x powers, d powers)

  explicit WeylOp(int vars) : vars_(vars) {}

  int vars() const { return vars_; }
  bool empty() const { return terms_.empty(); }
  const std::map<Key, cd>& terms() const { return terms_; }

  void add_term(const std::vector<int>& xpow, const std::vector<int>& dpow, cd coeff);

  static WeylOp identity(int vars);
  static WeylOp coordinate(int vars, int j);       // multiplication by x_j
  static WeylOp derivative(int vars, int j);       // d/dx_j
  // first-order op  v . d + (linear form) with complex coefficient vectors
  static WeylOp first_order(const CVec& dcoeff, const CVec& xcoeff, cd constant);

  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  WeylOp operator*(cd scalar) const;
  WeylOp operator+(const WeylOp& o) const;
  WeylOp operator-(const WeylOp& o) const;
  // composition (normal-ordered product)
  WeylOp operator*(const WeylOp& o) const;

  WeylOp commutator(const WeylOp& o) const;
  double max_abs_coeff() const;
  void prune(double tol = 0.0);

 private:
  int vars_;
  std::map<Key, cd> terms_;
};

// Prequantum covariant derivative along the constant field `dir` (complex
// components allowed) in the invariant trivialisation for the symplectic
// matrix omega (x^T omega y convention):
//   nabla_dir = dir.d - (i/2) omega(x, dir)
WeylOp prequantum_weyl(const Mat& omega, const CVec& dir);

// Laplacian of a contravariant symmetric tensor G (complex matrix):
//   sum_{ab} G_{ab} nabla_{e_a} nabla_{e_b}
WeylOp laplacian_weyl(const Mat& omega, const CMat& G);

// ---------------------------------------------------------------------------
// polynomial x Gaussian functions, closed under WeylOp application
struct PolyPacket {
  std::map<std::vector<int>, cd> poly;  // monomial -> coefficient
  GaussianPacket packet;

  static PolyPacket pure(const GaussianPacket& g);
};

cd polypacket_eval(const PolyPacket& f, const Vec& x);
PolyPacket apply_weyl(const WeylOp& op, const PolyPacket& f);

}  // namespace cslab
