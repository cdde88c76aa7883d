#include "cslab/weylop.hpp"

#include <cmath>

#include "cslab/errors.hpp"

namespace cslab {

namespace {
const cd kI{0.0, 1.0};

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

double falling(int n, int k) {
  double f = 1.0;
  for (int i = 0; i < k; ++i) f *= (n - i);
  return f;
}
}  // namespace

void WeylOp::add_term(const std::vector<int>& xpow, const std::vector<int>& dpow, cd coeff) {
  if (static_cast<int>(xpow.size()) != vars_ || static_cast<int>(dpow.size()) != vars_)
    fail(ErrorCode::DimensionMismatch, "weyl term arity");
  if (coeff == cd(0.0)) return;
  auto key = std::make_pair(xpow, dpow);
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == cd(0.0)) terms_.erase(it);
  }
}

WeylOp WeylOp::identity(int vars) {
  WeylOp op(vars);
  op.add_term(std::vector<int>(vars, 0), std::vector<int>(vars, 0), 1.0);
  return op;
}

WeylOp WeylOp::coordinate(int vars, int j) {
  WeylOp op(vars);
  std::vector<int> x(vars, 0), d(vars, 0);
  x[j] = 1;
  op.add_term(x, d, 1.0);
  return op;
}

WeylOp WeylOp::derivative(int vars, int j) {
  WeylOp op(vars);
  std::vector<int> x(vars, 0), d(vars, 0);
  d[j] = 1;
  op.add_term(x, d, 1.0);
  return op;
}

WeylOp WeylOp::first_order(const CVec& dcoeff, const CVec& xcoeff, cd constant) {
  const int vars = static_cast<int>(dcoeff.size());
  WeylOp op(vars);
  std::vector<int> zero(vars, 0);
  for (int j = 0; j < vars; ++j) {
    if (dcoeff(j) != cd(0.0)) {
      std::vector<int> d = zero;
      d[j] = 1;
      op.add_term(zero, d, dcoeff(j));
    }
    if (xcoeff(j) != cd(0.0)) {
      std::vector<int> x = zero;
      x[j] = 1;
      op.add_term(x, zero, xcoeff(j));
    }
  }
  if (constant != cd(0.0)) op.add_term(zero, zero, constant);
  return op;
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

WeylOp WeylOp::operator*(cd scalar) const {
  WeylOp out(vars_);
  for (const auto& [k, c] : terms_) out.add_term(k.first, k.second, c * scalar);
  return out;
}

WeylOp WeylOp::operator+(const WeylOp& o) const {
  WeylOp out = *this;
  out += o;
  return out;
}

WeylOp WeylOp::operator-(const WeylOp& o) const {
  WeylOp out = *this;
  out -= o;
  return out;
}

WeylOp WeylOp::operator*(const WeylOp& o) const {
  // (x^a d^b)(x^c d^e): commute d^b past x^c with the multivariate Leibniz rule
  WeylOp out(vars_);
  for (const auto& [ka, ca] : terms_) {
    const auto& a = ka.first;
    const auto& b = ka.second;
    for (const auto& [kb, cb] : o.terms_) {
      const auto& c = kb.first;
      const auto& e = kb.second;
      // enumerate k <= min(b, c) componentwise
      std::vector<int> kmax(vars_);
      for (int i = 0; i < vars_; ++i) kmax[i] = std::min(b[i], c[i]);
      std::vector<int> k(vars_, 0);
      while (true) {
        double factor = 1.0;
        for (int i = 0; i < vars_; ++i)
          factor *= binom(b[i], k[i]) * falling(c[i], k[i]);
        std::vector<int> xp(vars_), dp(vars_);
        for (int i = 0; i < vars_; ++i) {
          xp[i] = a[i] + c[i] - k[i];
          dp[i] = b[i] - k[i] + e[i];
        }
        out.add_term(xp, dp, ca * cb * factor);
        int i = 0;
        for (; i < vars_; ++i) {
          if (++k[i] <= kmax[i]) break;
          k[i] = 0;
        }
        if (i == vars_) break;
      }
    }
  }
  return out;
}

WeylOp WeylOp::commutator(const WeylOp& o) const { return (*this) * o - o * (*this); }

double WeylOp::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void WeylOp::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

WeylOp prequantum_weyl(const Mat& omega, const CVec& dir) {
  // omega(x, dir) = x^T omega dir
  CVec xcoeff = -0.5 * kI * (omega.cast<cd>() * dir);
  return WeylOp::first_order(dir, xcoeff, 0.0);
}

WeylOp laplacian_weyl(const Mat& omega, const CMat& G) {
  const int vars = static_cast<int>(omega.rows());
  WeylOp out(vars);
  std::vector<WeylOp> nabla;
  nabla.reserve(vars);
  for (int a = 0; a < vars; ++a) {
    CVec dir = CVec::Zero(vars);
    dir(a) = 1.0;
    nabla.push_back(prequantum_weyl(omega, dir));
  }
  for (int a = 0; a < vars; ++a)
    for (int b = 0; b < vars; ++b) {
      if (G(a, b) == cd(0.0)) continue;
      out += (nabla[a] * nabla[b]) * G(a, b);
    }
  return out;
}

PolyPacket PolyPacket::pure(const GaussianPacket& g) {
  PolyPacket f;
  f.packet = g;
  f.poly[std::vector<int>(g.dim(), 0)] = 1.0;
  return f;
}

cd polypacket_eval(const PolyPacket& f, const Vec& x) {
  cd pol = 0.0;
  for (const auto& [mon, c] : f.poly) {
    cd term = c;
    for (std::size_t i = 0; i < mon.size(); ++i)
      for (int p = 0; p < mon[i]; ++p) term *= x(static_cast<int>(i));
    pol += term;
  }
  return pol * packet_eval(f.packet, x);
}

namespace {

// derivative of (poly * packet) along variable j, at the polynomial level
std::map<std::vector<int>, cd> poly_derivative(const std::map<std::vector<int>, cd>& poly,
                                               const GaussianPacket& g, int j) {
  std::map<std::vector<int>, cd> out;
  auto add = [&](const std::vector<int>& m, cd c) {
    if (c == cd(0.0)) return;
    auto [it, inserted] = out.try_emplace(m, c);
    if (!inserted) it->second += c;
  };
  const int d = g.dim();
  for (const auto& [mon, c] : poly) {
    // product rule on the monomial
    if (mon[j] > 0) {
      std::vector<int> m = mon;
      m[j] -= 1;
      add(m, c * static_cast<double>(mon[j]));
    }
    // d/dx_j of the exponent: (A x)_j + b_j
    {
      std::vector<int> m = mon;
      add(m, c * g.b(j));
      for (int l = 0; l < d; ++l) {
        if (g.A(j, l) == cd(0.0)) continue;
        std::vector<int> ml = mon;
        ml[l] += 1;
        add(ml, c * g.A(j, l));
      }
    }
  }
  return out;
}

}  // namespace

PolyPacket apply_weyl(const WeylOp& op, const PolyPacket& f) {
  PolyPacket out;
  out.packet = f.packet;
  const int d = f.packet.dim();
  if (op.vars() != d) fail(ErrorCode::DimensionMismatch, "weyl op arity vs packet dim");
  for (const auto& [key, coeff] : op.terms()) {
    const auto& xpow = key.first;
    const auto& dpow = key.second;
    std::map<std::vector<int>, cd> cur = f.poly;
    for (int j = 0; j < d; ++j)
      for (int rep = 0; rep < dpow[j]; ++rep) cur = poly_derivative(cur, f.packet, j);
    for (const auto& [mon, c] : cur) {
      std::vector<int> m = mon;
      for (int j = 0; j < d; ++j) m[j] += xpow[j];
      cd val = c * coeff;
      auto [it, inserted] = out.poly.try_emplace(m, val);
      if (!inserted) it->second += val;
    }
  }
  return out;
}

}  // namespace cslab
