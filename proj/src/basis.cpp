#include "cslab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cslab/errors.hpp"

namespace cslab {

namespace {

void enumerate(std::vector<std::vector<int>>& out, std::vector<int>& cur, int pos,
               int remaining) {
  if (pos == static_cast<int>(cur.size())) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate(out, cur, pos + 1, remaining - e);
  }
  cur[pos] = 0;
}

void graded_sort(std::vector<std::vector<int>>& list) {
  std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
  });
}

}  // namespace

MonomialSet::MonomialSet(int vars, int max_total) : vars_(vars), max_total_(max_total) {
  if (vars < 1 || max_total < 0) fail(ErrorCode::InvalidArgument, "bad monomial set shape");
  std::vector<int> cur(vars, 0);
  enumerate(list_, cur, 0, max_total);
  graded_sort(list_);
  for (int i = 0; i < size(); ++i) lookup_[list_[i]] = i;
}

MonomialSet MonomialSet::product(const MonomialSet& a, const MonomialSet& b) {
  MonomialSet p;
  p.vars_ = a.vars_ + b.vars_;
  p.max_total_ = a.max_total_ + b.max_total_;
  p.list_.reserve(static_cast<std::size_t>(a.size()) * b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      std::vector<int> e = a.list_[i];
      e.insert(e.end(), b.list_[j].begin(), b.list_[j].end());
      p.list_.push_back(std::move(e));
    }
  graded_sort(p.list_);
  for (int i = 0; i < p.size(); ++i) p.lookup_[p.list_[i]] = i;
  return p;
}

int MonomialSet::degree(int i) const {
  const auto& e = list_[i];
  return std::accumulate(e.begin(), e.end(), 0);
}

int MonomialSet::find(const std::vector<int>& e) const {
  auto it = lookup_.find(e);
  return it == lookup_.end() ? -1 : it->second;
}

BasisPtr make_basis(BasisFamily family, int rank, int degree, int beta_degree) {
  if (rank < 1 || degree < 0) fail(ErrorCode::InvalidArgument, "bad basis shape");
  if (family == BasisFamily::extended) {
    MonomialSet alpha(2 * rank, degree);
    MonomialSet beta(2 * rank, beta_degree);
    return std::make_shared<Basis>(
        Basis{family, rank, degree, beta_degree, MonomialSet::product(alpha, beta)});
  }
  return std::make_shared<Basis>(
      Basis{family, rank, degree, 0, MonomialSet(2 * rank, degree)});
}

namespace {

// shared shift machinery: mat[i_out, i_in] += coeff for exponent step +-e_j
template <typename CoeffFn>
SpMat build_shift(const Basis& b, int var, int step, CoeffFn coeff) {
  std::vector<Eigen::Triplet<cd>> trips;
  for (int i = 0; i < b.size(); ++i) {
    std::vector<int> e = b.set.exponents(i);
    int n = e[var];
    if (n + step < 0) continue;
    e[var] += step;
    int target = b.set.find(e);
    if (target < 0) continue;  // leaves the truncation
    trips.emplace_back(target, i, coeff(n));
  }
  SpMat m(b.size(), b.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

void require_family(const Basis& b, BasisFamily f, const char* what) {
  if (b.family != f) fail(ErrorCode::BasisMismatch, what);
}

}  // namespace

SpMat op_mult_q(const Basis& b, int j, const Level& level) {
  require_family(b, BasisFamily::hermite, "q multiplication needs the hermite basis");
  const double h = level.hbar();
  // q_j h_n = sqrt(h/2) ( sqrt(n_j) h_{n-e_j} + sqrt(n_j+1) h_{n+e_j} )
  SpMat lower = build_shift(b, j, -1, [&](int n) { return cd(std::sqrt(h / 2.0 * n)); });
  SpMat raise = build_shift(b, j, +1, [&](int n) { return cd(std::sqrt(h / 2.0 * (n + 1))); });
  return lower + raise;
}

SpMat op_diff_q(const Basis& b, int j, const Level& level) {
  require_family(b, BasisFamily::hermite, "q derivative needs the hermite basis");
  const double h = level.hbar();
  // d/dq_j h_n = (1/sqrt(2h)) ( sqrt(n_j) h_{n-e_j} - sqrt(n_j+1) h_{n+e_j} )
  SpMat lower = build_shift(b, j, -1, [&](int n) { return cd(std::sqrt(n / (2.0 * h))); });
  SpMat raise =
      build_shift(b, j, +1, [&](int n) { return cd(-std::sqrt((n + 1) / (2.0 * h))); });
  return lower + raise;
}

SpMat op_mult_z(const Basis& b, int j) {
  if (b.family == BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "z multiplication needs a holomorphic basis");
  return build_shift(b, j, +1, [](int) { return cd(1.0); });
}

SpMat op_diff_z(const Basis& b, int j) {
  if (b.family == BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "z derivative needs a holomorphic basis");
  return build_shift(b, j, -1, [](int n) { return cd(static_cast<double>(n)); });
}

SpMat op_mult_zbar(const Basis& b, int j) {
  require_family(b, BasisFamily::extended, "zbar multiplication needs the extended basis");
  return build_shift(b, 2 * b.rank + j, +1, [](int) { return cd(1.0); });
}

SpMat op_diff_zbar(const Basis& b, int j) {
  require_family(b, BasisFamily::extended, "zbar derivative needs the extended basis");
  return build_shift(b, 2 * b.rank + j, -1, [](int n) { return cd(static_cast<double>(n)); });
}

int max_degree_of(const Basis& b, const Eigen::VectorXcd& coeffs, double tol) {
  if (coeffs.size() != b.size()) fail(ErrorCode::DimensionMismatch, "coefficient size");
  int deg = 0;
  for (int i = 0; i < b.size(); ++i) {
    if (std::abs(coeffs(i)) > tol) {
      const auto& e = b.set.exponents(i);
      int d = std::accumulate(e.begin(), e.begin() + 2 * b.rank, 0);
      deg = std::max(deg, d);
    }
  }
  return deg;
}

}  // namespace cslab
