#include "cslab/cartan.hpp"

#include <cmath>

#include "cslab/errors.hpp"

namespace cslab {

namespace {

constexpr double kDedupTol = 1e-10;

bool same_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() < kDedupTol;
}

}  // namespace

CartanData CartanData::a1() {
  CartanData c;
  c.rank = 1;
  c.gram = Eigen::MatrixXd::Identity(1, 1);
  c.weyl_generators = {-Eigen::MatrixXd::Identity(1, 1)};
  // coroot has squared length 2 in the orthonormal basis
  c.lattice_basis = Eigen::MatrixXd::Constant(1, 1, std::sqrt(2.0 * 2.0 * M_PI));
  return c;
}

CartanData CartanData::an(int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "An preset needs n >= 2");
  const int r = n - 1;
  // Orthonormal basis of the trace-zero hyperplane in R^n: Gram-Schmidt on
  // the simple coroots e_i - e_{i+1}.
  Eigen::MatrixXd coroots = Eigen::MatrixXd::Zero(n, r);
  for (int i = 0; i < r; ++i) {
    coroots(i, i) = 1.0;
    coroots(i + 1, i) = -1.0;
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(coroots);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);

  CartanData c;
  c.rank = r;
  c.gram = Eigen::MatrixXd::Identity(r, r);
  // adjacent transpositions expressed in the orthonormal basis
  for (int i = 0; i < r; ++i) {
    Eigen::MatrixXd perm = Eigen::MatrixXd::Identity(n, n);
    perm(i, i) = perm(i + 1, i + 1) = 0.0;
    perm(i, i + 1) = perm(i + 1, i) = 1.0;
    c.weyl_generators.push_back(q.transpose() * perm * q);
  }
  c.lattice_basis = std::sqrt(2.0 * M_PI) * (q.transpose() * coroots);
  return c;
}

void CartanData::validate() const {
  const int r = rank;
  if (r < 1) fail(ErrorCode::ConfigError, "rank must be positive");
  if (gram.rows() != r || gram.cols() != r)
    fail(ErrorCode::DimensionMismatch, "gram must be rank x rank");
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::ConfigError, "gram must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.eigenvalues().minCoeff() <= 0.0)
    fail(ErrorCode::ConfigError, "gram must be positive definite");
  if (lattice_basis.rows() != r || lattice_basis.cols() != r)
    fail(ErrorCode::DimensionMismatch, "lattice_basis must be rank x rank");
  Eigen::MatrixXd lat_inv = lattice_basis.inverse();
  for (const auto& w : weyl_generators) {
    if (w.rows() != r || w.cols() != r)
      fail(ErrorCode::DimensionMismatch, "weyl generator must be rank x rank");
    if ((w.transpose() * gram * w - gram).cwiseAbs().maxCoeff() > 1e-10)
      fail(ErrorCode::ConfigError, "weyl generator is not a gram isometry");
    // w must map the lattice to itself: integral in lattice coordinates
    Eigen::MatrixXd m = lat_inv * w * lattice_basis;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        if (std::abs(m(i, j) - std::round(m(i, j))) > 1e-9)
          fail(ErrorCode::ConfigError, "weyl generator does not preserve the lattice");
  }
}

std::vector<Eigen::MatrixXd> enumerate_weyl(const std::vector<Eigen::MatrixXd>& generators,
                                            int bound) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "no generators");
  const int r = static_cast<int>(generators.front().rows());
  std::vector<Eigen::MatrixXd> group;
  group.push_back(Eigen::MatrixXd::Identity(r, r));
  auto known = [&](const Eigen::MatrixXd& m) {
    for (const auto& g : group)
      if (same_matrix(g, m)) return true;
    return false;
  };
  std::size_t frontier = 0;
  while (frontier < group.size()) {
    Eigen::MatrixXd cur = group[frontier++];
    for (const auto& gen : generators) {
      Eigen::MatrixXd next = gen * cur;
      if (!known(next)) {
        group.push_back(next);
        if (static_cast<int>(group.size()) > bound)
          fail(ErrorCode::GroupTooLarge, "Weyl closure exceeded bound");
      }
    }
  }
  return group;
}

const std::vector<Eigen::MatrixXd>& CartanData::weyl_group(int bound) const {
  if (weyl_cache_.empty()) weyl_cache_ = enumerate_weyl(weyl_generators, bound);
  return weyl_cache_;
}

GaugeElement GaugeElement::identity(int rank) {
  GaugeElement g;
  g.weyl_index = 0;
  g.shift_dx = Eigen::VectorXi::Zero(rank);
  g.shift_dy = Eigen::VectorXi::Zero(rank);
  return g;
}

GaugeElement gauge_compose(const CartanData& cartan, const GaugeElement& a,
                           const GaugeElement& b) {
  const auto& group = cartan.weyl_group();
  const Eigen::MatrixXd prod = group[a.weyl_index] * group[b.weyl_index];
  int prod_index = -1;
  for (std::size_t i = 0; i < group.size(); ++i)
    if (same_matrix(group[i], prod)) { prod_index = static_cast<int>(i); break; }
  if (prod_index < 0) fail(ErrorCode::GroupTooLarge, "product left the enumerated group");

  // shift of the composite: s_a + w_a s_b, converted back to integer lattice
  // coordinates
  Eigen::MatrixXd lat = cartan.lattice_basis;
  Eigen::MatrixXd lat_inv = lat.inverse();
  auto combine = [&](const Eigen::VectorXi& sa, const Eigen::VectorXi& sb) {
    Eigen::VectorXd v = lat * sa.cast<double>() +
                        group[a.weyl_index] * (lat * sb.cast<double>());
    Eigen::VectorXd n = lat_inv * v;
    Eigen::VectorXi out(n.size());
    for (int i = 0; i < n.size(); ++i) {
      double ni = std::round(n(i));
      if (std::abs(n(i) - ni) > 1e-9)
        fail(ErrorCode::ConfigError, "composite shift is not a lattice vector");
      out(i) = static_cast<int>(ni);
    }
    return out;
  };
  GaugeElement g;
  g.weyl_index = prod_index;
  g.shift_dx = combine(a.shift_dx, b.shift_dx);
  g.shift_dy = combine(a.shift_dy, b.shift_dy);
  return g;
}

Eigen::VectorXd gauge_translation(const CartanData& cartan, const GaugeElement& g) {
  const int r = cartan.rank;
  Eigen::VectorXd t = Eigen::VectorXd::Zero(4 * r);
  t.segment(0, r) = cartan.lattice_basis * g.shift_dx.cast<double>();
  t.segment(r, r) = cartan.lattice_basis * g.shift_dy.cast<double>();
  return t;
}

Eigen::MatrixXd gauge_weyl_matrix(const CartanData& cartan, const GaugeElement& g) {
  const int r = cartan.rank;
  const Eigen::MatrixXd& w = cartan.weyl_group()[g.weyl_index];
  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(4 * r, 4 * r);
  for (int b = 0; b < 4; ++b) big.block(b * r, b * r, r, r) = w;
  return big;
}

Eigen::VectorXd gauge_act(const CartanData& cartan, const GaugeElement& g,
                          const Eigen::VectorXd& x) {
  const int r = cartan.rank;
  if (x.size() != 4 * r) fail(ErrorCode::DimensionMismatch, "point must have 4*rank entries");
  return gauge_weyl_matrix(cartan, g) * x + gauge_translation(cartan, g);
}

}  // namespace cslab
