#include "cslab/sections.hpp"

#include <cmath>

#include "cslab/errors.hpp"

namespace cslab {

namespace {
const cd kI{0.0, 1.0};
}

Section Section::zero(BasisPtr b, const TeichmullerPoint& tau, const Level& level) {
  Section s;
  s.basis = std::move(b);
  s.tau = tau;
  s.level = level;
  s.coeffs = CVec::Zero(s.basis->size());
  return s;
}

Section Section::unit(BasisPtr b, const TeichmullerPoint& tau, const Level& level,
                      const std::vector<int>& index) {
  Section s = zero(std::move(b), tau, level);
  int i = s.basis->set.find(index);
  if (i < 0) fail(ErrorCode::DegreeOverflow, "basis index outside the truncation");
  s.coeffs(i) = 1.0;
  return s;
}

double fock_weight(const Level& level, const std::vector<int>& alpha) {
  const double two_h = 2.0 * level.hbar();
  double w = 1.0;
  for (int a : alpha) {
    for (int m = 1; m <= a; ++m) w *= two_h * m;
  }
  return w;
}

cd inner_product(const Section& a, const Section& b) {
  if (a.basis->family != b.basis->family || a.basis->rank != b.basis->rank)
    fail(ErrorCode::BasisMismatch, "inner product across different basis families");
  if (a.level.k != b.level.k || a.level.s != b.level.s)
    fail(ErrorCode::BasisMismatch, "inner product across different levels");

  const Basis& A = *a.basis;
  const Basis& B = *b.basis;
  switch (A.family) {
    case BasisFamily::hermite: {
      if (A.size() != B.size()) fail(ErrorCode::BasisMismatch, "hermite truncations differ");
      // Eigen's dot conjugates its first argument
      return b.coeffs.dot(a.coeffs);
    }
    case BasisFamily::fock: {
      if (A.size() != B.size()) fail(ErrorCode::BasisMismatch, "fock truncations differ");
      cd acc = 0.0;
      for (int i = 0; i < A.size(); ++i)
        acc += a.coeffs(i) * std::conj(b.coeffs(i)) * fock_weight(a.level, A.set.exponents(i));
      return acc;
    }
    case BasisFamily::extended: {
      const int n = 2 * A.rank;
      cd acc = 0.0;
      for (int i = 0; i < A.size(); ++i) {
        if (a.coeffs(i) == cd(0.0)) continue;
        const auto& e = A.set.exponents(i);
        for (int j = 0; j < B.size(); ++j) {
          if (b.coeffs(j) == cd(0.0)) continue;
          const auto& f = B.set.exponents(j);
          std::vector<int> mom(n);
          bool match = true;
          for (int l = 0; l < n; ++l) {
            mom[l] = e[l] + f[n + l];          // alpha + delta
            if (mom[l] != e[n + l] + f[l]) {   // beta + gamma
              match = false;
              break;
            }
          }
          if (!match) continue;
          acc += a.coeffs(i) * std::conj(b.coeffs(j)) * fock_weight(a.level, mom);
        }
      }
      return acc;
    }
  }
  return 0.0;
}

double hermite_value(int n, double q, double hbar) {
  const double h0 = std::pow(M_PI * hbar, -0.25) * std::exp(-q * q / (2.0 * hbar));
  if (n == 0) return h0;
  double prev = h0;
  double cur = q * std::sqrt(2.0 / hbar) * h0;
  for (int m = 1; m < n; ++m) {
    double next = q * std::sqrt(2.0 / ((m + 1) * hbar)) * cur -
                  std::sqrt(static_cast<double>(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

cd evaluate_wave(const Section& s, const Vec& q) {
  const Basis& b = *s.basis;
  if (b.family != BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "real-argument evaluation needs the hermite basis");
  if (q.size() != b.point_vars()) fail(ErrorCode::DimensionMismatch, "bad point dimension");
  const double h = s.level.hbar();
  // per-axis tables up to the max exponent
  const int m = b.point_vars();
  std::vector<std::vector<double>> table(m);
  for (int l = 0; l < m; ++l) {
    table[l].resize(b.degree + 1);
    for (int n = 0; n <= b.degree; ++n) table[l][n] = hermite_value(n, q(l), h);
  }
  cd acc = 0.0;
  for (int i = 0; i < b.size(); ++i) {
    if (s.coeffs(i) == cd(0.0)) continue;
    const auto& e = b.set.exponents(i);
    double prod = 1.0;
    for (int l = 0; l < m; ++l) prod *= table[l][e[l]];
    acc += s.coeffs(i) * prod;
  }
  return acc;
}

cd evaluate_wave(const Section& s, const CVec& z) {
  const Basis& b = *s.basis;
  if (b.family == BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "complex-argument evaluation needs a holomorphic basis");
  const int n = 2 * b.rank;
  if (z.size() != n) fail(ErrorCode::DimensionMismatch, "bad point dimension");
  cd acc = 0.0;
  for (int i = 0; i < b.size(); ++i) {
    if (s.coeffs(i) == cd(0.0)) continue;
    const auto& e = b.set.exponents(i);
    cd prod = 1.0;
    for (int l = 0; l < n; ++l)
      for (int p = 0; p < e[l]; ++p) prod *= z(l);
    if (b.family == BasisFamily::extended)
      for (int l = 0; l < n; ++l)
        for (int p = 0; p < e[n + l]; ++p) prod *= std::conj(z(l));
    acc += s.coeffs(i) * prod;
  }
  return acc;
}

cd frame_rho(const FrameSet& fs, const Level& level, const Vec& x_uv) {
  const int n = 2 * fs.rank;
  Vec c = coords_pq(fs, x_uv);
  double pq = c.head(n).dot(c.tail(n));
  return std::exp(-kI * pq / (2.0 * level.hbar()));
}

cd frame_sigma(const FrameSet& fs, const Level& level, const Vec& x_uv) {
  const int n = 2 * fs.rank;
  Vec c = coords_pq(fs, x_uv);
  double z2 = c.squaredNorm();
  const double h = level.hbar();
  return std::pow(2.0 * M_PI * h, -n) * std::exp(-z2 / (4.0 * h));
}

cd evaluate_model(const Section& s, const FrameSet& fs, const Vec& x_uv,
                  bool with_frame, bool* range_ok) {
  const Basis& b = *s.basis;
  const int n = 2 * b.rank;
  Vec c = coords_pq(fs, x_uv);
  Vec p = c.head(n), q = c.tail(n);
  const double window = 10.0 * std::sqrt(b.degree > 0 ? b.degree * s.level.hbar()
                                                      : s.level.hbar());
  cd val;
  if (b.family == BasisFamily::hermite) {
    if (range_ok) *range_ok = q.lpNorm<Eigen::Infinity>() <= window;
    val = evaluate_wave(s, q);
    if (with_frame) val *= frame_rho(fs, s.level, x_uv);
  } else {
    CVec z = p.cast<cd>() + kI * q.cast<cd>();
    if (range_ok) *range_ok = z.lpNorm<Eigen::Infinity>() <= window;
    val = evaluate_wave(s, z);
    if (with_frame) val *= frame_sigma(fs, s.level, x_uv);
  }
  return val;
}

// ---------------------------------------------------------------------------

GaussianPacket GaussianPacket::standard(int dim, double variance) {
  GaussianPacket p;
  p.A = -CMat::Identity(dim, dim) / variance;
  p.b = CVec::Zero(dim);
  p.c = 0.0;
  return p;
}

cd packet_eval(const GaussianPacket& p, const Vec& x) {
  CVec xc = x.cast<cd>();
  cd e = 0.5 * (xc.transpose() * (p.A * xc))(0, 0) + (p.b.transpose() * xc)(0, 0) + p.c;
  return std::exp(e);
}

GaussianPacket packet_multiply(const GaussianPacket& p, const GaussianPacket& q) {
  GaussianPacket r;
  r.A = p.A + q.A;
  r.b = p.b + q.b;
  r.c = p.c + q.c;
  return r;
}

GaussianPacket packet_conjugate(const GaussianPacket& p) {
  GaussianPacket r;
  r.A = p.A.conjugate();
  r.b = p.b.conjugate();
  r.c = std::conj(p.c);
  return r;
}

GaussianPacket packet_pullback(const GaussianPacket& p, const Mat& m, const Vec& t) {
  // exponent of x -> p(M x + t)
  GaussianPacket r;
  CMat mc = m.cast<cd>();
  CVec tc = t.cast<cd>();
  r.A = mc.transpose() * p.A * mc;
  r.b = mc.transpose() * (p.A * tc) + mc.transpose() * p.b;
  r.c = cd(0.5) * (tc.transpose() * (p.A * tc))(0, 0) + (p.b.transpose() * tc)(0, 0) + p.c;
  return r;
}

GaussianPacket packet_scale(const GaussianPacket& p, cd factor) {
  GaussianPacket r = p;
  r.c += std::log(factor);
  return r;
}

cd gaussian_integral(const CMat& A, const CVec& b, cd c) {
  const int d = static_cast<int>(b.size());
  Eigen::ComplexEigenSolver<CMat> es(-A);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::QuadratureDiverged, "gaussian integral eigenvalue failure");
  cd det_root = 1.0;
  for (int i = 0; i < d; ++i) {
    cd lambda = es.eigenvalues()(i);
    if (lambda.real() <= 0.0)
      fail(ErrorCode::QuadratureDiverged, "gaussian integral not convergent");
    det_root *= std::sqrt(lambda);  // principal branch, Re > 0
  }
  CVec sol = A.fullPivLu().solve(b);
  cd quad = cd(0.5) * (b.transpose() * sol)(0, 0);
  return std::pow(2.0 * M_PI, 0.5 * d) / det_root * std::exp(c - quad);
}

cd packet_integral(const GaussianPacket& p) { return gaussian_integral(p.A, p.b, p.c); }

// ---------------------------------------------------------------------------

cd lattice_semicharacter(const CartanData& cartan, const Level& level,
                         const Eigen::VectorXi& n) {
  const int r = cartan.rank;
  // omega(l_a, l_b) on the ordered basis: nonzero only across the two factors
  Mat pair = cartan.lattice_basis.transpose() * cartan.gram * cartan.lattice_basis;
  double phase = 0.0;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      // a-th dx generator vs b-th dy generator, ordered a < r + b always
      phase += -0.5 * level.k * pair(a, b) * n(a) * n(r + b);
    }
  return std::exp(kI * phase);
}

Vec lattice_vector_A0(const CartanData& cartan, const Eigen::VectorXi& n) {
  const int r = cartan.rank;
  Vec v(2 * r);
  v.head(r) = cartan.lattice_basis * n.head(r).cast<double>();
  v.tail(r) = cartan.lattice_basis * n.tail(r).cast<double>();
  return v;
}

cd lift_phase_A0(const CartanData& cartan, const Level& level, const Vec& lambda,
                 const Vec& u) {
  const int r = cartan.rank;
  Mat omega = Mat::Zero(2 * r, 2 * r);
  omega.block(0, r, r, r) = cartan.gram;
  omega.block(r, 0, r, r) = -cartan.gram;
  double w = lambda.transpose() * omega * u;
  return std::exp(-kI * (0.5 * level.k * w));
}

SliceFn gauge_apply_A0(const CartanData& cartan, const Level& level,
                       const GaugeElement& g, SliceFn s) {
  const int r = cartan.rank;
  Eigen::VectorXi n(2 * r);
  n << g.shift_dx, g.shift_dy;
  Vec lambda = lattice_vector_A0(cartan, n);
  Mat w = Mat::Zero(2 * r, 2 * r);
  const Mat& wr = cartan.weyl_group()[g.weyl_index];
  w.block(0, 0, r, r) = wr;
  w.block(r, r, r, r) = wr;
  Mat winv = w.transpose();  // gram isometries with gram = Id blockwise
  cd chi = lattice_semicharacter(cartan, level, n);
  return [=, s = std::move(s)](const Vec& u) {
    return chi * lift_phase_A0(cartan, level, lambda, u) * s(winv * (u - lambda));
  };
}

cd lift_phase_full(const StructureTensors& st, const Vec& lambda4, const Vec& x) {
  double w = lambda4.transpose() * st.omega_t * x;
  return std::exp(-kI * 0.5 * w);
}

EquivariantSection equivariantize(const CartanData& cartan, const Level& level,
                                  SliceFn s, int radius, double tail_tol,
                                  const std::vector<Vec>& probe_points) {
  const int r = cartan.rank;
  const auto& weyl = cartan.weyl_group();

  auto sum_to = [&](int rad, const Vec& u) {
    cd acc = 0.0;
    Eigen::VectorXi n(2 * r);
    std::vector<int> idx(2 * r, -rad);
    while (true) {
      for (int l = 0; l < 2 * r; ++l) n(l) = idx[l];
      Vec lambda = lattice_vector_A0(cartan, n);
      cd chi = lattice_semicharacter(cartan, level, n);
      cd phase = chi * lift_phase_A0(cartan, level, lambda, u);
      for (std::size_t wi = 0; wi < weyl.size(); ++wi) {
        Mat w = Mat::Zero(2 * r, 2 * r);
        w.block(0, 0, r, r) = weyl[wi];
        w.block(r, r, r, r) = weyl[wi];
        acc += phase * s(w.transpose() * (u - lambda));
      }
      int l = 0;
      for (; l < 2 * r; ++l) {
        if (++idx[l] <= rad) break;
        idx[l] = -rad;
      }
      if (l == 2 * r) break;
    }
    return acc / static_cast<double>(weyl.size());
  };

  double tail = 0.0;
  for (const Vec& u : probe_points) {
    cd full = sum_to(radius, u);
    cd inner = sum_to(radius - 1, u);
    tail = std::max(tail, std::abs(full - inner));
  }
  if (tail > tail_tol) fail(ErrorCode::TailTooLarge, "lattice sum tail exceeds tolerance");

  EquivariantSection out;
  out.radius = radius;
  out.tail_estimate = tail;
  out.fn = [=, s = std::move(s)](const Vec& u) { return sum_to(radius, u); };
  return out;
}

std::vector<GaussianPacket> equivariant_packets(const CartanData& cartan,
                                                const Level& level,
                                                const GaussianPacket& seed,
                                                int radius) {
  const int r = cartan.rank;
  const auto& weyl = cartan.weyl_group();
  Mat omega = Mat::Zero(2 * r, 2 * r);
  omega.block(0, r, r, r) = cartan.gram;
  omega.block(r, 0, r, r) = -cartan.gram;

  std::vector<GaussianPacket> out;
  std::vector<int> idx(2 * r, -radius);
  Eigen::VectorXi n(2 * r);
  while (true) {
    for (int l = 0; l < 2 * r; ++l) n(l) = idx[l];
    Vec lambda = lattice_vector_A0(cartan, n);
    cd chi = lattice_semicharacter(cartan, level, n);
    for (std::size_t wi = 0; wi < weyl.size(); ++wi) {
      Mat w = Mat::Zero(2 * r, 2 * r);
      w.block(0, 0, r, r) = weyl[wi];
      w.block(r, r, r, r) = weyl[wi];
      // chi e^{-(i/2) k omega(lambda, u)} seed(w^T (u - lambda))
      GaussianPacket p = packet_pullback(seed, w.transpose(), w.transpose() * (-lambda));
      CVec lin = (-kI * (0.5 * level.k)) * (omega.transpose() * lambda).cast<cd>();
      p.b += lin;
      p.c += std::log(chi / static_cast<double>(weyl.size()));
      out.push_back(std::move(p));
    }
    int l = 0;
    for (; l < 2 * r; ++l) {
      if (++idx[l] <= radius) break;
      idx[l] = -radius;
    }
    if (l == 2 * r) break;
  }
  return out;
}

}  // namespace cslab
