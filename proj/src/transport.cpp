#include "cslab/transport.hpp"

#include <cmath>
#include <sstream>

#include "cslab/errors.hpp"
#include "cslab/quadrature.hpp"

namespace cslab {

namespace {
const cd kI{0.0, 1.0};
}

bool TeichPath::closed(double tol) const {
  if (waypoints.size() < 2) return false;
  const auto& a = waypoints.front();
  const auto& b = waypoints.back();
  return std::abs(a.tau1 - b.tau1) < tol && std::abs(a.tau2 - b.tau2) < tol;
}

double TeichPath::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    double d1 = waypoints[i].tau1 - waypoints[i - 1].tau1;
    double d2 = waypoints[i].tau2 - waypoints[i - 1].tau2;
    len += std::hypot(d1, d2);
  }
  return len;
}

cd parse_complex(const std::string& text) {
  // forms: "a", "a+bi", "a-bi", "bi"
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail(ErrorCode::ConfigError, "empty complex literal");
  if (s.back() != 'i') return cd(std::stod(s), 0.0);
  s.pop_back();
  // split at the last +/- that is not an exponent sign or leading
  int split = -1;
  for (int i = static_cast<int>(s.size()) - 1; i > 0; --i) {
    char c = s[static_cast<std::size_t>(i)];
    if ((c == '+' || c == '-') && s[static_cast<std::size_t>(i - 1)] != 'e' &&
        s[static_cast<std::size_t>(i - 1)] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (split < 0) {
      std::string im = s.empty() || s == "+" ? "1" : (s == "-" ? "-1" : s);
      return cd(0.0, std::stod(im));
    }
    std::string re = s.substr(0, static_cast<std::size_t>(split));
    std::string im = s.substr(static_cast<std::size_t>(split));
    if (im == "+" ) im = "1";
    if (im == "-") im = "-1";
    return cd(std::stod(re), std::stod(im));
  } catch (const std::exception&) {
    fail(ErrorCode::ConfigError, "bad complex literal: " + text);
  }
}

TeichPath parse_path(const std::string& text, int steps_per_segment) {
  TeichPath path;
  path.steps_per_segment = steps_per_segment;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    cd tau = parse_complex(item);
    path.waypoints.emplace_back(tau.real(), tau.imag());
  }
  if (path.waypoints.size() < 2) fail(ErrorCode::ConfigError, "path needs two waypoints");
  return path;
}

Section delta_derivative(const SectionFamily& family, const TeichmullerPoint& tau,
                         TauDir dir, double step, double consistency) {
  auto diff = [&](double h) {
    // central differences in tau1 and tau2, combined into the Wirtinger pair
    Section p1 = family.at({tau.tau1 + h, tau.tau2});
    Section m1 = family.at({tau.tau1 - h, tau.tau2});
    Section p2 = family.at({tau.tau1, tau.tau2 + h});
    Section m2 = family.at({tau.tau1, tau.tau2 - h});
    CVec d1 = (p1.coeffs - m1.coeffs) / (2.0 * h);
    CVec d2 = (p2.coeffs - m2.coeffs) / (2.0 * h);
    if (dir == TauDir::d_tau) return CVec(0.5 * (d1 - kI * d2));
    return CVec(0.5 * (d1 + kI * d2));
  };
  CVec coarse = diff(step);
  CVec fine = diff(step / 2.0);
  CVec rich = (4.0 * fine - coarse) / 3.0;
  double scale = std::max(1.0, rich.norm());
  if ((fine - coarse).norm() / scale > consistency)
    fail(ErrorCode::NotDifferentiable, "finite differences failed to settle");
  Section out = family.at(tau);
  out.coeffs = rich;
  return out;
}

TransportResult transport(const TransportFamily& fam, const Basis& basis,
                          const TeichPath& path, const Section& initial) {
  if (initial.coeffs.size() != basis.size())
    fail(ErrorCode::DimensionMismatch, "initial section does not match the basis");
  if (max_degree_of(basis, initial.coeffs, 0.0) > basis.degree - 4)
    fail(ErrorCode::DegreeOverflow, "transport needs 4 degrees of headroom");

  CVec c = initial.coeffs;
  const double norm0 = c.norm();
  for (std::size_t seg = 1; seg < path.waypoints.size(); ++seg) {
    const TeichmullerPoint& a = path.waypoints[seg - 1];
    const TeichmullerPoint& b = path.waypoints[seg];
    const cd w{b.tau1 - a.tau1, b.tau2 - a.tau2};
    const int n = path.steps_per_segment;
    const double ds = 1.0 / n;
    auto rhs = [&](double s, const CVec& y) -> CVec {
      TeichmullerPoint tau{a.tau1 + s * (b.tau1 - a.tau1), a.tau2 + s * (b.tau2 - a.tau2)};
      CMat theta = w * fam.at(tau, TauDir::d_tau) + std::conj(w) * fam.at(tau, TauDir::d_tau_bar);
      return CVec(-(theta * y));
    };
    for (int i = 0; i < n; ++i) {
      double s = i * ds;
      CVec k1 = rhs(s, c);
      CVec k2 = rhs(s + 0.5 * ds, c + 0.5 * ds * k1);
      CVec k3 = rhs(s + 0.5 * ds, c + 0.5 * ds * k2);
      CVec k4 = rhs(s + ds, c + ds * k3);
      c += (ds / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  TransportResult out;
  out.endpoint = initial;
  out.endpoint.tau = path.waypoints.back();
  out.endpoint.coeffs = c;
  out.norm_drift = std::abs(c.norm() - norm0);
  return out;
}

TransportResult transport_checked(const TransportFamily& fam, const Basis& basis,
                                  const TeichPath& path, const Section& initial,
                                  double tol) {
  TransportResult coarse = transport(fam, basis, path, initial);
  TeichPath fine_path = path;
  fine_path.steps_per_segment *= 2;
  TransportResult fine = transport(fam, basis, fine_path, initial);
  if ((coarse.endpoint.coeffs - fine.endpoint.coeffs).norm() > 10.0 * tol)
    fail(ErrorCode::StepUnstable, "halving the step moved the endpoint past tolerance");
  return fine;
}

CMat holonomy(const TransportFamily& fam, const Basis& basis, const TeichPath& loop,
              int block_degree) {
  if (!loop.closed()) fail(ErrorCode::InvalidArgument, "holonomy needs a closed loop");
  std::vector<int> block;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.set.degree(i) <= block_degree) block.push_back(i);
  CMat hol(block.size(), block.size());
  for (std::size_t col = 0; col < block.size(); ++col) {
    Section e;
    e.basis = nullptr;
    e.tau = loop.waypoints.front();
    e.coeffs = CVec::Zero(basis.size());
    e.coeffs(block[col]) = 1.0;
    TransportResult r = transport(fam, basis, loop, e);
    for (std::size_t row = 0; row < block.size(); ++row)
      hol(static_cast<int>(row), static_cast<int>(col)) = r.endpoint.coeffs(block[row]);
  }
  return hol;
}

TeichPath circle_loop(const TeichmullerPoint& center, double radius, int segments,
                      int steps_per_segment) {
  TeichPath path;
  path.steps_per_segment = steps_per_segment;
  for (int i = 0; i <= segments; ++i) {
    double a = 2.0 * M_PI * i / segments;
    path.waypoints.emplace_back(center.tau1 + radius * std::cos(a),
                                center.tau2 + radius * std::sin(a));
  }
  return path;
}

// ---------------------------------------------------------------------------

MCGElement MCGElement::S() {
  MCGElement g;
  g.m << 0, -1, 1, 0;
  return g;
}

MCGElement MCGElement::T() {
  MCGElement g;
  g.m << 1, 1, 0, 1;
  return g;
}

MCGElement MCGElement::identity() {
  MCGElement g;
  g.m.setIdentity();
  return g;
}

TeichmullerPoint mcg_act(const MCGElement& g, const TeichmullerPoint& tau) {
  if (g.m.determinant() != 1) fail(ErrorCode::InvalidArgument, "mapping class needs det 1");
  cd t = tau.tau();
  cd num = static_cast<double>(g.m(0, 0)) * t + static_cast<double>(g.m(0, 1));
  cd den = static_cast<double>(g.m(1, 0)) * t + static_cast<double>(g.m(1, 1));
  cd img = num / den;
  return {img.real(), img.imag()};
}

Mat mcg_point_matrix(const MCGElement& g, int rank) {
  if (g.m.determinant() != 1) fail(ErrorCode::InvalidArgument, "mapping class needs det 1");
  // inverse-transpose on each (dx, dy) coefficient pair
  Eigen::Matrix2d gi;
  gi << g.m(1, 1), -g.m(1, 0), -g.m(0, 1), g.m(0, 0);  // inverse of det-1 integer matrix
  Eigen::Matrix2d it = gi.transpose();
  Mat block = Mat::Zero(2 * rank, 2 * rank);
  for (int j = 0; j < rank; ++j) {
    block(j, j) = it(0, 0);
    block(j, j + rank) = it(0, 1);
    block(j + rank, j) = it(1, 0);
    block(j + rank, j + rank) = it(1, 1);
  }
  Mat full = Mat::Zero(4 * rank, 4 * rank);
  full.block(0, 0, 2 * rank, 2 * rank) = block;
  full.block(2 * rank, 2 * rank, 2 * rank, 2 * rank) = block;
  return full;
}

CMat mcg_frame_change(const MCGElement& g, const TeichmullerPoint& tau,
                      const Level& level, const CartanData& cartan, double* mixing) {
  const int n = 2 * cartan.rank;
  TeichmullerPoint gtau = mcg_act(g, tau);
  FrameSet fs = build_frames(tau, level, cartan);
  FrameSet fg = build_frames(gtau, level, cartan);
  Mat p = mcg_point_matrix(g, cartan.rank);
  // z_{g tau}(P x) = [A B] (z_tau(x), zbar_tau(x)); solve on the stacked rows
  CMat lhs = fg.z_rows() * p.cast<cd>();
  CMat stack(2 * n, 4 * cartan.rank);
  stack.topRows(n) = fs.z_rows();
  stack.bottomRows(n) = fs.zbar_rows();
  CMat sol = lhs * stack.inverse();
  if (mixing) *mixing = sol.rightCols(n).cwiseAbs().maxCoeff();
  return sol.leftCols(n);
}

Mat mcg_q_frame_change(const MCGElement& g, const TeichmullerPoint& tau,
                       const Level& level, const CartanData& cartan, double* mixing) {
  const int n = 2 * cartan.rank;
  TeichmullerPoint gtau = mcg_act(g, tau);
  FrameSet fs = build_frames(tau, level, cartan);
  FrameSet fg = build_frames(gtau, level, cartan);
  Mat p = mcg_point_matrix(g, cartan.rank);
  Mat lhs = fg.coords.bottomRows(n) * p;  // q_{g tau} o P in (u,v)
  Mat sol = lhs * fs.frame;               // back to (p, q) coefficients
  if (mixing) *mixing = sol.leftCols(n).cwiseAbs().maxCoeff();
  return sol.rightCols(n);
}

CMat fock_substitution(const Basis& fock, const CMat& L) {
  if (fock.family != BasisFamily::fock) fail(ErrorCode::BasisMismatch, "fock basis expected");
  const int n = 2 * fock.rank;
  const int dim = fock.size();
  // columns: image of each monomial under z -> L z, built by repeated
  // multiplication with the linear forms (L z)_j
  CMat out = CMat::Zero(dim, dim);
  std::vector<int> zero(n, 0);
  for (int i = 0; i < dim; ++i) {
    const auto& e = fock.set.exponents(i);
    CVec acc = CVec::Zero(dim);
    acc(fock.set.find(zero)) = 1.0;
    for (int j = 0; j < n; ++j) {
      for (int rep = 0; rep < e[j]; ++rep) {
        CVec next = CVec::Zero(dim);
        for (int idx = 0; idx < dim; ++idx) {
          if (acc(idx) == cd(0.0)) continue;
          std::vector<int> f = fock.set.exponents(idx);
          for (int l = 0; l < n; ++l) {
            if (L(j, l) == cd(0.0)) continue;
            f[l] += 1;
            int target = fock.set.find(f);
            f[l] -= 1;
            if (target >= 0) next(target) += acc(idx) * L(j, l);
          }
        }
        acc = next;
      }
    }
    out.col(i) = acc;
  }
  return out;
}

CMat hermite_substitution(const Basis& hermite, const Level& level, const Mat& A,
                          int nodes_per_axis) {
  if (hermite.family != BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "hermite basis expected");
  const int m = 2 * hermite.rank;
  const double h = level.hbar();
  GaussHermiteRule rule = gauss_hermite_scaled(nodes_per_axis, std::sqrt(h));
  const int dim = hermite.size();
  // S_{mn} = int h_m(q) h_n(A q) dq  (projection of the substituted basis)
  CMat out = CMat::Zero(dim, dim);
  // iterate quadrature nodes once, accumulating the rank-one updates
  const int nn = nodes_per_axis;
  std::vector<int> idx(m, 0);
  Vec q(m);
  while (true) {
    double w = 1.0;
    for (int d = 0; d < m; ++d) {
      q(d) = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    Vec qa = A * q;
    // per-axis tables
    Eigen::VectorXd vals_q(dim), vals_qa(dim);
    std::vector<std::vector<double>> tq(m), ta(m);
    for (int d = 0; d < m; ++d) {
      tq[d].resize(hermite.degree + 1);
      ta[d].resize(hermite.degree + 1);
      for (int deg = 0; deg <= hermite.degree; ++deg) {
        tq[d][deg] = hermite_value(deg, q(d), h);
        ta[d][deg] = hermite_value(deg, qa(d), h);
      }
    }
    for (int i = 0; i < dim; ++i) {
      const auto& e = hermite.set.exponents(i);
      double pq = 1.0, pa = 1.0;
      for (int d = 0; d < m; ++d) {
        pq *= tq[d][e[d]];
        pa *= ta[d][e[d]];
      }
      vals_q(i) = pq;
      vals_qa(i) = pa;
    }
    out += w * (vals_q * vals_qa.transpose()).cast<cd>();
    int d = 0;
    for (; d < m; ++d) {
      if (++idx[d] < nn) break;
      idx[d] = 0;
    }
    if (d == m) break;
  }
  return out;
}

Section mcg_act_section(const MCGElement& g, const Section& s, const CartanData& cartan) {
  TeichmullerPoint gtau = mcg_act(g, s.tau);
  Section out = s;
  out.tau = gtau;
  if (s.basis->family == BasisFamily::fock) {
    double mixing = 0.0;
    CMat u = mcg_frame_change(g, s.tau, s.level, cartan, &mixing);
    if (mixing > 1e-9)
      fail(ErrorCode::InvalidArgument, "frame change mixes holomorphic types");
    CMat sub = fock_substitution(*s.basis, CMat(u.inverse()));
    out.coeffs = sub * s.coeffs;
    return out;
  }
  if (s.basis->family == BasisFamily::hermite) {
    double mixing = 0.0;
    Mat a = mcg_q_frame_change(g, s.tau, s.level, cartan, &mixing);
    if (mixing > 1e-9)
      fail(ErrorCode::InvalidArgument, "frame change leaves the polarised chart");
    CMat sub = hermite_substitution(*s.basis, s.level, a.inverse(), 64);
    out.coeffs = sub * s.coeffs;
    return out;
  }
  fail(ErrorCode::BasisMismatch, "push-forward supports hermite and fock sections");
}

// ---------------------------------------------------------------------------

IntertwiningReport verify_intertwining(const TeichmullerPoint& tau, const Level& level,
                                       const CartanData& cartan, int degree,
                                       int sample_degree, int samples, Rng& rng) {
  TablePtr ht = table_for(BasisFamily::hermite, cartan.rank, degree, level);
  TablePtr ft = table_for(BasisFamily::fock, cartan.rank, degree, level);
  CMat B = bargmann_matrix(*ft);

  IntertwiningReport rep;
  for (TauDir dir : {TauDir::d_tau, TauDir::d_tau_bar}) {
    CMat W = CMat(transport_generator(*ht, ConnectionKind::hitchin_witten, tau, dir));
    CMat V = CMat(transport_generator(*ft, ConnectionKind::l2, tau, dir));
    CMat defect = B * W - V * B;
    // h_0 first, then random sections within the sample degree
    for (int s = 0; s <= samples; ++s) {
      CVec psi = CVec::Zero(ht->basis().size());
      if (s == 0) {
        psi(0) = 1.0;
      } else {
        for (int i = 0; i < ht->basis().size(); ++i)
          if (ht->basis().set.degree(i) <= sample_degree)
            psi(i) = rng.complex_normal();
      }
      double res = (defect * psi).norm() / psi.norm();
      rep.max_residual = std::max(rep.max_residual, res);
      rep.tested += 1;
    }
  }
  return rep;
}

cd dual_apply(ConnectionKind kind,
              const std::function<DualElement(const TeichmullerPoint&)>& T,
              const SectionFamily& psi, const TeichmullerPoint& tau,
              const Eigen::Vector2d& V, double fd_step) {
  auto pairing = [&](const TeichmullerPoint& at) { return T(at).pair(psi.at(at)); };
  auto fd = [&](double h) {
    TeichmullerPoint plus{tau.tau1 + h * V(0), tau.tau2 + h * V(1)};
    TeichmullerPoint minus{tau.tau1 - h * V(0), tau.tau2 - h * V(1)};
    return (pairing(plus) - pairing(minus)) / (2.0 * h);
  };
  cd coarse = fd(fd_step);
  cd fine = fd(fd_step / 2.0);
  cd deriv = (4.0 * fine - coarse) / 3.0;
  if (std::abs(fine - coarse) > 1e-3 * std::max(1.0, std::abs(deriv)))
    fail(ErrorCode::NotDifferentiable, "pairing derivative failed to settle");

  // nabla_V psi at tau: coefficient derivative plus the transport generator
  Section base = psi.at(tau);
  Section dpsi_tau = delta_derivative(psi, tau, TauDir::d_tau, fd_step);
  Section dpsi_taubar = delta_derivative(psi, tau, TauDir::d_tau_bar, fd_step);
  const cd w{V(0), V(1)};
  TablePtr table = table_for(base.basis->family, base.basis->rank, base.basis->degree,
                             base.level, base.basis->beta_degree);
  SpMat th_tau = transport_generator(*table, kind, tau, TauDir::d_tau);
  SpMat th_taubar = transport_generator(*table, kind, tau, TauDir::d_tau_bar);
  CVec nabla = w * (dpsi_tau.coeffs + th_tau * base.coeffs) +
               std::conj(w) * (dpsi_taubar.coeffs + th_taubar * base.coeffs);
  Section nabla_sec = base;
  nabla_sec.coeffs = nabla;
  return deriv - T(tau).pair(nabla_sec);
}

}  // namespace cslab
