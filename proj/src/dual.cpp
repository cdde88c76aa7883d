#include "cslab/dual.hpp"

#include <cmath>

#include "cslab/errors.hpp"
#include "cslab/quadrature.hpp"

namespace cslab {

DualElement dual_point_eval_q(const Vec& q0) {
  DualElement t;
  t.fock_side = false;
  t.pair = [q0](const Section& psi) {
    if (psi.basis->family != BasisFamily::hermite)
      fail(ErrorCode::BasisMismatch, "point functional pairs with hermite sections");
    return std::conj(evaluate_wave(psi, q0));
  };
  return t;
}

DualElement dual_point_eval_z(const CVec& z0) {
  DualElement t;
  t.fock_side = true;
  t.pair = [z0](const Section& f) {
    if (f.basis->family != BasisFamily::fock)
      fail(ErrorCode::BasisMismatch, "point functional pairs with fock sections");
    return std::conj(evaluate_wave(f, z0));
  };
  return t;
}

DualElement dual_regular_hermite(std::function<cd(const Vec&)> payload, const Level& level,
                                 int rank, int nodes_per_axis) {
  DualElement t;
  t.fock_side = false;
  const double h = level.hbar();
  t.pair = [payload = std::move(payload), h, rank, nodes_per_axis](const Section& psi) {
    if (psi.basis->family != BasisFamily::hermite)
      fail(ErrorCode::BasisMismatch, "slice functional pairs with hermite sections");
    GaussHermiteRule rule = gauss_hermite_scaled(nodes_per_axis, std::sqrt(h));
    auto f = [&](const Vec& q) { return payload(q) * std::conj(evaluate_wave(psi, q)); };
    return tensor_integrate(rule, 2 * rank, f);
  };
  return t;
}

DualElement dual_regular_fock(std::function<cd(const CVec&)> payload, const Level& level,
                              int rank, int nodes_per_axis) {
  DualElement t;
  t.fock_side = true;
  const double h = level.hbar();
  const int m = 2 * rank;
  t.pair = [payload = std::move(payload), h, m, nodes_per_axis](const Section& f) {
    if (f.basis->family != BasisFamily::fock)
      fail(ErrorCode::BasisMismatch, "fock functional pairs with fock sections");
    GaussHermiteRule rule = gauss_hermite_scaled(nodes_per_axis, std::sqrt(h));
    auto g = [&](const Vec& xy) {
      CVec z(m);
      for (int l = 0; l < m; ++l) z(l) = cd(xy(l), xy(m + l));
      double w = std::exp(-z.squaredNorm() / (2.0 * h));
      return payload(z) * std::conj(evaluate_wave(f, z)) * w;
    };
    cd val = tensor_integrate(rule, 2 * m, g);
    return std::pow(2.0 * M_PI * h, -m) * val;
  };
  return t;
}

DualElement dual_combo(const std::vector<std::pair<cd, DualElement>>& parts) {
  if (parts.empty()) fail(ErrorCode::InvalidArgument, "empty combination");
  DualElement t;
  t.fock_side = parts.front().second.fock_side;
  for (const auto& [c, e] : parts)
    if (e.fock_side != t.fock_side)
      fail(ErrorCode::BasisMismatch, "combination mixes the two sides");
  t.pair = [parts](const Section& s) {
    cd acc = 0.0;
    for (const auto& [c, e] : parts) acc += c * e.pair(s);
    return acc;
  };
  return t;
}

DualElement transpose_bargmann(const DualElement& T) {
  if (!T.fock_side) fail(ErrorCode::BasisMismatch, "transpose maps fock-side functionals");
  DualElement out;
  out.fock_side = false;
  out.pair = [T](const Section& psi) { return T.pair(bargmann_closed_form(psi)); };
  return out;
}

WeylOp hw_potential_weyl(const TeichmullerPoint& tau, const Level& level,
                         const CartanData& cartan, const Eigen::Vector2d& V) {
  const int n = 2 * cartan.rank;
  const Variations var = build_variations(tau, level, cartan);
  const Mat omega = static_cast<double>(level.k) * omega_A0(cartan.rank);
  const cd tt = level.t();
  const cd wt{V(0), V(1)};  // dtau component of the direction
  // u(V) = -(1/t) Lap_{G(dtau)} wt + (1/conj t) Lap_{G(dtaubar)} conj(wt)
  WeylOp lap_tau = laplacian_weyl(omega, var.G_A0_tau);
  WeylOp lap_taubar = laplacian_weyl(omega, var.G_A0_taubar);
  WeylOp out(n);
  out += lap_tau * (-wt / tt);
  out += lap_taubar * (std::conj(wt) / std::conj(tt));
  return out;
}

}  // namespace cslab
