#include "cslab/bargmann.hpp"

#include <cmath>

#include "cslab/errors.hpp"

namespace cslab {

namespace {
const cd kI{0.0, 1.0};
}

CMat bargmann_matrix(const OperatorTable& fock_table) {
  const Basis& b = fock_table.basis();
  if (b.family != BasisFamily::fock)
    fail(ErrorCode::BasisMismatch, "transform matrix targets the fock basis");
  const double h = fock_table.level().hbar();
  const int dim = b.size();
  CMat out = CMat::Zero(dim, dim);
  // graded order guarantees the parent column exists before its children
  for (int i = 0; i < dim; ++i) {
    std::vector<int> e = b.set.exponents(i);
    int j = -1;
    for (int l = 0; l < static_cast<int>(e.size()); ++l)
      if (e[l] > 0) { j = l; break; }
    if (j < 0) {
      out(0, 0) = 1.0;  // ground state maps to the constant
      continue;
    }
    const int nj = e[j];
    e[j] -= 1;
    int parent = b.set.find(e);
    out.col(i) = (-kI / std::sqrt(2.0 * h * nj)) * (fock_table.Z(j) * out.col(parent));
  }
  return out;
}

Section bargmann_closed_form(const Section& position) {
  const Basis& b = *position.basis;
  if (b.family != BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "transform input must be a hermite section");
  TablePtr fock = table_for(BasisFamily::fock, b.rank, b.degree, position.level);
  CMat m = bargmann_matrix(*fock);
  Section out = Section::zero(fock->basis_ptr(), position.tau, position.level);
  // matching monomial sets: indices coincide
  out.coeffs = m * position.coeffs;
  return out;
}

cd bargmann_kernel_point(const std::function<cd(const Vec&)>& psi, const CVec& z,
                         const Level& level, int rank, int nodes_per_axis) {
  const int m = 2 * rank;
  if (z.size() != m) fail(ErrorCode::DimensionMismatch, "transform point dimension");
  const double h = level.hbar();
  GaussHermiteRule rule = gauss_hermite_scaled(nodes_per_axis, std::sqrt(h));
  const cd zz = (z.transpose() * z)(0, 0);
  auto integrand = [&](const Vec& q) {
    cd qz = 0.0;
    for (int l = 0; l < m; ++l) qz += q(l) * z(l);
    cd expo = -(4.0 * kI * qz + 2.0 * q.squaredNorm() - zz) / (4.0 * h);
    return psi(q) * std::exp(expo);
  };
  cd val = tensor_integrate(rule, m, integrand);
  return std::pow(M_PI * h, -0.25 * m) * val;
}

CVec bargmann_quadrature(const Section& position, const std::vector<CVec>& zs,
                         int nodes_per_axis, double tol) {
  const Basis& b = *position.basis;
  if (b.family != BasisFamily::hermite)
    fail(ErrorCode::BasisMismatch, "transform input must be a hermite section");
  auto psi = [&](const Vec& q) { return evaluate_wave(position, q); };
  CVec coarse(zs.size()), fine(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    coarse(static_cast<int>(i)) =
        bargmann_kernel_point(psi, zs[i], position.level, b.rank, nodes_per_axis);
    fine(static_cast<int>(i)) =
        bargmann_kernel_point(psi, zs[i], position.level, b.rank, 2 * nodes_per_axis);
  }
  if ((coarse - fine).lpNorm<Eigen::Infinity>() > tol)
    fail(ErrorCode::QuadratureDiverged, "node doubling changed the transform past tolerance");
  return fine;
}

EquivariantTransform bargmann_equivariant(const SliceFn& s, const FrameSet& fs,
                                          const Level& level, const std::vector<CVec>& zs,
                                          int nodes_per_axis, double tol) {
  const int n = 2 * fs.rank;
  const double h = level.hbar();
  Mat embed = slice_embedding(fs);
  Mat embed_u = embed.topRows(n);
  // wavefunction of the section: psi(q) = s(u(q)) conj(rho)
  auto psi = [&](const Vec& q) {
    Vec x = embed * q;
    return s(embed_u * q) * std::conj(frame_rho(fs, level, x));
  };
  EquivariantTransform out;
  out.values = CVec(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    cd damp = std::exp(-(zs[i].squaredNorm()) / (4.0 * h));
    cd coarse = bargmann_kernel_point(psi, zs[i], level, fs.rank, nodes_per_axis) * damp;
    cd fine = bargmann_kernel_point(psi, zs[i], level, fs.rank, 2 * nodes_per_axis) * damp;
    out.refinement_change = std::max(out.refinement_change, std::abs(fine - coarse));
    out.values(static_cast<int>(i)) = fine;
  }
  if (out.refinement_change > tol)
    fail(ErrorCode::TailTooLarge, "domain expansion did not settle below tolerance");
  return out;
}

cd bargmann_packet_value(const GaussianPacket& packet_u, const FrameSet& fs,
                         const Level& level, const CVec& z) {
  const int n = 2 * fs.rank;
  const double h = level.hbar();
  if (packet_u.dim() != n) fail(ErrorCode::DimensionMismatch, "packet dimension");
  Mat embed = slice_embedding(fs);
  Mat embed_u = embed.topRows(n);
  // pull the packet to the q chart
  GaussianPacket g = packet_pullback(packet_u, embed_u, Vec::Zero(n));
  // conj(rho) on the slice: exp(+(i/(2h)) p(q).q), a quadratic phase
  Mat apq = fs.coords.topRows(n) * embed;
  CMat sym = 0.5 * (apq + apq.transpose()).cast<cd>();
  g.A += (kI / h) * sym;
  // kernel exp(-(1/4h)(4i q.z + 2|q|^2 - z.z))
  g.A += -(1.0 / h) * CMat::Identity(n, n);
  g.b += -(kI / h) * z;
  const cd zz = (z.transpose() * z)(0, 0);
  g.c += zz / (4.0 * h);
  cd val = packet_integral(g);
  cd damp = std::exp(-z.squaredNorm() / (4.0 * h));
  return std::pow(M_PI * h, -0.25 * 2 * fs.rank) * val * damp;
}

cd bounded_representative(const Section& fock, const CVec& z) {
  if (fock.basis->family != BasisFamily::fock)
    fail(ErrorCode::BasisMismatch, "bounded representative needs a fock section");
  const double h = fock.level.hbar();
  return evaluate_wave(fock, z) * std::exp(-z.squaredNorm() / (4.0 * h));
}

}  // namespace cslab
