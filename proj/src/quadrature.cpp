#include "cslab/quadrature.hpp"

#include <cmath>

#include "cslab/errors.hpp"

namespace cslab {

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "quadrature order must be >= 1");
  // Jacobi matrix for physicists' Hermite: diagonal 0, off-diagonal sqrt(k/2).
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(0.5 * k);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  const double mu0 = std::sqrt(M_PI);  // int exp(-x^2) dx

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v * v;
  }
  return rule;
}

GaussHermiteRule gauss_hermite_scaled(int n, double sigma) {
  GaussHermiteRule base = gauss_hermite(n);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double a = std::sqrt(2.0) * sigma;
  for (int i = 0; i < n; ++i) {
    double x = base.nodes[i];
    rule.nodes[i] = a * x;
    // fold out the weight: w e^{x^2} * a, so plain sums integrate decaying f
    rule.weights[i] = base.weights[i] * std::exp(x * x) * a;
  }
  return rule;
}

std::complex<double> tensor_integrate(
    const GaussHermiteRule& rule, int dim,
    const std::function<std::complex<double>(const Eigen::VectorXd&)>& f) {
  const int n = static_cast<int>(rule.nodes.size());
  Eigen::VectorXd q(dim);
  std::vector<int> idx(dim, 0);
  std::complex<double> acc = 0.0;
  while (true) {
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      q(d) = rule.nodes[idx[d]];
      w *= rule.weights[idx[d]];
    }
    acc += w * f(q);
    int d = 0;
    for (; d < dim; ++d) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
    if (d == dim) break;
  }
  return acc;
}

}  // namespace cslab
