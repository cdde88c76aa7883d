#pragma once

#include <vector>
#include <functional>
#include <complex>

#include <Eigen/Dense>

namespace cslab {

// One-dimensional Gauss-Hermite rule for the weight exp(-x^2):
//   int f(x) exp(-x^2) dx  ~=  sum_i w[i] f(x[i])
// Exact for polynomials of degree <= 2n-1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch on the Hermite Jacobi matrix.
GaussHermiteRule gauss_hermite(int n);

// Rule transformed for the weight exp(-|q|^2 / (2 sigma^2)) on the real line;
// returned weights absorb the Gaussian so that
//   int f(q) dq  ~=  sum_i w[i] f(q[i])
// holds for f = polynomial * exp(-q^2/(2 sigma^2)) decays. Concretely this is
// the plain rule with q = sqrt(2) sigma x and the e^{+x^2} folded out, i.e. it
// integrates f against Lebesgue measure assuming f carries its own Gaussian.
GaussHermiteRule gauss_hermite_scaled(int n, double sigma);

// Tensor-product quadrature of a function R^dim -> C against Lebesgue measure,
// using the scaled rule per axis (integrand must decay like the Gaussian the
// rule was built for). Deterministic summation order.
std::complex<double> tensor_integrate(
    const GaussHermiteRule& rule_1d, int dim,
    const std::function<std::complex<double>(const Eigen::VectorXd&)>& f);

}  // namespace cslab
