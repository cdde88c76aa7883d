#pragma once

#include <algorithm>

#include "cslab/bargmann.hpp"
#include "cslab/dual.hpp"
#include "cslab/operators.hpp"
#include "cslab/rng.hpp"
#include "cslab/suites.hpp"
#include "cslab/transport.hpp"
#include "cslab/weylop.hpp"

namespace cslab::detail {

inline Check make_check(std::string id, std::string ref, double residual, double tol) {
  Check c;
  c.id = std::move(id);
  c.ref = std::move(ref);
  c.residual = residual;
  c.tol = tol;
  c.pass = residual < tol;
  return c;
}

inline double rel_fro(const CMat& a, const CMat& b) {
  double scale = std::max(1.0, b.norm());
  return (a - b).norm() / scale;
}

inline double rel_fro(const SpMat& a, const SpMat& b) { return rel_fro(CMat(a), CMat(b)); }

inline double fro(const CMat& a) { return a.norm(); }

// sample points of Teichmueller space and quantum levels for property runs
struct SampleGrid {
  std::vector<TeichmullerPoint> taus;
  std::vector<Level> levels;
};

inline SampleGrid sample_grid(const RunConfig& c, Rng& rng, int extra_taus, int extra_levels) {
  SampleGrid g;
  g.taus = c.taus;
  for (int i = 0; i < extra_taus; ++i)
    g.taus.emplace_back(rng.uniform(-0.8, 0.8), rng.uniform(0.5, 2.0));
  g.levels.push_back(c.level);
  g.levels.emplace_back(c.level.k, 0.0);  // the degenerate s = 0 structure
  for (int i = 0; i < extra_levels; ++i)
    g.levels.emplace_back(rng.uniform_int(1, 4), rng.uniform(-2.0, 2.0));
  return g;
}

inline Vec random_vec(Rng& rng, int n, double scale = 1.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * rng.normal();
  return v;
}

inline CVec random_cvec(Rng& rng, int n, double scale = 1.0) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * rng.complex_normal();
  return v;
}

// random coefficient vector supported on degrees <= cap
inline CVec random_section_coeffs(Rng& rng, const Basis& b, int cap) {
  CVec v = CVec::Zero(b.size());
  for (int i = 0; i < b.size(); ++i)
    if (b.set.degree(i) <= cap) v(i) = rng.complex_normal();
  return v;
}

}  // namespace cslab::detail
