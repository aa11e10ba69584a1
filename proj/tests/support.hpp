#pragma once

// Shared helpers for the unit and acceptance suites.

#include <algorithm>
#include <cmath>

#include "lproj/var_model.hpp"

namespace lproj::testsupport {

inline Vector unit_vector(int n, int i) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

// Random VAR(p) with companion spectral radius rescaled to exactly `radius`
// (scaling A_l by c^l scales every companion eigenvalue by c).
inline VarCoefficients random_stable_var(int n, int p, double radius, RngStream& rng) {
  VarCoefficients c;
  c.n = n;
  c.p = p;
  c.lag_blocks.assign(static_cast<std::size_t>(p), Matrix::Zero(n, n));
  for (auto& block : c.lag_blocks) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) block(i, j) = 0.5 * rng.normal();
    }
  }
  const double r = spectral_radius(companion(c).entries);
  if (r > 0.0) {
    const double scale = radius / r;
    double sl = 1.0;
    for (auto& block : c.lag_blocks) {
      sl *= scale;
      block *= sl;
    }
  }
  return c;
}

// Random Definition-1 instance: roots in [-1, 1], a stationary part B(L)
// with numerically certified decay constants (C, epsilon) such that
// ||B^l|| <= C (1-eps)^l for l = 1..200.
inline FactorizedDgp random_factorized_instance(int n, int order_b, RngStream& rng) {
  FactorizedDgp f;
  f.roots.resize(n);
  for (int i = 0; i < n; ++i) f.roots(i) = -1.0 + 2.0 * rng.uniform();
  f.stationary_poly.n = n;
  f.stationary_poly.p = order_b;
  if (order_b > 0) {
    f.stationary_poly = random_stable_var(n, order_b, 0.3 + 0.5 * rng.uniform(), rng);
  }
  const Matrix bcomp = companion(f.stationary_poly).entries;
  const double r = spectral_radius(bcomp);
  const double one_minus_eps = std::min(0.995, std::max(0.5, r + 0.05));
  f.decay_rate = 1.0 - one_minus_eps;
  double c_needed = 1.0;
  Matrix power = Matrix::Identity(bcomp.rows(), bcomp.cols());
  double decay = 1.0;
  for (int l = 1; l <= 200; ++l) {
    power = bcomp * power;
    decay *= one_minus_eps;
    c_needed = std::max(c_needed, power.norm() / decay);
  }
  f.decay_scale = c_needed;
  return f;
}

inline Matrix simulate_ar1(double rho, int T, RngStream& rng) {
  VarCoefficients c;
  c.n = 1;
  c.p = 1;
  c.lag_blocks = {Matrix::Constant(1, 1, rho)};
  return simulate(c, InnovationSpec::iid_gaussian(Matrix::Identity(1, 1)), T, rng).data;
}

}  // namespace lproj::testsupport
