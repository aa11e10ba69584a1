#include "lproj/var_model.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace lproj {

Matrix VarCoefficients::stacked() const {
  Matrix out(n, n * p);
  for (int l = 0; l < p; ++l) out.middleCols(l * n, n) = lag_blocks[static_cast<std::size_t>(l)];
  return out;
}

VarCoefficients VarCoefficients::from_stacked(int n, int p, const Matrix& stacked,
                                              std::optional<Vector> intercept) {
  if (stacked.rows() != n || stacked.cols() != static_cast<Eigen::Index>(n) * p) {
    throw DimensionMismatch("from_stacked: block row must be n x np");
  }
  VarCoefficients c;
  c.n = n;
  c.p = p;
  c.lag_blocks.reserve(static_cast<std::size_t>(p));
  for (int l = 0; l < p; ++l) c.lag_blocks.push_back(stacked.middleCols(l * n, n));
  c.intercept = std::move(intercept);
  return c;
}

void VarCoefficients::validate() const {
  if (n < 1 || p < 0) throw DomainError("VarCoefficients: need n >= 1, p >= 0");
  if (lag_blocks.size() != static_cast<std::size_t>(p)) {
    throw DimensionMismatch("VarCoefficients: expected " + std::to_string(p) + " lag blocks");
  }
  for (const auto& b : lag_blocks) {
    if (b.rows() != n || b.cols() != n) throw DimensionMismatch("VarCoefficients: block not n x n");
    if (!b.allFinite()) throw DomainError("VarCoefficients: non-finite block entry");
  }
  if (intercept && intercept->size() != n) {
    throw DimensionMismatch("VarCoefficients: intercept must have length n");
  }
}

CompanionMatrix companion(const VarCoefficients& coeffs) {
  coeffs.validate();
  const int n = coeffs.n, p = coeffs.p;
  if (p == 0) return CompanionMatrix{Matrix::Zero(n, n)};
  Matrix c = Matrix::Zero(static_cast<Eigen::Index>(n) * p, static_cast<Eigen::Index>(n) * p);
  c.topRows(n) = coeffs.stacked();
  if (p > 1) c.bottomLeftCorner(n * (p - 1), n * (p - 1)).setIdentity();
  return CompanionMatrix{std::move(c)};
}

double spectral_radius(const Matrix& m) {
  return m.eigenvalues().cwiseAbs().maxCoeff();
}

ImpulseResponseSet impulse_responses(const VarCoefficients& coeffs, int max_horizon) {
  coeffs.validate();
  if (max_horizon < 0) throw DomainError("impulse_responses: max_horizon < 0");
  ImpulseResponseSet set;
  set.responses.reserve(static_cast<std::size_t>(max_horizon) + 1);
  set.responses.push_back(Matrix::Identity(coeffs.n, coeffs.n));
  for (int h = 1; h <= max_horizon; ++h) {
    Matrix r = Matrix::Zero(coeffs.n, coeffs.n);
    for (int l = 1; l <= std::min(h, coeffs.p); ++l) {
      r += coeffs.lag_blocks[static_cast<std::size_t>(l - 1)] *
           set.responses[static_cast<std::size_t>(h - l)];
    }
    set.responses.push_back(std::move(r));
  }
  return set;
}

VarCoefficients compose_factorized(const FactorizedDgp& dgp) {
  const auto& b = dgp.stationary_poly;
  b.validate();
  const int n = b.n;
  if (dgp.roots.size() != n) throw DimensionMismatch("compose_factorized: roots/poly dimension");
  const int p = b.p + 1;
  const Matrix d = dgp.roots.asDiagonal();

  // A(L) = B(L)(I - D L):  A_1 = D + B_1,  A_l = B_l - B_{l-1} D,  A_p = -B_{p-1} D
  VarCoefficients a;
  a.n = n;
  a.p = p;
  a.lag_blocks.assign(static_cast<std::size_t>(p), Matrix::Zero(n, n));
  a.lag_blocks[0] = d;
  for (int l = 1; l <= b.p; ++l) {
    a.lag_blocks[static_cast<std::size_t>(l - 1)] += b.lag_blocks[static_cast<std::size_t>(l - 1)];
    a.lag_blocks[static_cast<std::size_t>(l)] -= b.lag_blocks[static_cast<std::size_t>(l - 1)] * d;
  }
  return a;
}

VarCoefficients bivariate_var4_dgp(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("bivariate_var4_dgp: rho outside [-1,1]");
  VarCoefficients c;
  c.n = 2;
  c.p = 4;
  c.lag_blocks.assign(4, Matrix::Zero(2, 2));
  // (1 - L/2)^4 = 1 - 2L + 1.5L^2 - 0.5L^3 + 0.0625L^4
  c.lag_blocks[0] << rho, 0.0, 0.5, 2.0;
  c.lag_blocks[1] << 0.0, 0.0, 0.0, -1.5;
  c.lag_blocks[2] << 0.0, 0.0, 0.0, 0.5;
  c.lag_blocks[3] << 0.0, 0.0, 0.0, -0.0625;
  return c;
}

Matrix bivariate_var4_covariance() {
  Matrix s(2, 2);
  s << 1.0, 0.3, 0.3, 1.0;
  return s;
}

InnovationSpec InnovationSpec::iid_gaussian(Matrix cov) {
  InnovationSpec spec;
  spec.kind = Kind::IidGaussian;
  spec.covariance = std::move(cov);
  spec.validate();
  return spec;
}

InnovationSpec InnovationSpec::arch1(double alpha0, double alpha1, Matrix loading) {
  InnovationSpec spec;
  spec.kind = Kind::Arch1;
  spec.alpha0 = alpha0;
  spec.alpha1 = alpha1;
  spec.loading = std::move(loading);
  spec.validate();
  return spec;
}

int InnovationSpec::dimension() const {
  return static_cast<int>(kind == Kind::IidGaussian ? covariance.rows() : loading.rows());
}

void InnovationSpec::validate() const {
  if (kind == Kind::IidGaussian) {
    if (covariance.rows() != covariance.cols() || covariance.rows() < 1) {
      throw DimensionMismatch("InnovationSpec: covariance must be square");
    }
    if (!covariance.isApprox(covariance.transpose(), 1e-12)) {
      throw DomainError("InnovationSpec: covariance not symmetric");
    }
    Eigen::LLT<Matrix> llt(covariance);
    if (llt.info() != Eigen::Success) {
      throw DomainError("InnovationSpec: covariance not positive definite");
    }
  } else {
    if (!(alpha0 > 0.0)) throw DomainError("InnovationSpec: require alpha0 > 0");
    if (!(alpha1 >= 0.0 && alpha1 < 1.0)) throw DomainError("InnovationSpec: require 0 <= alpha1 < 1");
    if (loading.rows() != loading.cols() || loading.rows() < 1) {
      throw DimensionMismatch("InnovationSpec: loading must be square");
    }
  }
}

Matrix draw_innovations(const InnovationSpec& spec, int T, RngStream& rng) {
  spec.validate();
  const int n = spec.dimension();
  Matrix u(T, n);
  if (spec.kind == InnovationSpec::Kind::IidGaussian) {
    const Matrix chol = Eigen::LLT<Matrix>(spec.covariance).matrixL();
    Vector eps(n);
    for (int t = 0; t < T; ++t) {
      for (int j = 0; j < n; ++j) eps(j) = rng.normal();
      u.row(t) = (chol * eps).transpose();
    }
  } else {
    // componentwise ARCH(1) on e_t, then the loading: u_t = L e_t.
    // e_{j,0}^2 starts at the unconditional level alpha0/(1-alpha1).
    Vector prev_sq = Vector::Constant(n, spec.alpha0 / (1.0 - spec.alpha1));
    Vector e(n);
    for (int t = 0; t < T; ++t) {
      for (int j = 0; j < n; ++j) {
        const double tau = std::sqrt(spec.alpha0 + spec.alpha1 * prev_sq(j));
        e(j) = tau * rng.normal();
        prev_sq(j) = e(j) * e(j);
      }
      u.row(t) = (spec.loading * e).transpose();
    }
  }
  return u;
}

Matrix iterate_recursion(const VarCoefficients& coeffs, const Matrix& innovations,
                         const Matrix& initial_block) {
  coeffs.validate();
  const int n = coeffs.n, p = coeffs.p;
  if (innovations.cols() != n) throw DimensionMismatch("iterate_recursion: innovation dimension");
  if (initial_block.rows() != p || initial_block.cols() != n) {
    throw DimensionMismatch("iterate_recursion: initial block must be p x n");
  }
  const Eigen::Index T = innovations.rows();
  Matrix buf(p + T, n);
  if (p > 0) buf.topRows(p) = initial_block;
  Vector acc(n);
  for (Eigen::Index t = 0; t < T; ++t) {
    acc = innovations.row(t).transpose();
    if (coeffs.intercept) acc += *coeffs.intercept;
    for (int l = 1; l <= p; ++l) {
      acc.noalias() += coeffs.lag_blocks[static_cast<std::size_t>(l - 1)] *
                       buf.row(p + t - l).transpose();
    }
    if (acc.cwiseAbs().maxCoeff() > kExplosiveGuard) {
      throw ExplosiveOverflow("iterate_recursion: |y| exceeded 1e100 at t=" + std::to_string(t));
    }
    buf.row(p + t) = acc.transpose();
  }
  return buf.bottomRows(T);
}

SimulatedSample simulate(const VarCoefficients& coeffs, const InnovationSpec& innovations,
                         int T, RngStream& rng, const SimulateOptions& options) {
  coeffs.validate();
  if (T < coeffs.p + 1) throw InsufficientSample("simulate: need T >= p + 1");
  if (innovations.dimension() != coeffs.n) {
    throw DimensionMismatch("simulate: innovation dimension != n");
  }
  Matrix init;
  if (options.policy == InitialConditionPolicy::Given) {
    if (options.initial_block.rows() != coeffs.p || options.initial_block.cols() != coeffs.n) {
      throw DimensionMismatch("simulate: given initial block must be p x n");
    }
    init = options.initial_block;
  } else {
    init = Matrix::Zero(coeffs.p, coeffs.n);
  }
  const int total = T + options.burn_in;
  const Matrix u = draw_innovations(innovations, total, rng);
  const Matrix y = iterate_recursion(coeffs, u, init);
  SimulatedSample sample;
  sample.data = y.bottomRows(T);
  sample.innovations = u.bottomRows(T);
  sample.burn_in = options.burn_in;
  return sample;
}

}  // namespace lproj
