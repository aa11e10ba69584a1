#pragma once

#include "lproj/projection.hpp"

namespace lproj {

struct ArSpec {
  int lags_estimated = 1;     // p for textbook AR, p+1 for lag-augmented
  int horizon = 1;
  int response_variable = 0;  // 0-based
  Vector response_weights;
  bool lag_augmented = false;
  bool bias_correct = false;  // Pope-correct the fit before the IRF map
  SeKind se_kind = SeKind::Ehw;

  void validate(int n) const;
};

// Plain OLS VAR fit (intercept first regressor column when present).
struct VarOlsFit {
  VarCoefficients coefficients;
  Matrix residuals;   // N x n
  Matrix sigma;       // residual covariance, divisor N
  Matrix regressors;  // N x k design (kept for sandwich covariances)
  Matrix xtx_inverse;
  long effective_sample = 0;
  bool intercept = false;
};

VarOlsFit fit_var_ols(const Matrix& data, int p, bool intercept = true);

// Gradient of nu' beta_i(A,h) with respect to the free coefficients,
// ordered by (equation r, stacked column c): index = r * np + c.
struct IrfJacobian {
  Vector gradient;
  bool singular = false;  // exactly zero gradient
};

IrfJacobian irf_jacobian(const VarCoefficients& coeffs, int h, const Vector& nu,
                         int response_variable);

// Heteroskedasticity-robust covariance of the stacked coefficient vector
// (equation-major, k columns per equation including any intercept):
// Cov(b_i, b_j) = (W'W)^-1 (sum_t e_it e_jt w_t w_t') (W'W)^-1.
Matrix coefficient_covariance(const VarOlsFit& fit, SeKind kind);

EstimateReport ar_estimate(const Matrix& data, const ArSpec& spec, double level);

}  // namespace lproj
