#include "lproj/autoregression.hpp"

#include <cmath>

#include "lproj/bootstrap.hpp"

namespace lproj {

void ArSpec::validate(int n) const {
  if (lags_estimated < 1) throw DomainError("ArSpec: lags_estimated must be >= 1");
  if (lag_augmented && lags_estimated < 2) {
    throw DomainError("ArSpec: lag augmentation needs lags_estimated >= 2");
  }
  if (horizon < 1) throw DomainError("ArSpec: horizon must be >= 1");
  if (response_variable < 0 || response_variable >= n) {
    throw DomainError("ArSpec: response variable out of range");
  }
  if (response_weights.size() != n) throw DimensionMismatch("ArSpec: nu must have length n");
  if (response_weights.isZero(0.0)) throw DomainError("ArSpec: nu must be nonzero");
}

VarOlsFit fit_var_ols(const Matrix& data, int p, bool intercept) {
  const int n = static_cast<int>(data.cols());
  const Eigen::Index T = data.rows();
  const Eigen::Index N = T - p;
  const int k = (intercept ? 1 : 0) + n * p;
  if (N < k + 5) throw InsufficientSample("fit_var_ols: sample too small for VAR(" +
                                          std::to_string(p) + ")");
  Matrix W(N, k);
  Eigen::Index col = 0;
  if (intercept) W.col(col++).setOnes();
  for (int l = 1; l <= p; ++l) {
    W.middleCols(col, n) = data.middleRows(p - l, N);
    col += n;
  }
  MultiOlsFit fit = ols_multi(data.bottomRows(N), W);

  VarOlsFit out;
  const int off = intercept ? 1 : 0;
  Matrix stacked(n, static_cast<Eigen::Index>(n) * p);
  for (int l = 0; l < p; ++l) {
    stacked.middleCols(static_cast<Eigen::Index>(l) * n, n) =
        fit.coefficients.middleRows(off + static_cast<Eigen::Index>(l) * n, n).transpose();
  }
  std::optional<Vector> c;
  if (intercept) c = fit.coefficients.row(0).transpose();
  out.coefficients = VarCoefficients::from_stacked(n, p, stacked, std::move(c));
  out.residuals = std::move(fit.residuals);
  out.sigma = out.residuals.transpose() * out.residuals / static_cast<double>(N);
  out.regressors = std::move(W);
  out.xtx_inverse = std::move(fit.regressor_cross_product_inverse);
  out.effective_sample = static_cast<long>(N);
  out.intercept = intercept;
  return out;
}

IrfJacobian irf_jacobian(const VarCoefficients& coeffs, int h, const Vector& nu,
                         int response_variable) {
  coeffs.validate();
  if (h < 1) throw DomainError("irf_jacobian: horizon must be >= 1");
  const int n = coeffs.n, p = coeffs.p;
  const Eigen::Index m = static_cast<Eigen::Index>(n) * p;
  const Matrix comp = companion(coeffs).entries;

  // d(A^h) = sum_j A^j (dA) A^(h-1-j); only the top n rows of the companion
  // are free, so the (r,c) derivative is sum_j u_j[r] * w_{h-1-j}[c] with
  // u_j = e_i' J A^j and w_m = A^m J' nu.
  Matrix u(h, m);
  u.setZero();
  u(0, response_variable) = 1.0;
  for (int j = 1; j < h; ++j) u.row(j) = u.row(j - 1) * comp;
  Matrix w(m, h);
  w.setZero();
  w.col(0).head(n) = nu;
  for (int j = 1; j < h; ++j) w.col(j) = comp * w.col(j - 1);

  Matrix grad = Matrix::Zero(n, m);
  for (int j = 0; j < h; ++j) {
    grad += u.row(j).head(n).transpose() * w.col(h - 1 - j).transpose();
  }

  IrfJacobian jac;
  jac.gradient.resize(static_cast<Eigen::Index>(n) * m);
  for (int r = 0; r < n; ++r) jac.gradient.segment(r * m, m) = grad.row(r).transpose();
  jac.singular = jac.gradient.isZero(0.0);
  return jac;
}

Matrix coefficient_covariance(const VarOlsFit& fit, SeKind kind) {
  const int n = static_cast<int>(fit.residuals.cols());
  const Eigen::Index k = fit.regressors.cols();
  Matrix v(static_cast<Eigen::Index>(n) * k, static_cast<Eigen::Index>(n) * k);
  if (kind == SeKind::Homoskedastic) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        v.block(i * k, j * k, k, k) = fit.sigma(i, j) * fit.xtx_inverse;
      }
    }
    return v;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Vector wts = fit.residuals.col(i).cwiseProduct(fit.residuals.col(j));
      const Matrix meat = fit.regressors.transpose() * wts.asDiagonal() * fit.regressors;
      const Matrix block = fit.xtx_inverse * meat * fit.xtx_inverse;
      v.block(i * k, j * k, k, k) = block;
      if (j != i) v.block(j * k, i * k, k, k) = block.transpose();
    }
  }
  return v;
}

EstimateReport ar_estimate(const Matrix& data, const ArSpec& spec, double level) {
  const int n = static_cast<int>(data.cols());
  spec.validate(n);
  VarOlsFit fit = fit_var_ols(data, spec.lags_estimated);

  VarCoefficients estimated = fit.coefficients;
  if (spec.bias_correct) {
    estimated = pope_bias_correct(estimated, fit.sigma, fit.effective_sample).coefficients;
  }

  // lag-augmented: the augmentation block is discarded entirely before the
  // IRF map, generalizing the rho_1^h construction
  const int p_irf = spec.lag_augmented ? spec.lags_estimated - 1 : spec.lags_estimated;
  VarCoefficients irf_coeffs;
  irf_coeffs.n = n;
  irf_coeffs.p = p_irf;
  irf_coeffs.lag_blocks.assign(estimated.lag_blocks.begin(),
                               estimated.lag_blocks.begin() + p_irf);

  const auto irfs = impulse_responses(irf_coeffs, spec.horizon);
  const IrfJacobian jac =
      irf_jacobian(irf_coeffs, spec.horizon, spec.response_weights, spec.response_variable);

  // embed the p_irf-block gradient into the estimated coefficient layout
  // (k columns per equation: intercept first, then lag blocks)
  const Eigen::Index k = fit.regressors.cols();
  const Eigen::Index m_irf = static_cast<Eigen::Index>(n) * p_irf;
  const int off = fit.intercept ? 1 : 0;
  Vector g = Vector::Zero(static_cast<Eigen::Index>(n) * k);
  for (int r = 0; r < n; ++r) {
    g.segment(r * k + off, m_irf) = jac.gradient.segment(r * m_irf, m_irf);
  }

  const Matrix v = coefficient_covariance(fit, spec.se_kind);

  EstimateReport report;
  report.point = irfs.value(spec.horizon, spec.response_variable, spec.response_weights);
  report.se = std::sqrt(std::max(0.0, g.dot(v * g)));
  report.level = level;
  report.effective_sample = fit.effective_sample;
  report.method = spec.lag_augmented ? "ar-la" : "ar";
  report.degenerate = jac.singular;
  const double cv = normal_critical_value(level);
  report.lo = report.point - cv * report.se;
  report.hi = report.point + cv * report.se;
  return report;
}

}  // namespace lproj
