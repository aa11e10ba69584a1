#include "lproj/projection.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numbers>

namespace lproj {

void LpSpec::validate(int n) const {
  if (horizon < 1) throw DomainError("LpSpec: horizon must be >= 1");
  if (response_variable < 0 || response_variable >= n) {
    throw DomainError("LpSpec: response variable out of range");
  }
  if (response_weights.size() != n) throw DimensionMismatch("LpSpec: nu must have length n");
  if (response_weights.isZero(0.0)) throw DomainError("LpSpec: nu must be nonzero");
  if (control_lags < 1 && lag_augmented) {
    throw DomainError("LpSpec: lag augmentation requires control_lags >= 1");
  }
  if (control_lags < 1) throw DomainError("LpSpec: control_lags must be >= 1");
}

double normal_critical_value(double level) {
  boost::math::normal dist;
  return boost::math::quantile(dist, 0.5 + level / 2.0);
}

double student_t_critical_value(double level, int dof) {
  boost::math::students_t dist(dof);
  return boost::math::quantile(dist, 0.5 + level / 2.0);
}

namespace detail {

LpDesign build_lp_design(const Matrix& data, const LpSpec& spec) {
  const int n = static_cast<int>(data.cols());
  spec.validate(n);
  const int h = spec.horizon;
  const int lags = spec.lag_augmented ? spec.control_lags : spec.control_lags - 1;
  const Eigen::Index T = data.rows();
  const Eigen::Index N = T - h - lags;
  const int kc = (spec.intercept ? 1 : 0) + n * lags;
  if (N < n + kc + 5) {
    throw InsufficientSample("lp_estimate: effective sample " + std::to_string(N) +
                             " too small for " + std::to_string(n + kc) + " regressors");
  }

  LpDesign d;
  d.n = n;
  d.kc = kc;
  d.control_order = lags;
  d.intercept = spec.intercept;
  d.W.resize(N, n + kc);
  d.z.resize(N);
  // rows t = lags .. T-h-1 (0-based), so every lag and the h-step lead exist
  d.W.leftCols(n) = data.middleRows(lags, N);
  Eigen::Index col = n;
  if (spec.intercept) {
    d.W.col(col++).setOnes();
  }
  for (int l = 1; l <= lags; ++l) {
    d.W.middleCols(col, n) = data.middleRows(lags - l, N);
    col += n;
  }
  d.z = data.col(spec.response_variable).segment(lags + h, N);
  return d;
}

EwcCosines EwcCosines::make(int t_eff) {
  EwcCosines c;
  c.t_eff = t_eff;
  c.dof = static_cast<int>(std::ceil(0.4 * std::pow(static_cast<double>(t_eff), 2.0 / 3.0)));
  if (c.dof < 1) throw InsufficientSample("ewc_har_se: dof < 1");
  c.weights.resize(t_eff, c.dof);
  const double scale = std::sqrt(2.0 / t_eff);
  for (int j = 1; j <= c.dof; ++j) {
    for (int t = 1; t <= t_eff; ++t) {
      c.weights(t - 1, j - 1) =
          scale * std::cos(std::numbers::pi * j * (t - 0.5) / static_cast<double>(t_eff));
    }
  }
  return c;
}

std::pair<EstimateReport, LpInternals> lp_fit_design(const LpDesign& design, const LpSpec& spec,
                                                     double level, const EwcCosines* ewc) {
  const int n = design.n;
  const Eigen::Index N = design.W.rows();
  const Vector& nu = spec.response_weights;

  OlsFit full = ols(design.z, design.W);
  const Vector beta1 = full.coefficients.head(n);

  LpInternals internals;
  internals.lp_residuals = full.residuals;
  if (design.kc > 0) {
    // residualize the regressor of interest on the controls
    MultiOlsFit control = ols_multi(design.W.leftCols(n), design.W.rightCols(design.kc));
    internals.residualized_regressor = control.residuals;
    // A_hat(h): coefficient rows after the intercept, transposed to blocks
    const int off = design.intercept ? 1 : 0;
    Matrix a_stacked(n, static_cast<Eigen::Index>(n) * design.control_order);
    for (int l = 0; l < design.control_order; ++l) {
      a_stacked.middleCols(static_cast<Eigen::Index>(l) * n, n) =
          control.coefficients.middleRows(off + static_cast<Eigen::Index>(l) * n, n).transpose();
    }
    internals.var_fit = VarCoefficients::from_stacked(n, design.control_order, a_stacked);
  } else {
    internals.residualized_regressor = design.W.leftCols(n);
    internals.var_fit.n = n;
    internals.var_fit.p = 0;
  }
  internals.sigma_hat = internals.residualized_regressor.transpose() *
                        internals.residualized_regressor / static_cast<double>(N);

  EstimateReport report;
  report.point = nu.dot(beta1);
  report.level = level;
  report.effective_sample = static_cast<long>(N);
  report.method = spec.lag_augmented ? "lp-la" : "lp-na";

  double cv = 0.0;
  switch (spec.effective_se_kind()) {
    case SeKind::Ehw: {
      report.se = ehw_se(internals, nu);
      cv = normal_critical_value(level);
      break;
    }
    case SeKind::Homoskedastic: {
      Eigen::LLT<Matrix> llt(internals.sigma_hat);
      if (llt.info() != Eigen::Success) throw SingularSigma("lp_estimate: singular Sigma_hat");
      const double sig2 = internals.lp_residuals.squaredNorm() / static_cast<double>(N);
      report.se = std::sqrt(sig2 * nu.dot(llt.solve(nu)) / static_cast<double>(N));
      cv = normal_critical_value(level);
      break;
    }
    case SeKind::EwcHar: {
      Eigen::LLT<Matrix> llt(internals.sigma_hat);
      if (llt.info() != Eigen::Success) throw SingularSigma("lp_estimate: singular Sigma_hat");
      const Vector weights = llt.solve(nu);
      const Vector scores =
          internals.lp_residuals.cwiseProduct(internals.residualized_regressor * weights);
      double omega;
      int dof;
      if (ewc != nullptr && ewc->t_eff == static_cast<int>(N)) {
        const Vector lambda = ewc->weights.transpose() * scores;
        omega = lambda.squaredNorm() / ewc->dof;
        dof = ewc->dof;
      } else {
        auto c = EwcCosines::make(static_cast<int>(N));
        const Vector lambda = c.weights.transpose() * scores;
        omega = lambda.squaredNorm() / c.dof;
        dof = c.dof;
      }
      report.se = std::sqrt(omega / static_cast<double>(N));
      report.degrees_of_freedom_used = dof;
      cv = student_t_critical_value(level, dof);
      break;
    }
  }
  report.lo = report.point - cv * report.se;
  report.hi = report.point + cv * report.se;
  return {std::move(report), std::move(internals)};
}

}  // namespace detail

std::pair<EstimateReport, LpInternals> lp_estimate(const Matrix& data, const LpSpec& spec,
                                                   double level) {
  auto design = detail::build_lp_design(data, spec);
  return detail::lp_fit_design(design, spec, level);
}

double ehw_se(const LpInternals& internals, const Vector& nu) {
  const Eigen::Index N = internals.residualized_regressor.rows();
  Eigen::LLT<Matrix> llt(internals.sigma_hat);
  if (llt.info() != Eigen::Success) throw SingularSigma("ehw_se: singular Sigma_hat");
  const Vector weights = llt.solve(nu);
  const Vector scores =
      internals.lp_residuals.cwiseProduct(internals.residualized_regressor * weights);
  return scores.norm() / static_cast<double>(N);
}

std::pair<double, int> ewc_har_se(const Vector& scores, double regressor_scale, int T_eff) {
  if (scores.size() != T_eff) throw DimensionMismatch("ewc_har_se: scores length != T_eff");
  auto cosines = detail::EwcCosines::make(T_eff);
  const Vector lambda = cosines.weights.transpose() * scores;
  const double omega = lambda.squaredNorm() / cosines.dof;
  const double se = std::sqrt(omega / static_cast<double>(T_eff)) / regressor_scale;
  return {se, cosines.dof};
}

}  // namespace lproj
