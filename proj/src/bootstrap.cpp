#include "lproj/bootstrap.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

namespace lproj {

void BootstrapSpec::validate() const {
  if (draws < 50) throw DomainError("BootstrapSpec: need at least 50 draws");
}

namespace {

// Discrete Lyapunov solve G0 = A G0 A' + Q by doubling; requires radius < 1.
Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& q) {
  Matrix x = q;
  Matrix ak = a;
  for (int it = 0; it < 200; ++it) {
    Matrix update = ak * x * ak.transpose();
    x += update;
    if (update.cwiseAbs().maxCoeff() <= 1e-16 * x.cwiseAbs().maxCoeff()) break;
    ak = ak * ak;
  }
  return x;
}

}  // namespace

PopeResult pope_bias_correct(const VarCoefficients& fit, const Matrix& residual_cov, long T) {
  fit.validate();
  const int n = fit.n, p = fit.p;
  const Eigen::Index m = static_cast<Eigen::Index>(n) * p;
  if (residual_cov.rows() != n || residual_cov.cols() != n) {
    throw DimensionMismatch("pope_bias_correct: residual covariance must be n x n");
  }
  PopeResult result;
  result.coefficients = fit;

  const Matrix comp = companion(fit).entries;
  if (spectral_radius(comp) >= 1.0) {
    // unit-root fits must pass through
    result.applied = false;
    result.shrink = 0.0;
    return result;
  }

  Matrix sigma_c = Matrix::Zero(m, m);
  sigma_c.topLeftCorner(n, n) = residual_cov;
  const Matrix gamma0 = solve_discrete_lyapunov(comp, sigma_c);

  using CMatrix = Eigen::MatrixXcd;
  const Matrix ct = comp.transpose();
  const Matrix eye = Matrix::Identity(m, m);
  CMatrix aux = ((eye - ct).lu().solve(eye) + ct * (eye - ct * ct).lu().solve(eye)).cast<std::complex<double>>();
  const Eigen::VectorXcd lambdas = comp.eigenvalues();
  const CMatrix ceye = CMatrix::Identity(m, m);
  const CMatrix cct = ct.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    aux += lambdas(i) * (ceye - lambdas(i) * cct).lu().solve(ceye);
  }
  const Matrix b = (sigma_c.cast<std::complex<double>>() * aux *
                    gamma0.lu().solve(eye).cast<std::complex<double>>())
                       .real();
  const Matrix correction = b.topRows(n) / static_cast<double>(T);

  // shrink the correction toward the uncorrected fit until stationary
  for (double delta = 1.0; delta >= -1e-12; delta -= 0.01) {
    Matrix candidate = fit.stacked() + delta * correction;
    VarCoefficients corrected = VarCoefficients::from_stacked(n, p, candidate, fit.intercept);
    if (spectral_radius(companion(corrected).entries) < 1.0) {
      result.coefficients = std::move(corrected);
      result.applied = delta > 0.0;
      result.shrink = std::max(delta, 0.0);
      return result;
    }
  }
  result.applied = false;
  result.shrink = 0.0;
  return result;
}

namespace detail {

Vector wild_multipliers(int count, BootstrapSpec::Multiplier law, RngStream& rng) {
  Vector u(count);
  if (law == BootstrapSpec::Multiplier::StandardNormal) {
    for (int t = 0; t < count; ++t) u(t) = rng.normal();
  } else {
    for (int t = 0; t < count; ++t) u(t) = rng.uniform() < 0.5 ? -1.0 : 1.0;
  }
  return u;
}

Eigen::Index draw_initial_block_index(Eigen::Index T, int p, RngStream& rng) {
  return static_cast<Eigen::Index>(rng.uniform_int(static_cast<std::uint64_t>(T - p + 1)));
}

WildContext make_wild_context(const Matrix& data, int p, bool bias_correct) {
  WildContext ctx;
  ctx.p = p;
  ctx.var_fit = fit_var_ols(data, p);
  if (bias_correct) {
    PopeResult pope = pope_bias_correct(ctx.var_fit.coefficients, ctx.var_fit.sigma,
                                        ctx.var_fit.effective_sample);
    ctx.boot_dgp = std::move(pope.coefficients);
    ctx.bias_corrected = pope.applied;
  } else {
    ctx.boot_dgp = ctx.var_fit.coefficients;
  }
  return ctx;
}

Matrix wild_recursive_sample(const Matrix& data, const WildContext& ctx,
                             BootstrapSpec::Multiplier law, RngStream& rng) {
  const Eigen::Index T = data.rows();
  const int p = ctx.p;
  const Eigen::Index nres = ctx.var_fit.residuals.rows();
  const Vector u = wild_multipliers(static_cast<int>(nres), law, rng);
  const Matrix star_innovations = ctx.var_fit.residuals.array().colwise() * u.array();
  const Eigen::Index j = draw_initial_block_index(T, p, rng);

  Matrix sample(T, data.cols());
  sample.topRows(p) = data.middleRows(j, p);
  sample.bottomRows(T - p) = iterate_recursion(ctx.boot_dgp, star_innovations, sample.topRows(p));
  return sample;
}

std::pair<double, double> percentile_t_interval(double point, double se,
                                                std::vector<double> t_stats, double level) {
  const double alpha = 1.0 - level;
  std::sort(t_stats.begin(), t_stats.end());
  const double q_lo = quantile_sorted(t_stats, alpha / 2.0);
  const double q_hi = quantile_sorted(t_stats, 1.0 - alpha / 2.0);
  return {point - se * q_hi, point - se * q_lo};
}

std::pair<double, double> efron_interval(std::vector<double> point_stats, double level) {
  const double alpha = 1.0 - level;
  std::sort(point_stats.begin(), point_stats.end());
  return {quantile_sorted(point_stats, alpha / 2.0),
          quantile_sorted(point_stats, 1.0 - alpha / 2.0)};
}

BootstrapDraws lp_wild_draws(const Matrix& data, const LpSpec& lp_spec,
                             const BootstrapSpec& boot_spec, double level, RngStream& rng) {
  const WildContext ctx = make_wild_context(data, lp_spec.control_lags, boot_spec.bias_correct);
  const auto var_irfs = impulse_responses(ctx.boot_dgp, lp_spec.horizon);

  BootstrapDraws draws;
  draws.center =
      var_irfs.value(lp_spec.horizon, lp_spec.response_variable, lp_spec.response_weights);
  draws.t_stats.reserve(boot_spec.draws);
  draws.point_stats.reserve(boot_spec.draws);
  draws.se_stats.reserve(boot_spec.draws);

  std::optional<EwcCosines> ewc;
  if (lp_spec.effective_se_kind() == SeKind::EwcHar) {
    const auto probe = detail::build_lp_design(data, lp_spec);
    ewc = EwcCosines::make(static_cast<int>(probe.W.rows()));
  }

  for (int b = 0; b < boot_spec.draws; ++b) {
    try {
      const Matrix sample = wild_recursive_sample(data, ctx, boot_spec.multiplier_law, rng);
      const auto design = detail::build_lp_design(sample, lp_spec);
      const auto [report, internals] =
          detail::lp_fit_design(design, lp_spec, level, ewc ? &*ewc : nullptr);
      if (!std::isfinite(report.point) || !(report.se > 0.0)) {
        ++draws.failed;
        continue;
      }
      draws.point_stats.push_back(report.point);
      draws.se_stats.push_back(report.se);
      draws.t_stats.push_back((report.point - draws.center) / report.se);
    } catch (const Error&) {
      ++draws.failed;
    }
  }
  if (draws.failed > boot_spec.draws / 10) {
    throw TooManyFailedDraws("bootstrap: " + std::to_string(draws.failed) + " of " +
                             std::to_string(boot_spec.draws) + " draws failed");
  }
  return draws;
}

}  // namespace detail

EstimateReport lp_percentile_t(const Matrix& data, const LpSpec& lp_spec,
                               const BootstrapSpec& boot_spec, double level, RngStream& rng) {
  boot_spec.validate();
  if (boot_spec.kind != BootstrapSpec::Kind::WildRecursive) {
    throw DomainError("lp_percentile_t: spec must request the wild recursive design");
  }
  if (boot_spec.interval != BootstrapSpec::Interval::PercentileT) {
    // Efron quantiles of recursive LP draws are centered at the VAR-implied
    // response, not the LP estimate, so that interval is rejected here.
    throw DomainError("lp_percentile_t: spec must request the percentile-t interval");
  }
  auto [report, internals] = lp_estimate(data, lp_spec, level);
  const BootstrapDraws draws = detail::lp_wild_draws(data, lp_spec, boot_spec, level, rng);
  std::tie(report.lo, report.hi) =
      detail::percentile_t_interval(report.point, report.se, draws.t_stats, level);
  report.method += "-boot";
  return report;
}

EstimateReport arla_efron(const Matrix& data, const ArSpec& ar_spec,
                          const BootstrapSpec& boot_spec, double level, RngStream& rng) {
  boot_spec.validate();
  if (!ar_spec.lag_augmented) throw DomainError("arla_efron: spec must be lag-augmented");
  if (boot_spec.interval != BootstrapSpec::Interval::Efron) {
    throw DomainError("arla_efron: spec must request the Efron interval");
  }
  const int n = static_cast<int>(data.cols());
  ar_spec.validate(n);

  // bootstrap DGP: bias-corrected VAR(p), p = lags_estimated - 1
  const int p = ar_spec.lags_estimated - 1;
  const detail::WildContext ctx = detail::make_wild_context(data, p, boot_spec.bias_correct);

  auto arla_point = [&](const Matrix& sample) {
    const VarOlsFit fit = fit_var_ols(sample, ar_spec.lags_estimated);
    VarCoefficients trimmed;
    trimmed.n = n;
    trimmed.p = p;
    trimmed.lag_blocks.assign(fit.coefficients.lag_blocks.begin(),
                              fit.coefficients.lag_blocks.begin() + p);
    return impulse_responses(trimmed, ar_spec.horizon)
        .value(ar_spec.horizon, ar_spec.response_variable, ar_spec.response_weights);
  };

  BootstrapDraws draws;
  draws.point_stats.reserve(boot_spec.draws);
  for (int b = 0; b < boot_spec.draws; ++b) {
    try {
      const Matrix sample =
          detail::wild_recursive_sample(data, ctx, boot_spec.multiplier_law, rng);
      const double pt = arla_point(sample);
      if (!std::isfinite(pt)) {
        ++draws.failed;
        continue;
      }
      draws.point_stats.push_back(pt);
    } catch (const Error&) {
      ++draws.failed;
    }
  }
  if (draws.failed > boot_spec.draws / 10) {
    throw TooManyFailedDraws("arla_efron: " + std::to_string(draws.failed) + " of " +
                             std::to_string(boot_spec.draws) + " draws failed");
  }

  EstimateReport report;
  report.point = arla_point(data);
  report.se = 0.0;
  report.level = level;
  report.effective_sample = static_cast<long>(data.rows()) - ar_spec.lags_estimated;
  report.method = "ar-la-efron";
  std::tie(report.lo, report.hi) = detail::efron_interval(draws.point_stats, level);
  return report;
}

EstimateReport lp_pairs_bootstrap(const Matrix& data, const LpSpec& lp_spec,
                                  const BootstrapSpec& boot_spec, double level, RngStream& rng) {
  boot_spec.validate();
  if (boot_spec.kind != BootstrapSpec::Kind::Pairs) {
    throw DomainError("lp_pairs_bootstrap: spec must request the pairs design");
  }
  const auto design = detail::build_lp_design(data, lp_spec);
  const auto ewc = lp_spec.effective_se_kind() == SeKind::EwcHar
                       ? std::optional<detail::EwcCosines>(
                             detail::EwcCosines::make(static_cast<int>(design.W.rows())))
                       : std::nullopt;
  auto [report, internals] = detail::lp_fit_design(design, lp_spec, level, ewc ? &*ewc : nullptr);

  const Eigen::Index N = design.W.rows();
  detail::LpDesign resampled = design;
  BootstrapDraws draws;
  draws.center = report.point;
  for (int b = 0; b < boot_spec.draws; ++b) {
    for (Eigen::Index t = 0; t < N; ++t) {
      const auto idx = static_cast<Eigen::Index>(rng.uniform_int(static_cast<std::uint64_t>(N)));
      resampled.W.row(t) = design.W.row(idx);
      resampled.z(t) = design.z(idx);
    }
    try {
      const auto [r, unused] =
          detail::lp_fit_design(resampled, lp_spec, level, ewc ? &*ewc : nullptr);
      if (!std::isfinite(r.point) || !(r.se > 0.0)) {
        ++draws.failed;
        continue;
      }
      draws.point_stats.push_back(r.point);
      draws.se_stats.push_back(r.se);
      draws.t_stats.push_back((r.point - draws.center) / r.se);
    } catch (const Error&) {
      ++draws.failed;
    }
  }
  if (draws.failed > boot_spec.draws / 10) {
    throw TooManyFailedDraws("lp_pairs_bootstrap: " + std::to_string(draws.failed) + " of " +
                             std::to_string(boot_spec.draws) + " draws failed");
  }

  if (boot_spec.interval == BootstrapSpec::Interval::PercentileT) {
    std::tie(report.lo, report.hi) =
        detail::percentile_t_interval(report.point, report.se, draws.t_stats, level);
  } else {
    std::tie(report.lo, report.hi) = detail::efron_interval(draws.point_stats, level);
  }
  report.method += "-pairs";
  return report;
}

}  // namespace lproj
