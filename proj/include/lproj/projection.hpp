#pragma once

#include <optional>
#include <string>
#include <utility>

#include "lproj/numeric.hpp"
#include "lproj/var_model.hpp"

namespace lproj {

enum class SeKind { Ehw, Homoskedastic, EwcHar };

struct LpSpec {
  int horizon = 1;
  int response_variable = 0;  // 0-based
  Vector response_weights;    // nu, length n
  bool lag_augmented = true;
  int control_lags = 1;       // model order p; the regression controls for
                              // p lags when augmented, p-1 otherwise
  bool intercept = true;
  std::optional<SeKind> se_kind;  // default: Ehw when augmented, EwcHar otherwise

  SeKind effective_se_kind() const {
    return se_kind.value_or(lag_augmented ? SeKind::Ehw : SeKind::EwcHar);
  }
  void validate(int n) const;
};

struct EstimateReport {
  double point = 0.0;
  double se = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double level = 0.0;
  long effective_sample = 0;
  std::string method;
  std::optional<int> degrees_of_freedom_used;  // HAR only
  bool degenerate = false;                     // zero-gradient delta interval
};

struct LpInternals {
  Matrix residualized_regressor;  // u_hat_t(h), N x n
  Vector lp_residuals;            // xi_hat_t(h)
  Matrix sigma_hat;               // Sigma_hat(h) = U'U / N
  VarCoefficients var_fit;        // A_hat(h) from the control regression
};

std::pair<EstimateReport, LpInternals> lp_estimate(const Matrix& data, const LpSpec& spec,
                                                   double level);

// EHW sandwich (T-h)^-1 {nu' S^-1 (sum_t xi_t^2 u_t u_t') S^-1 nu}^(1/2).
double ehw_se(const LpInternals& internals, const Vector& nu);

// Equally weighted cosine long-run variance with dof = ceil(0.4 T^(2/3));
// se = sqrt(Omega / T_eff) / regressor_scale.
std::pair<double, int> ewc_har_se(const Vector& scores, double regressor_scale, int T_eff);

double normal_critical_value(double level);
double student_t_critical_value(double level, int dof);

namespace detail {

// Regression rows shared by the estimator and the pairs bootstrap: the LP
// design W = [y_t block | controls], response z = y_{i,t+h}.
struct LpDesign {
  Matrix W;   // N x (n + kc)
  Vector z;   // N
  int n = 0;  // regressor-of-interest block width
  int kc = 0; // control columns (intercept + lagged blocks)
  int control_order = 0;
  bool intercept = false;
};

LpDesign build_lp_design(const Matrix& data, const LpSpec& spec);

// Cached cosine weights for repeated EWC evaluations on a fixed sample size.
struct EwcCosines {
  int t_eff = 0;
  int dof = 0;
  Matrix weights;  // T_eff x dof

  static EwcCosines make(int t_eff);
};

std::pair<EstimateReport, LpInternals> lp_fit_design(const LpDesign& design, const LpSpec& spec,
                                                     double level,
                                                     const EwcCosines* ewc = nullptr);

}  // namespace detail

}  // namespace lproj
