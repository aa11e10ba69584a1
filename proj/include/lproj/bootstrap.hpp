#pragma once

#include "lproj/autoregression.hpp"
#include "lproj/projection.hpp"
#include "lproj/rng.hpp"

namespace lproj {

struct BootstrapSpec {
  enum class Kind { WildRecursive, Pairs };
  enum class Interval { PercentileT, Efron };
  enum class Multiplier { StandardNormal, Rademacher };

  int draws = 2000;
  Kind kind = Kind::WildRecursive;
  Interval interval = Interval::PercentileT;
  bool bias_correct = true;
  Multiplier multiplier_law = Multiplier::StandardNormal;

  void validate() const;
};

struct BootstrapDraws {
  std::vector<double> t_stats;
  std::vector<double> point_stats;
  std::vector<double> se_stats;
  double center = 0.0;  // nu' beta_{1,VAR}(h) for the recursive design
  int failed = 0;
};

struct PopeResult {
  VarCoefficients coefficients;
  bool applied = false;   // false when the uncorrected fit was non-stationary
  double shrink = 1.0;    // scaling used to keep the corrected fit stationary
};

// First-order Pope correction on the companion form:
//   bias = -(1/T) Sigma_c [ (I-A')^-1 + A'(I-A'^2)^-1 + sum_l l (I-l A')^-1 ] Gamma(0)^-1,
// with Gamma(0) the companion Lyapunov solution and l the companion
// eigenvalues. A unit-root fit passes through untouched with applied=false.
PopeResult pope_bias_correct(const VarCoefficients& fit, const Matrix& residual_cov, long T);

// Section-5 wild recursive percentile-t bootstrap for (lag-augmented) LP.
EstimateReport lp_percentile_t(const Matrix& data, const LpSpec& lp_spec,
                               const BootstrapSpec& boot_spec, double level, RngStream& rng);

// Efron interval for the lag-augmented AR estimator over wild recursive
// draws generated from the bias-corrected VAR(p) fit.
EstimateReport arla_efron(const Matrix& data, const ArSpec& ar_spec,
                          const BootstrapSpec& boot_spec, double level, RngStream& rng);

// Fixed-design pairs bootstrap of the LP regression rows; percentile-t or
// Efron intervals.
EstimateReport lp_pairs_bootstrap(const Matrix& data, const LpSpec& lp_spec,
                                  const BootstrapSpec& boot_spec, double level, RngStream& rng);

namespace detail {

Vector wild_multipliers(int count, BootstrapSpec::Multiplier law, RngStream& rng);

// Index of the initial p-block drawn uniformly from the T-p+1 observed blocks.
Eigen::Index draw_initial_block_index(Eigen::Index T, int p, RngStream& rng);

// Recursive-design state shared by all draws of one bootstrap run.
struct WildContext {
  VarOlsFit var_fit;            // uncorrected fit; residuals feed the wild draws
  VarCoefficients boot_dgp;     // bias-corrected (or passthrough) coefficients
  bool bias_corrected = false;
  int p = 0;
};

WildContext make_wild_context(const Matrix& data, int p, bool bias_correct);

// One bootstrap path: initial block + recursion under multiplied residuals.
Matrix wild_recursive_sample(const Matrix& data, const WildContext& ctx,
                             BootstrapSpec::Multiplier law, RngStream& rng);

std::pair<double, double> percentile_t_interval(double point, double se,
                                                std::vector<double> t_stats, double level);
std::pair<double, double> efron_interval(std::vector<double> point_stats, double level);

BootstrapDraws lp_wild_draws(const Matrix& data, const LpSpec& lp_spec,
                             const BootstrapSpec& boot_spec, double level, RngStream& rng);

}  // namespace detail

}  // namespace lproj
