#pragma once

#include <optional>
#include <vector>

#include "lproj/numeric.hpp"
#include "lproj/rng.hpp"

namespace lproj {

// VAR(p) slope blocks A = (A_1,...,A_p) with optional intercept.
// Order p = 0 denotes the identity lag polynomial (used for the stationary
// part of a factorized DGP).
struct VarCoefficients {
  int n = 0;
  int p = 0;
  std::vector<Matrix> lag_blocks;
  std::optional<Vector> intercept;

  // n x np block row [A_1 ... A_p]
  Matrix stacked() const;
  static VarCoefficients from_stacked(int n, int p, const Matrix& stacked,
                                      std::optional<Vector> intercept = std::nullopt);
  void validate() const;
};

struct CompanionMatrix {
  Matrix entries;  // np x np
};

CompanionMatrix companion(const VarCoefficients& coeffs);
double spectral_radius(const Matrix& m);

// Reduced-form responses: responses[h] is n x n with row i = beta_i(A,h)',
// i.e. entry (i,j) is the horizon-h response of variable i to innovation j.
struct ImpulseResponseSet {
  std::vector<Matrix> responses;

  int max_horizon() const { return static_cast<int>(responses.size()) - 1; }
  const Matrix& at(int h) const { return responses.at(static_cast<std::size_t>(h)); }
  double value(int h, int response_variable, const Vector& nu) const {
    return at(h).row(response_variable).dot(nu);
  }
};

// Computed by the recursion R_h = sum_{l<=min(h,p)} A_l R_{h-l}, not by
// matrix powering: O(H (np)^2 n) instead of O(H (np)^3).
ImpulseResponseSet impulse_responses(const VarCoefficients& coeffs, int max_horizon);

// Definition-1 style factorization A(L) = B(L)(I - diag(rho) L).
struct FactorizedDgp {
  Vector roots;                    // rho_1..rho_n
  VarCoefficients stationary_poly; // B(L), order p-1 (possibly 0)
  double decay_scale = 0.0;        // C
  double decay_rate = 0.0;         // epsilon
};

VarCoefficients compose_factorized(const FactorizedDgp& dgp);

// Bivariate benchmark DGP: y1 follows an AR(1) in rho, y2 has own-lag
// polynomial (1 - L/2)^4 and loads on y1 with coefficient 1/2.
VarCoefficients bivariate_var4_dgp(double rho);
Matrix bivariate_var4_covariance();  // [[1, .3], [.3, 1]]

struct InnovationSpec {
  enum class Kind { IidGaussian, Arch1 };

  Kind kind = Kind::IidGaussian;
  Matrix covariance;            // iid-gaussian
  double alpha0 = 0.0;          // arch1
  double alpha1 = 0.0;
  Matrix loading;               // arch1: u_t = loading * e_t

  static InnovationSpec iid_gaussian(Matrix cov);
  static InnovationSpec arch1(double alpha0, double alpha1, Matrix loading);
  int dimension() const;
  void validate() const;
};

struct SimulatedSample {
  Matrix data;         // T x n
  Matrix innovations;  // T x n
  int burn_in = 0;
};

enum class InitialConditionPolicy { Zero, Given };

struct SimulateOptions {
  InitialConditionPolicy policy = InitialConditionPolicy::Zero;
  Matrix initial_block;  // p x n when policy == Given
  int burn_in = 0;
};

// |y| values above this signal an explosive draw; the recursion throws
// ExplosiveOverflow rather than silently producing infinities.
inline constexpr double kExplosiveGuard = 1e100;

Matrix draw_innovations(const InnovationSpec& spec, int T, RngStream& rng);

// Iterates y_t = c + sum_l A_l y_{t-l} + u_t over the rows of `innovations`,
// with `initial_block` (p x n, oldest first) as presample. Returns the
// generated rows only.
Matrix iterate_recursion(const VarCoefficients& coeffs, const Matrix& innovations,
                         const Matrix& initial_block);

SimulatedSample simulate(const VarCoefficients& coeffs, const InnovationSpec& innovations,
                         int T, RngStream& rng, const SimulateOptions& options = {});

}  // namespace lproj
