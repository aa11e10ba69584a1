#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lproj/errors.hpp"

namespace lproj {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative tolerance below which the smallest R diagonal of the pivoted QR
// marks the regressor matrix as rank deficient.
inline constexpr double kRankTolerance = 1e-10;

// Least-squares fit of a single response. Solved by column-pivoted
// Householder QR; the cross-product inverse (X'X)^-1 is returned for
// sandwich covariance formulas.
struct OlsFit {
  Vector coefficients;
  Vector residuals;
  Matrix regressor_cross_product_inverse;
  Eigen::Index effective_sample = 0;
};

// Multi-response variant sharing one factorization: each column of Y is
// regressed on X. coefficients is k x m (k regressors, m responses).
struct MultiOlsFit {
  Matrix coefficients;
  Matrix residuals;
  Matrix regressor_cross_product_inverse;
  Eigen::Index effective_sample = 0;
};

OlsFit ols(const Vector& y, const Matrix& X);
MultiOlsFit ols_multi(const Matrix& Y, const Matrix& X);

// Type-7 quantile (order statistic with linear interpolation, h=(n-1)p).
double quantile(std::vector<double> samples, double p);
double quantile_sorted(const std::vector<double>& sorted, double p);

}  // namespace lproj
