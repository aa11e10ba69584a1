#include "lproj/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace lproj {

namespace {

// Pivoted QR with the shared rank check; R's diagonal is nonincreasing in
// magnitude, so the (k-1,k-1)/(0,0) ratio is the usual rank proxy.
Eigen::ColPivHouseholderQR<Matrix> factorize(const Matrix& X) {
  if (X.rows() < X.cols()) {
    throw RankDeficient("ols: fewer rows than regressors (" +
                        std::to_string(X.rows()) + " x " + std::to_string(X.cols()) + ")");
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(X);
  const auto& R = qr.matrixR();
  const double largest = std::abs(R(0, 0));
  const double smallest = std::abs(R(X.cols() - 1, X.cols() - 1));
  if (!(largest > 0.0) || smallest < kRankTolerance * largest) {
    throw RankDeficient("ols: regressor matrix numerically rank deficient");
  }
  return qr;
}

Matrix cross_product_inverse(const Eigen::ColPivHouseholderQR<Matrix>& qr, Eigen::Index k) {
  // X P = Q R  =>  (X'X)^-1 = P (R'R)^-1 P'
  Matrix Rinv = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(
      Matrix::Identity(k, k));
  Matrix inv_permuted = Rinv * Rinv.transpose();
  return qr.colsPermutation() * inv_permuted * qr.colsPermutation().transpose();
}

}  // namespace

OlsFit ols(const Vector& y, const Matrix& X) {
  if (y.size() != X.rows()) {
    throw DimensionMismatch("ols: y has " + std::to_string(y.size()) + " rows, X has " +
                            std::to_string(X.rows()));
  }
  auto qr = factorize(X);
  OlsFit fit;
  fit.coefficients = qr.solve(y);
  fit.residuals = y - X * fit.coefficients;
  fit.regressor_cross_product_inverse = cross_product_inverse(qr, X.cols());
  fit.effective_sample = X.rows();
  return fit;
}

MultiOlsFit ols_multi(const Matrix& Y, const Matrix& X) {
  if (Y.rows() != X.rows()) {
    throw DimensionMismatch("ols_multi: Y has " + std::to_string(Y.rows()) + " rows, X has " +
                            std::to_string(X.rows()));
  }
  auto qr = factorize(X);
  MultiOlsFit fit;
  fit.coefficients = qr.solve(Y);
  fit.residuals = Y - X * fit.coefficients;
  fit.regressor_cross_product_inverse = cross_product_inverse(qr, X.cols());
  fit.effective_sample = X.rows();
  return fit;
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw EmptyInput("quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile: p outside [0,1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double quantile(std::vector<double> samples, double p) {
  if (samples.empty()) throw EmptyInput("quantile: empty sample");
  std::sort(samples.begin(), samples.end());
  return quantile_sorted(samples, p);
}

}  // namespace lproj
