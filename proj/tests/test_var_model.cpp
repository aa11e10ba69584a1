#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "lproj/var_model.hpp"
#include "support.hpp"

using namespace lproj;
using namespace lproj::testsupport;

namespace {

// roots of a monic real polynomial via the scalar companion matrix
std::vector<std::complex<double>> poly_roots(std::vector<double> coeffs) {
  // coeffs[k] multiplies lambda^k; highest power must be nonzero
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-300) coeffs.pop_back();
  const int deg = static_cast<int>(coeffs.size()) - 1;
  Matrix comp = Matrix::Zero(deg, deg);
  for (int i = 0; i < deg; ++i) comp(0, i) = -coeffs[static_cast<std::size_t>(deg - 1 - i)] / coeffs.back();
  comp.bottomLeftCorner(deg - 1, deg - 1).setIdentity();
  const Eigen::VectorXcd ev = comp.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<double> poly_sub(std::vector<double> a, const std::vector<double>& b) {
  a.resize(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

TEST_CASE("companion of an AR(1) is the coefficient itself") {
  VarCoefficients c;
  c.n = 1;
  c.p = 1;
  c.lag_blocks = {Matrix::Constant(1, 1, 0.5)};
  const Matrix comp = companion(c).entries;
  REQUIRE(comp.rows() == 1);
  CHECK(comp(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("companion of a univariate AR(2)") {
  VarCoefficients c;
  c.n = 1;
  c.p = 2;
  c.lag_blocks = {Matrix::Constant(1, 1, 0.5), Matrix::Constant(1, 1, 0.25)};
  const Matrix comp = companion(c).entries;
  Matrix expected(2, 2);
  expected << 0.5, 0.25, 1.0, 0.0;
  CHECK(comp.isApprox(expected, 1e-15));
}

TEST_CASE("companion lower rows are the shifted identity") {
  RngStream rng(11, 0);
  const VarCoefficients c = random_stable_var(3, 4, 0.9, rng);
  const Matrix comp = companion(c).entries;
  Matrix lower = Matrix::Zero(9, 12);
  lower.leftCols(9).setIdentity();
  CHECK(comp.bottomRows(9).isApprox(lower, 0.0));
}

TEST_CASE("companion spectral radius matches the determinant polynomial roots") {
  // det(lambda^2 I - lambda A1 - A2) expanded by hand for n = 2
  RngStream rng(13, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const VarCoefficients c = random_stable_var(2, 2, 0.2 + 0.07 * trial, rng);
    const Matrix& a1 = c.lag_blocks[0];
    const Matrix& a2 = c.lag_blocks[1];
    auto entry = [&](int i, int j) {
      std::vector<double> poly = {-a2(i, j), -a1(i, j), i == j ? 1.0 : 0.0};
      return poly;
    };
    const auto det = poly_sub(poly_mul(entry(0, 0), entry(1, 1)), poly_mul(entry(0, 1), entry(1, 0)));
    double max_mod = 0.0;
    for (const auto& root : poly_roots(det)) max_mod = std::max(max_mod, std::abs(root));
    CHECK(spectral_radius(companion(c).entries) == doctest::Approx(max_mod).epsilon(1e-8));
  }
}

TEST_CASE("impulse responses of an AR(1) are rho^h and start at the identity") {
  VarCoefficients c;
  c.n = 1;
  c.p = 1;
  c.lag_blocks = {Matrix::Constant(1, 1, 0.5)};
  const auto irfs = impulse_responses(c, 5);
  CHECK(irfs.at(0)(0, 0) == doctest::Approx(1.0));
  CHECK(irfs.at(3)(0, 0) == doctest::Approx(0.125).epsilon(1e-14));

  RngStream rng(3, 3);
  const VarCoefficients v = random_stable_var(3, 2, 0.8, rng);
  CHECK(impulse_responses(v, 0).at(0).isApprox(Matrix::Identity(3, 3), 0.0));
}

TEST_CASE("VAR(4) responses match a unit-impulse propagation oracle") {
  const VarCoefficients c = bivariate_var4_dgp(0.5);
  const auto irfs = impulse_responses(c, 12);
  for (int shock = 0; shock < 2; ++shock) {
    Matrix u = Matrix::Zero(13, 2);
    u(0, shock) = 1.0;
    const Matrix path = iterate_recursion(c, u, Matrix::Zero(4, 2));
    for (int h = 1; h <= 12; ++h) {
      CHECK(irfs.at(h)(0, shock) == doctest::Approx(path(h, 0)).epsilon(1e-12));
      CHECK(irfs.at(h)(1, shock) == doctest::Approx(path(h, 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("iterated responses equal companion powers by repeated squaring") {
  RngStream rng(17, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const VarCoefficients c = random_stable_var(2, 3, 0.95, rng);
    const Matrix comp = companion(c).entries;
    const auto irfs = impulse_responses(c, 64);
    for (int h : {1, 2, 4, 8, 16, 32, 64}) {
      // binary powering
      Matrix power = Matrix::Identity(6, 6);
      Matrix base = comp;
      int e = h;
      while (e > 0) {
        if (e & 1) power = power * base;
        base = base * base;
        e >>= 1;
      }
      const Matrix via_power = power.topLeftCorner(2, 2);
      CHECK((irfs.at(h) - via_power).norm() <= 1e-10 * std::max(1.0, via_power.norm()));
    }
  }
}

TEST_CASE("compose_factorized with identity stationary part returns diag(rho)") {
  FactorizedDgp f;
  f.roots = Vector::Constant(1, 0.9);
  f.stationary_poly.n = 1;
  f.stationary_poly.p = 0;
  const VarCoefficients a = compose_factorized(f);
  REQUIRE(a.p == 1);
  CHECK(a.lag_blocks[0](0, 0) == doctest::Approx(0.9));
}

TEST_CASE("compose_factorized expands (1 - 0.5L)(1 - L)") {
  FactorizedDgp f;
  f.roots = Vector::Constant(1, 1.0);
  f.stationary_poly.n = 1;
  f.stationary_poly.p = 1;
  f.stationary_poly.lag_blocks = {Matrix::Constant(1, 1, 0.5)};
  const VarCoefficients a = compose_factorized(f);
  REQUIRE(a.p == 2);
  CHECK(a.lag_blocks[0](0, 0) == doctest::Approx(1.5));
  CHECK(a.lag_blocks[1](0, 0) == doctest::Approx(-0.5));
}

TEST_CASE("composed coefficients match the two-stage filter oracle") {
  RngStream rng(23, 4);
  FactorizedDgp f = random_factorized_instance(2, 2, rng);
  const VarCoefficients a = compose_factorized(f);
  REQUIRE(a.p == 3);

  const int T = 50;
  Matrix u(T, 2);
  for (int t = 0; t < T; ++t) {
    u(t, 0) = rng.normal();
    u(t, 1) = rng.normal();
  }
  // stage 1: y_tilde = B(L)^-1 u ; stage 2: y_t = diag(rho) y_{t-1} + y_tilde_t
  const Matrix ytilde = iterate_recursion(f.stationary_poly, u, Matrix::Zero(2, 2));
  Matrix y_two_stage = Matrix::Zero(T, 2);
  for (int t = 0; t < T; ++t) {
    Vector prev = t > 0 ? Vector(y_two_stage.row(t - 1).transpose()) : Vector(Vector::Zero(2));
    y_two_stage.row(t) = (f.roots.asDiagonal() * prev + ytilde.row(t).transpose()).transpose();
  }
  const Matrix y_direct = iterate_recursion(a, u, Matrix::Zero(3, 2));
  CHECK((y_direct - y_two_stage).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("composed roots appear among the companion eigenvalues") {
  FactorizedDgp f;
  f.roots = Vector(2);
  f.roots << 0.9, -0.4;
  f.stationary_poly.n = 2;
  f.stationary_poly.p = 1;
  f.stationary_poly.lag_blocks = {(Matrix(2, 2) << 0.3, 0.05, -0.1, 0.2).finished()};
  const VarCoefficients a = compose_factorized(f);
  const Eigen::VectorXcd ev = companion(a).entries.eigenvalues();
  for (double root : {0.9, -0.4}) {
    double best = 1e9;
    for (Eigen::Index i = 0; i < ev.size(); ++i) best = std::min(best, std::abs(ev(i) - root));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("bivariate VAR(4) coefficients") {
  const VarCoefficients c = bivariate_var4_dgp(0.5);
  // own-lag polynomial of y2: binomial expansion of (1 - L/2)^4
  CHECK(c.lag_blocks[0](1, 1) == doctest::Approx(2.0));
  CHECK(c.lag_blocks[1](1, 1) == doctest::Approx(-1.5));
  CHECK(c.lag_blocks[2](1, 1) == doctest::Approx(0.5));
  CHECK(c.lag_blocks[3](1, 1) == doctest::Approx(-0.0625));
  // cross loading of y1 into the y2 equation
  CHECK(c.lag_blocks[0](1, 0) == doctest::Approx(0.5));
  CHECK(c.lag_blocks[0](0, 0) == doctest::Approx(0.5));
  // rho = 1 puts a unit root into the companion
  CHECK(spectral_radius(companion(bivariate_var4_dgp(1.0)).entries) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("simulate with zero coefficients returns the innovations") {
  VarCoefficients c;
  c.n = 2;
  c.p = 1;
  c.lag_blocks = {Matrix::Zero(2, 2)};
  RngStream rng(31, 0);
  const auto s = simulate(c, InnovationSpec::iid_gaussian(Matrix::Identity(2, 2)), 50, rng);
  CHECK(s.data.isApprox(s.innovations, 0.0));
}

TEST_CASE("unit root with +1 innovations accumulates to y_t = t") {
  VarCoefficients c;
  c.n = 1;
  c.p = 1;
  c.lag_blocks = {Matrix::Constant(1, 1, 1.0)};
  const Matrix ones = Matrix::Ones(20, 1);
  const Matrix y = iterate_recursion(c, ones, Matrix::Zero(1, 1));
  for (int t = 0; t < 20; ++t) CHECK(y(t, 0) == doctest::Approx(t + 1.0));
}

TEST_CASE("ARCH innovations have unit unconditional variance") {
  // alpha0 / (1 - alpha1) = 1 for (0.3, 0.7)
  const auto spec = InnovationSpec::arch1(0.3, 0.7, Matrix::Identity(1, 1));
  RngStream rng(37, 0);
  const Matrix u = draw_innovations(spec, 1000000, rng);
  CHECK(u.squaredNorm() / u.rows() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("explosive paths trip the overflow guard") {
  VarCoefficients c;
  c.n = 1;
  c.p = 1;
  c.lag_blocks = {Matrix::Constant(1, 1, 3.0)};
  RngStream rng(41, 0);
  CHECK_THROWS_AS(simulate(c, InnovationSpec::iid_gaussian(Matrix::Identity(1, 1)), 240, rng),
                  ExplosiveOverflow);
}

TEST_CASE("innovation spec validation") {
  Matrix bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // indefinite
  CHECK_THROWS_AS(InnovationSpec::iid_gaussian(bad), DomainError);
  CHECK_THROWS_AS(InnovationSpec::arch1(0.0, 0.5, Matrix::Identity(1, 1)), DomainError);
  CHECK_THROWS_AS(InnovationSpec::arch1(0.3, 1.0, Matrix::Identity(1, 1)), DomainError);
}

TEST_CASE("IRF decay bound holds on random factorized instances") {
  // ||beta_i(A,h)|| <= C1 rho_i*(A,eps)^h with C1 = 1 + 2C(1-eps)/eps
  RngStream rng(43, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const FactorizedDgp f = random_factorized_instance(2, trial % 3, rng);
    const VarCoefficients a = compose_factorized(f);
    const double c1 = 1.0 + 2.0 * f.decay_scale * (1.0 - f.decay_rate) / f.decay_rate;
    const auto irfs = impulse_responses(a, 100);
    for (int i = 0; i < 2; ++i) {
      const double rho_star = std::max(std::abs(f.roots(i)), 1.0 - f.decay_rate / 2.0);
      double bound = c1;
      for (int h = 1; h <= 100; ++h) {
        bound *= rho_star;
        CHECK(irfs.at(h).row(i).norm() <= bound * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("simulate then re-fit recovers the coefficients") {
  RngStream rng(47, 0);
  const Matrix y = simulate_ar1(0.8, 100000, rng);
  const Eigen::Index N = y.rows() - 1;
  Matrix X(N, 2);
  X.col(0) = y.col(0).head(N);
  X.col(1).setOnes();
  const OlsFit fit = ols(y.col(0).tail(N), X);
  const double se = std::sqrt((fit.residuals.squaredNorm() / N) *
                              fit.regressor_cross_product_inverse(0, 0));
  CHECK(std::abs(fit.coefficients(0) - 0.8) < 3.0 * se);
}

TEST_CASE("burn-in and given initial conditions") {
  VarCoefficients c;
  c.n = 1;
  c.p = 1;
  c.lag_blocks = {Matrix::Constant(1, 1, 0.9)};
  const auto innov = InnovationSpec::iid_gaussian(Matrix::Identity(1, 1));

  RngStream r1(53, 0);
  SimulateOptions opts;
  opts.burn_in = 50;
  const auto warm = simulate(c, innov, 100, r1, opts);
  CHECK(warm.data.rows() == 100);
  CHECK(warm.burn_in == 50);

  RngStream r2(53, 0);
  SimulateOptions given;
  given.policy = InitialConditionPolicy::Given;
  given.initial_block = Matrix::Constant(1, 1, 10.0);
  const auto started = simulate(c, innov, 100, r2, given);
  CHECK(started.data(0, 0) == doctest::Approx(0.9 * 10.0 + started.innovations(0, 0)));

  given.initial_block = Matrix::Zero(2, 1);  // wrong shape
  RngStream r3(53, 0);
  CHECK_THROWS_AS(simulate(c, innov, 100, r3, given), DimensionMismatch);
}
