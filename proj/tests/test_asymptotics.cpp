#include <doctest.h>

#include <cmath>

#include "lproj/asymptotics.hpp"

using namespace lproj;

TEST_CASE("asymptotic variances at rho = 0.5, h = 3") {
  const AsyVarTriple t = asyvar(0.5, 3);
  CHECK(t.lp_la == doctest::Approx(1.3125).epsilon(1e-14));
  CHECK(t.ar_la == doctest::Approx(0.5625).epsilon(1e-14));
  CHECK(t.lp_na == doctest::Approx(1.546875).epsilon(1e-14));
}

TEST_CASE("both lag-augmented variances are one at h = 1") {
  for (double rho : {-0.9, -0.3, 0.0, 0.4, 0.99}) {
    const AsyVarTriple t = asyvar(rho, 1);
    CHECK(t.lp_la == doctest::Approx(1.0));
    CHECK(t.ar_la == doctest::Approx(1.0));
  }
}

TEST_CASE("white-noise case collapses the AR variance") {
  const AsyVarTriple t = asyvar(0.0, 5);
  CHECK(t.lp_la == doctest::Approx(1.0));
  CHECK(t.lp_na == doctest::Approx(1.0));
  CHECK(t.ar_la == doctest::Approx(0.0));
}

TEST_CASE("asyvar domain checks") {
  CHECK_THROWS_AS(asyvar(1.0, 2), DomainError);
  CHECK_THROWS_AS(asyvar(0.5, 0), DomainError);
}

TEST_CASE("indifference curves solve their defining quadratics at h = 2, 3") {
  CHECK(indifference_lp_vs_arla(2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(indifference_lp_vs_lpna(2) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-9));
  // x = (-1+sqrt(33))/2 and x = (-1+sqrt(21))/2, rho = x^(-1/2)
  CHECK(indifference_lp_vs_arla(3) ==
        doctest::Approx(std::pow((-1.0 + std::sqrt(33.0)) / 2.0, -0.5)).epsilon(1e-9));
  CHECK(indifference_lp_vs_lpna(3) ==
        doctest::Approx(std::pow((-1.0 + std::sqrt(21.0)) / 2.0, -0.5)).epsilon(1e-9));
  CHECK(indifference_lp_vs_arla(3) == doctest::Approx(0.64930).epsilon(1e-4));
  CHECK(indifference_lp_vs_lpna(3) == doctest::Approx(0.74716).epsilon(1e-4));
}

TEST_CASE("rho_upper is undefined at h = 1") {
  CHECK_THROWS_AS(indifference_lp_vs_lpna(1), UndefinedAtH1);
  CHECK_THROWS_AS(indifference_lp_vs_arla(1), DomainError);
}

TEST_CASE("grid scan confirms a single sign flip at each indifference point") {
  for (int h = 2; h <= 20; ++h) {
    const double lower = indifference_lp_vs_arla(h);
    const double upper = indifference_lp_vs_lpna(h);
    int flips_ar = 0, flips_na = 0;
    double prev_ar = 0.0, prev_na = 0.0;
    bool first = true;
    for (double rho = 1e-4; rho < 1.0; rho += 1e-4) {
      const AsyVarTriple t = asyvar(rho, h);
      const double d_ar = t.lp_la - t.ar_la;
      const double d_na = t.lp_la - t.lp_na;
      CHECK(t.lp_na >= 0.0);
      if (!first) {
        if ((d_ar > 0) != (prev_ar > 0)) {
          ++flips_ar;
          CHECK(std::abs(rho - lower) < 2e-4);
        }
        if ((d_na > 0) != (prev_na > 0)) {
          ++flips_na;
          CHECK(std::abs(rho - upper) < 2e-4);
        }
      }
      prev_ar = d_ar;
      prev_na = d_na;
      first = false;
    }
    CHECK(flips_ar == 1);
    CHECK(flips_na == 1);
  }
}

TEST_CASE("the efficiency regions are ordered as in the figure") {
  double prev_lower = 0.0;
  for (int h = 2; h <= 60; ++h) {
    const double lower = indifference_lp_vs_arla(h);
    const double upper = indifference_lp_vs_lpna(h);
    CHECK(lower > 0.0);
    CHECK(upper < 1.0);
    if (h == 2) {
      CHECK(lower == doctest::Approx(upper).epsilon(1e-10));  // curves touch at h = 2
    } else {
      CHECK(lower < upper);  // gray region below the thatched one
    }
    CHECK(lower > prev_lower);  // both curves climb toward 1
    prev_lower = lower;
  }
}
