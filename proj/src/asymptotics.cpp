#include "lproj/asymptotics.hpp"

#include <cmath>
#include <functional>

namespace lproj {

AsyVarTriple asyvar(double rho, int h) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("asyvar: require |rho| < 1");
  if (h < 1) throw DomainError("asyvar: require h >= 1");
  AsyVarTriple t;
  t.rho = rho;
  t.horizon = h;
  double even = 0.0;   // sum_{l=0}^{h-1} rho^(2l)
  double inner = 0.0;  // sum_{l=1}^{h-1} rho^(2l)
  double pow2l = 1.0;
  for (int l = 0; l < h; ++l) {
    even += pow2l;
    if (l >= 1) inner += pow2l;
    pow2l *= rho * rho;
  }
  t.lp_la = even;
  t.lp_na = even + inner - (2.0 * h - 1.0) * std::pow(rho, 2 * h);
  t.ar_la = std::pow(h * std::pow(rho, h - 1), 2);
  return t;
}

namespace {

// Bisect the monotone sign function in rho; the underlying equations are
// stated in x = rho^-2 where both sides are polynomial.
double bisect_root(const std::function<double(double)>& f) {
  double lo = 1e-8, hi = 1.0 - 1e-14;
  for (int it = 0; it < 120 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double indifference_lp_vs_arla(int h) {
  if (h < 2) throw DomainError("indifference_lp_vs_arla: require h >= 2");
  // sum_{m=0}^{h-1} x^m - h^2 with x = rho^-2, decreasing in rho
  auto excess = [h](double rho) {
    const double x = 1.0 / (rho * rho);
    double sum = 0.0, xm = 1.0;
    for (int m = 0; m < h; ++m) {
      sum += xm;
      xm *= x;
    }
    return sum - static_cast<double>(h) * h;
  };
  return bisect_root(excess);
}

double indifference_lp_vs_lpna(int h) {
  if (h == 1) {
    throw UndefinedAtH1("indifference_lp_vs_lpna: no crossing at h = 1");
  }
  if (h < 1) throw DomainError("indifference_lp_vs_lpna: require h >= 2");
  // sum_{l=1}^{h-1} x^l - (2h-1) with x = rho^-2, decreasing in rho
  auto excess = [h](double rho) {
    const double x = 1.0 / (rho * rho);
    double sum = 0.0, xl = 1.0;
    for (int l = 1; l < h; ++l) {
      xl *= x;
      sum += xl;
    }
    return sum - (2.0 * h - 1.0);
  };
  return bisect_root(excess);
}

}  // namespace lproj
