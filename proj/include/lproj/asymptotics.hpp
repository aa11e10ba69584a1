#pragma once

#include "lproj/errors.hpp"

namespace lproj {

// Closed-form asymptotic variances in the homoskedastic AR(1) model.
struct AsyVarTriple {
  double lp_la = 0.0;  // sum_{l=0}^{h-1} rho^(2l)
  double lp_na = 0.0;  // lp_la + sum_{l=1}^{h-1} rho^(2l) - (2h-1) rho^(2h)
  double ar_la = 0.0;  // (h rho^(h-1))^2
  double rho = 0.0;
  int horizon = 0;
};

AsyVarTriple asyvar(double rho, int h);

// rho_lower(h): unique rho in (0,1) with sum_{m=0}^{h-1} rho^(-2m) = h^2;
// lag-augmented LP beats lag-augmented AR iff |rho| >= rho_lower(h).
double indifference_lp_vs_arla(int h);

// rho_upper(h): unique rho in (0,1) with sum_{l=1}^{h-1} rho^(-2l) = 2h-1;
// lag-augmented LP beats non-augmented LP iff |rho| <= rho_upper(h).
// Undefined at h = 1.
double indifference_lp_vs_lpna(int h);

}  // namespace lproj
