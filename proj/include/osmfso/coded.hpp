#pragma once

// Transfer-function union bounds for convolutionally coded OSM.

#include <functional>
#include <string>

#include "osmfso/perf.hpp"

namespace osmfso {

struct ConvCodeSpec {
  std::string name;
  int rate_num = 1;
  int rate_den = 1;
  int constraint_length = 1;
  /// (1/k) dT[D, N]/dN at N = 1, with k input bits per trellis step (k = 1 here).
  std::function<double(double)> bound_kernel;
  /// True where bound_kernel converges.
  std::function<bool(double)> in_domain;
};

/// Rate 1/3, K = 3: T[D, N] = D^6 N / (1 - 2 N D^2); kernel D^6 / (1 - 2 D^2)^2 for D < 1/sqrt(2).
ConvCodeSpec builtin_rate13_k3();

/// T[D, N] = D N; turns the coded bound back into the uncoded M = 2 APEP.
ConvCodeSpec identity_code();

/// M = 2: prod_n M_n(mu / (8 sin^2 theta)).
/// M > 2: prod over ordered pairs m1 != m2 and apertures n of M_{m1 m2, n}(mu / (8 sin^2 theta)).
double d_theta(double mu, double theta, const OsmScenario& scenario);
double log_d_theta(double mu, double theta, const OsmScenario& scenario,
                   double rel_tol = specfun::kDefaultRelTol);

struct CodedBound {
  double value = 0.0;     ///< meaningless when divergent
  bool divergent = false; ///< kernel left its convergence domain somewhere on [0, pi/2]
  double d_max = 0.0;     ///< D(pi/2), the largest D(theta)
};

/// (1 / (pi log2 M)) int_0^{pi/2} kernel(D(theta)) dtheta, or a divergent flag.
CodedBound coded_abep_bound(double mu, const ConvCodeSpec& code, const OsmScenario& scenario,
                            double rel_tol = specfun::kDefaultRelTol);

}  // namespace osmfso
