#ifndef FRACFVT_FRACCALC_HPP
#define FRACFVT_FRACCALC_HPP

#include <cmath>

#include "fracfvt/signal.hpp"

namespace fracfvt {

// Fractional order with its ceiling m (used only by the Caputo operator).
struct FracOrder {
  double alpha;
  int m;

  static FracOrder of(double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("FracOrder: alpha < 0");
    const int m = alpha > 0.0 ? static_cast<int>(std::ceil(alpha)) : 1;
    return {alpha, m};
  }

  bool is_integer() const { return alpha == std::floor(alpha); }
};

// Product-trapezoidal Riemann-Liouville integral of order alpha > 0 on the
// signal's own grid (lower terminal a = grid.t0). The weakly singular kernel
// (t - tau)^{alpha-1} is integrated exactly against the piecewise-linear
// interpolant of f, giving O(h^2) global error for C^2 signals and exactness
// for linear ones. Vector signals are processed componentwise.
SampledSignal rl_integral(const SampledSignal& f, FracOrder order);

// Caputo derivative of order alpha: I^{m-alpha} applied to the m-th
// finite-difference derivative (order-2 central, order-2 one-sided at the
// ends). Integer alpha returns the plain m-th derivative.
SampledSignal caputo_derivative(const SampledSignal& x, FracOrder order);

// Generalized Cesaro profile
//   g_alpha(t) = Gamma(alpha+1) * (I^{alpha+1} f)(t) / t^{alpha+1},
// defined at t = 0 by continuity as f(0)/(alpha+1). Requires grid.t0 = 0.
SampledSignal cesaro_profile(const SampledSignal& f, double alpha);

// Order-2 finite-difference first derivative on the grid.
SampledSignal derivative_o2(const SampledSignal& x);

// Max-norm over the grid of I^alpha(I^beta f) - I^{alpha+beta} f; a pure
// self-test of the quadrature (the exact operators satisfy the semigroup law).
double semigroup_defect(const SampledSignal& f, double alpha, double beta);

// Trapezoidal integral of the signal over its whole grid (per component).
Eigen::VectorXd trapezoid_integral(const SampledSignal& f);

}  // namespace fracfvt

#endif
