#ifndef FRACFVT_FODESIM_HPP
#define FRACFVT_FODESIM_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracfvt/report.hpp"
#include "fracfvt/signal.hpp"

namespace fracfvt::fodesim {

using Rhs = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Caputo initial-value problem D^alpha x = f(x), x(0) = x0, alpha in (0,1),
// on [0, horizon] with uniform step h.
struct FodeProblem {
  double alpha;
  Rhs rhs;
  Eigen::VectorXd x0;
  double horizon;
  double h;

  void validate() const;
};

enum class Scheme { abm_pece };

struct Trajectory {
  TimeGrid grid;
  Eigen::MatrixXd states;  // n x d
  long rhs_evals = 0;
  Scheme scheme = Scheme::abm_pece;
  bool contraction_warning = false;  // h^alpha * L_estimate > 0.5

  SampledSignal signal() const { return SampledSignal(grid, states); }
  Eigen::VectorXd state_at(double t) const {
    return SampledSignal(grid, states).interpolate(t);
  }
};

// Fractional Adams-Bashforth-Moulton predictor-corrector (PECE, one
// correction): product-rectangle predictor, product-trapezoid corrector.
// Global error O(h^{1+alpha}) for smooth rhs. Throws on blow-up (state norm
// beyond 1e12) and on step counts beyond the 2e5 practical cap.
Trajectory solve(const FodeProblem& p);

// Continuing a finished trajectory is not supported: the Caputo operator's
// memory is global, so a restart from the final state is not equivalent to
// one longer solve. Always throws std::logic_error.
Trajectory resume(const Trajectory& traj, double extra_horizon);

// Classical (alpha = 1) RK4 reference integrator on the same problem layout.
Trajectory solve_classical_rk4(const Rhs& rhs, const Eigen::VectorXd& x0,
                               double horizon, double h);

struct PeriodScan {
  std::vector<std::pair<double, double>> residuals;  // (T, residual)
  double best_T = 0.0;
  double best_residual = 0.0;
  double nonconstancy = 0.0;  // max ||x - mean(x)|| over the window
};

// Periodicity residual: residual(T) = max over t in [t_skip, t_skip+window]
// of ||x(t+T) - x(t)||_inf with linear interpolation between nodes.
// t_skip defaults to 20% of the horizon (fractional transients are
// algebraic). The best candidate is sharpened by golden-section refinement.
PeriodScan periodicity_residual(const Trajectory& traj,
                                const std::vector<double>& T_candidates,
                                double window,
                                std::optional<double> t_skip = std::nullopt);

// Certificate integral C = int_0^T (T-tau)^{1-alpha} x'(tau) dtau; a genuine
// nonconstant T-periodic Caputo solution would force C = 0, so a nonzero
// value certifies that (x, T) is not one. xprime holds samples of x' on a
// uniform grid covering [0, T]; returns the Euclidean norm across components
// for d > 1 and the signed value for d = 1.
double certificate_integral(const SampledSignal& xprime, double T,
                            double alpha);

// Convenience: numerical derivative of a trajectory, then the certificate.
double certificate_integral(const Trajectory& traj, double T, double alpha);

// Frequency-side identity check: evaluates s^alpha L{x'}(s) and
// s L{D^alpha x}(s) at a decreasing s sequence (extrapolating in s^alpha)
// and reports both against the one-period mean (1/T) int_0^T D^alpha x dt.
ReportRecord frequency_side_check(const SampledSignal& x, double alpha,
                                  double T,
                                  const std::vector<double>& s_seq = {
                                      0.2, 0.1, 0.05});

// Named right-hand sides available to the CLI: linear_decay (-x), rotation
// ((x,y) -> (-y,x)), logistic (x(1-x)), zero.
Rhs rhs_registry(const std::string& name);
std::vector<std::string> rhs_names();

}  // namespace fracfvt::fodesim

#endif
