#ifndef FRACFVT_FINVAL_HPP
#define FRACFVT_FINVAL_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fracfvt/report.hpp"
#include "fracfvt/signal.hpp"
#include "fracfvt/xform.hpp"

namespace fracfvt::finval {

enum class Method { classical_sF, cesaro_mean, generalized_alpha, derivative_form };

// A final-value estimate with its convergence trace: (parameter, running
// extrapolated value) pairs, parameter being s for frequency-side methods
// and 1/t for time-side ones.
struct LimitEstimate {
  double value = 0.0;
  Method method = Method::classical_sF;
  double alpha = 0.0;
  std::vector<std::pair<double, double>> trace;
  bool converged = false;
  double tol_used = 1e-3;
  bool divergent = false;
  // Two-route data for periodic/derivative estimators: the exact one-period
  // quantity and its gap to the extrapolated value.
  std::optional<double> period_mean;
  std::optional<double> period_gap;
};

inline constexpr double kDefaultTol = 1e-3;

std::vector<double> default_s_seq();        // {0.1, 0.05, 0.025, 0.0125}
std::vector<double> default_t_probes();     // {100 .. 1600}, doubling
std::vector<double> default_cesaro_probes();// {625 .. 10000}, doubling

// Polynomial (Neville) extrapolation of (x_i, y_i) to x = 0, using at most
// degree+1 of the points nearest zero. Partials, when requested, hold the
// running estimate after each prefix of the sequence.
double extrapolate_to_zero(const std::vector<std::pair<double, double>>& pts,
                           int max_degree,
                           std::vector<double>* partials = nullptr);

// Generalized Cesaro profile of a catalog function at a single time,
//   g_alpha(t) = int_0^1 (1-u)^alpha f(t u) du,
// by oscillation-aware panel quadrature (the substituted form; no grid
// history needed, so it stays accurate at large t).
double cesaro_profile_value(const xform::CatalogFunction& f, double alpha,
                            double t);

// Classical final value: s F(s) evaluated along a decreasing positive
// sequence and Richardson-extrapolated (polynomial in s, degree <= 3) to
// s = 0. Sets `divergent` if |s F(s)| grows along the sequence.
LimitEstimate classical_fvt(const xform::TransformEval& F,
                            const std::vector<double>& s_seq,
                            double tol = kDefaultTol);

// Cesaro mean g_0(t) = (1/t) int_0^t f at increasing probes, extrapolated in
// 1/t (degree <= 2). For periodic entries also computes the exact one-period
// mean and reports the discrepancy.
LimitEstimate cesaro_fvt(const xform::CatalogFunction& f,
                         const std::vector<double>& t_probes,
                         double tol = kDefaultTol);
LimitEstimate cesaro_fvt(const SampledSignal& f,
                         const std::vector<double>& t_probes,
                         double tol = kDefaultTol);

// Order-alpha profile g_alpha(t) at increasing probes, extrapolated in 1/t.
// The theorem's prediction for the returned value is (lim sF(s))/(alpha+1).
LimitEstimate generalized_fvt(const xform::CatalogFunction& f, double alpha,
                              const std::vector<double>& t_probes,
                              double tol = kDefaultTol);

// Derivative form for periodic f: extrapolates numeric L{f'}(s) along s_seq
// and reports it against (1/T) int_0^T f - f(0+). Throws if period_T is
// absent. The estimate's value is the frequency-side extrapolation;
// period_mean holds the time-side quantity and period_gap their gap.
LimitEstimate derivative_fvt(const xform::CatalogFunction& f,
                             const std::vector<double>& s_seq,
                             double tol = kDefaultTol);

// Cross-validation of the order-alpha final-value identity: classical limit
// L, time-side G_alpha, and the kernel-integral route K_alpha; pass when
// both |L/(alpha+1) - G| and |L/(alpha+1) - K| are within tol and the
// estimates converge, inconclusive when a route does not converge.
ReportRecord cross_validate(const xform::CatalogFunction& f, double alpha,
                            double tol = 1e-2);

}  // namespace fracfvt::finval

#endif
