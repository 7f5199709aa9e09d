#ifndef FRACFVT_XFORM_HPP
#define FRACFVT_XFORM_HPP

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracfvt/signal.hpp"

namespace fracfvt::xform {

using Complex = std::complex<double>;
using TransformEval = std::function<Complex(Complex)>;

// A named analytic test function with closed-form time evaluation, optional
// closed-form Laplace transform, an exponential-order bound |f(t)| <=
// bound_M (1 + t^growth_q) e^{exp_order_c t}, and optional period.
struct CatalogFunction {
  std::string name;
  std::function<double(double)> time_eval;
  TransformEval transform_eval;              // may be empty
  std::function<double(double)> deriv_eval;  // may be empty
  double exp_order_c = 0.0;
  double growth_q = 0.0;
  double bound_M = 1.0;
  double osc_omega = 0.0;  // dominant oscillation frequency, 0 = none
  std::optional<double> period_T;
  std::optional<double> known_sF_limit;

  bool has_transform() const { return static_cast<bool>(transform_eval); }
  // Transform evaluator: closed form when present, numeric otherwise.
  TransformEval transform_or_numeric() const;
};

// Complex frequency restricted to the open right half plane.
struct ComplexFreq {
  Complex s;
  explicit ComplexFreq(Complex s_) : s(s_) {
    if (!(s.real() > 0.0))
      throw std::invalid_argument("ComplexFreq: Re(s) must be > 0");
  }
};

// Truncated numeric Laplace transform of a catalog function,
//   F(s) ~= int_0^{T} e^{-st} f(t) dt,
// with T chosen so the exponential-order tail bound is below 1e-10 of the
// accumulated value, composite Gauss-Kronrod panels of width
// <= min(pi/omega, 1/Re(s), 4)/8. Throws if Re(s) <= exp_order_c or if the
// required horizon exceeds the hard cap of 1e6.
Complex laplace_numeric(const CatalogFunction& f, ComplexFreq s);

enum class TailMode { none, constant };

// Numeric Laplace transform of a sampled signal (first component) by
// trapezoidal summation over the grid. With TailMode::constant the signal is
// continued beyond the grid as its final sample, adding f_end e^{-sT}/s;
// with TailMode::none it is truncated to zero (documented truncation).
Complex laplace_numeric(const SampledSignal& f, ComplexFreq s,
                        TailMode tail = TailMode::none,
                        Eigen::Index component = 0);

// Catalog entry for f(t) = t^q sin(omega t), q >= 0, omega > 0, with the
// closed-form transform
//   F(s) = Gamma(q+1) [ (s+i w)^{q+1} - (s-i w)^{q+1} ] / (2i (s^2+w^2)^{q+1})
// using the principal branch of z^{q+1}. Its sF(s) limit at 0 is 0.
CatalogFunction catalog_tq_sin(double q, double omega);

// Kernel-integral representation of the Laplace transform of the generalized
// Cesaro profile: int_1^inf F(su)/u (1 - 1/u)^alpha du, computed after the
// substitution v = 1/u as int_0^1 F(s/v) (1-v)^alpha dv/v. Throws if the
// integrand fails the tail-decay check |F(s/v)| <= C v near v = 0.
Complex kernel_integral(const TransformEval& F, double alpha, ComplexFreq s);

struct MomentTestResult {
  bool all_below;
  Eigen::VectorXd moments;  // moment_n = F(s0 + n l), n = 0 .. n_max
  double scale;             // max |f| over the grid
};

// Finite surrogate of the moment-vanishing condition F(s0 + n l) = 0 for all
// n: checks |moment_n| <= tol * scale for n = 0 .. n_max with f extended by
// zero beyond its grid. A true result is evidence, not proof.
MomentTestResult moment_vanishing_test(const SampledSignal& f, double s0,
                                       double l, int n_max, double tol);

// Partial sums S_N = sum_{n=0}^{N} (-alpha)_n / (n! (n+1)), which converge to
// 1/(alpha+1) for fractional alpha > 0. Terms are generated by the ratio
// recurrence term_{n+1} = term_n (n - alpha)/(n + 1), so nothing overflows.
// Returns the partial sums at the requested checkpoint indices.
std::vector<double> binomial_series_partial_sums(
    double alpha, const std::vector<long>& checkpoints);

// Laplace transform of the grid-path Cesaro profile g_alpha of a catalog
// function, evaluated at each requested s > 0: f is sampled on [0, horizon]
// with step h, g_alpha comes from fraccalc::cesaro_profile, and the
// transform uses trapezoidal summation with constant-tail continuation.
struct CesaroGrid {
  double h = 0.0;
  double horizon = 0.0;
  // Horizon/step defaults sized for the smallest s of interest.
  static CesaroGrid for_smallest_s(double s_min);
};
std::vector<Complex> laplace_of_cesaro_profile(const CatalogFunction& f,
                                               double alpha,
                                               const std::vector<double>& s,
                                               const CesaroGrid& grid);

// Registry of named catalog entries.
class Catalog {
 public:
  // Built-in entries: const1, const5, exp_decay, sin, cos, two_plus_cos3,
  // t_ramp. tq_sin is parametric; build it with catalog_tq_sin.
  static Catalog standard();

  void register_entry(CatalogFunction fn);
  const CatalogFunction& at(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, CatalogFunction> entries_;
};

// Registration-time consistency checks: numeric Laplace matches
// transform_eval at 5 probe points with Re(s) > c within 1e-6 relative, and
// period_T (when set) holds at 100 pseudo-random times within 1e-10.
// Throws std::runtime_error on violation.
void validate_entry(const CatalogFunction& fn);

}  // namespace fracfvt::xform

#endif
