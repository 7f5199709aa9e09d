#include "fracfvt/xform.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracfvt/fraccalc.hpp"
#include "fracfvt/quadrature.hpp"
#include "fracfvt/specfun.hpp"

namespace fracfvt::xform {

namespace {

constexpr double kHorizonCap = 1e6;
constexpr double kTailRelTarget = 1e-10;

// Smallest T with M (1 + T^q) e^{-rate T} <= tol_abs, by fixed-point
// iteration on T = (log M(1+T^q) - log tol_abs) / rate.
double truncation_horizon(double rate, double M, double q, double tol_abs) {
  double T = std::max(1.0, 10.0 / rate);
  for (int i = 0; i < 12; ++i) {
    const double growth = std::log(M * (1.0 + std::pow(T, q)));
    T = (growth - std::log(tol_abs)) / rate;
  }
  if (!(T < kHorizonCap))
    throw std::runtime_error(
        "laplace_numeric: truncation horizon exceeds the 1e6 cap");
  return T;
}

double panel_width(double re_s, double omega) {
  double w = 4.0;
  if (omega > 0.0) w = std::min(w, M_PI / omega);
  if (re_s > 0.0) w = std::min(w, 1.0 / re_s);
  return w / 8.0;
}

}  // namespace

TransformEval CatalogFunction::transform_or_numeric() const {
  if (transform_eval) return transform_eval;
  CatalogFunction copy = *this;
  return [copy](Complex s) { return laplace_numeric(copy, ComplexFreq(s)); };
}

Complex laplace_numeric(const CatalogFunction& f, ComplexFreq sf) {
  const Complex s = sf.s;
  const double rate = s.real() - f.exp_order_c;
  if (!(rate > 0.0))
    throw std::runtime_error(
        "laplace_numeric: Re(s) <= exponential order c, truncated integral "
        "does not converge");
  const double T =
      truncation_horizon(rate, f.bound_M, f.growth_q, kTailRelTarget);
  const double w = panel_width(s.real(), f.osc_omega);
  return quad::composite(
      [&](double t) { return std::exp(-s * t) * f.time_eval(t); }, 0.0, T, w);
}

Complex laplace_numeric(const SampledSignal& f, ComplexFreq sf, TailMode tail,
                        Eigen::Index component) {
  const Complex s = sf.s;
  const TimeGrid& g = f.grid();
  Complex acc = 0.0;
  for (Eigen::Index k = 0; k < g.n; ++k) {
    const double wk = (k == 0 || k == g.n - 1) ? 0.5 : 1.0;
    acc += wk * std::exp(-s * g.time(k)) * f.values()(k, component);
  }
  acc *= g.h;
  if (tail == TailMode::constant)
    acc += f.values()(g.n - 1, component) * std::exp(-s * g.t_end()) / s;
  return acc;
}

CatalogFunction catalog_tq_sin(double q, double omega) {
  if (q < 0.0 || !(omega > 0.0))
    throw std::invalid_argument("catalog_tq_sin: need q >= 0, omega > 0");
  CatalogFunction fn;
  fn.name = "tq_sin(q=" + std::to_string(q) + ",omega=" + std::to_string(omega) + ")";
  fn.time_eval = [q, omega](double t) {
    return std::pow(t, q) * std::sin(omega * t);
  };
  const double gq1 = specfun::gamma_fn(q + 1.0);
  fn.transform_eval = [q, omega, gq1](Complex s) {
    const Complex iw(0.0, omega);
    const Complex num =
        std::pow(s + iw, q + 1.0) - std::pow(s - iw, q + 1.0);
    const Complex den =
        Complex(0.0, 2.0) * std::pow(s * s + omega * omega, q + 1.0);
    return gq1 * num / den;
  };
  if (q == 0.0) {
    fn.period_T = 2.0 * M_PI / omega;
    fn.deriv_eval = [omega](double t) { return omega * std::cos(omega * t); };
  } else if (q >= 1.0) {
    fn.deriv_eval = [q, omega](double t) {
      return q * std::pow(t, q - 1.0) * std::sin(omega * t) +
             omega * std::pow(t, q) * std::cos(omega * t);
    };
  }
  fn.exp_order_c = 0.0;
  fn.growth_q = q;
  fn.bound_M = 1.0;
  fn.osc_omega = omega;
  fn.known_sF_limit = 0.0;
  return fn;
}

Complex kernel_integral(const TransformEval& F, double alpha, ComplexFreq sf) {
  if (alpha < 0.0) throw std::invalid_argument("kernel_integral: alpha < 0");
  const Complex s = sf.s;

  // Tail-decay check: with v = 1/u, convergence near v = 0 needs
  // |F(s/v)| <= C v, i.e. F(sigma) -> 0 at least like 1/sigma.
  const double r4 = std::abs(F(s / 1e-4)) / 1e-4;
  const double r6 = std::abs(F(s / 1e-6)) / 1e-6;
  if (r6 > 4.0 * (r4 + 1e-300))
    throw std::runtime_error(
        "kernel_integral: integrand fails the tail-decay check at v -> 0");

  // The transformed integrand F(s/v)(1-v)^alpha has structure on the scale
  // of |s| near v = 0 (where s/v sweeps the transform's feature region).
  const double inner = std::min(0.125, std::abs(s) / 8.0);
  auto breakpoints = quad::geometric_breakpoints(0.0, 1.0, inner);
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-10;
  return quad::adaptive_segments(
      [&](double v) { return F(s / v) * std::pow(1.0 - v, alpha) / v; },
      breakpoints, opt);
}

MomentTestResult moment_vanishing_test(const SampledSignal& f, double s0,
                                       double l, int n_max, double tol) {
  if (!(s0 > 0.0) || !(l > 0.0))
    throw std::invalid_argument("moment_vanishing_test: need s0, l > 0");
  if (n_max < 0 || !(tol > 0.0))
    throw std::invalid_argument("moment_vanishing_test: bad n_max or tol");
  MomentTestResult r;
  r.scale = f.values().cwiseAbs().maxCoeff();
  r.moments.resize(n_max + 1);
  // near-zero signals should test true: the threshold never drops below tol
  const double floor = std::max(r.scale, 1.0);
  r.all_below = true;
  for (int n = 0; n <= n_max; ++n) {
    const double sn = s0 + static_cast<double>(n) * l;
    r.moments[n] =
        laplace_numeric(f, ComplexFreq(Complex(sn, 0.0)), TailMode::none)
            .real();
    if (std::abs(r.moments[n]) > tol * floor) r.all_below = false;
  }
  return r;
}

std::vector<double> binomial_series_partial_sums(
    double alpha, const std::vector<long>& checkpoints) {
  if (checkpoints.empty()) return {};
  std::vector<long> cps = checkpoints;
  std::sort(cps.begin(), cps.end());
  std::vector<double> out;
  out.reserve(cps.size());
  double term = 1.0;  // (-alpha)_n / n! at n = 0
  double sum = 0.0;
  std::size_t ci = 0;
  for (long n = 0; n <= cps.back(); ++n) {
    sum += term / static_cast<double>(n + 1);
    while (ci < cps.size() && cps[ci] == n) {
      out.push_back(sum);
      ++ci;
    }
    term *= (static_cast<double>(n) - alpha) / static_cast<double>(n + 1);
  }
  return out;
}

CesaroGrid CesaroGrid::for_smallest_s(double s_min) {
  if (!(s_min > 0.0))
    throw std::invalid_argument("CesaroGrid: s_min must be > 0");
  CesaroGrid g;
  g.horizon = std::max(200.0, 14.0 / s_min);
  g.h = std::max(g.horizon / 4e5, 0.004);
  return g;
}

std::vector<Complex> laplace_of_cesaro_profile(const CatalogFunction& f,
                                               double alpha,
                                               const std::vector<double>& s,
                                               const CesaroGrid& grid) {
  const auto n = static_cast<Eigen::Index>(std::lround(grid.horizon / grid.h)) + 1;
  TimeGrid tg(0.0, grid.h, n);
  SampledSignal fs = SampledSignal::from_function(tg, f.time_eval);
  SampledSignal g_alpha = cesaro_profile(fs, alpha);
  std::vector<Complex> out;
  out.reserve(s.size());
  for (double sv : s)
    out.push_back(laplace_numeric(g_alpha, ComplexFreq(Complex(sv, 0.0)),
                                  TailMode::constant));
  return out;
}

void Catalog::register_entry(CatalogFunction fn) {
  validate_entry(fn);
  entries_[fn.name] = std::move(fn);
}

const CatalogFunction& Catalog::at(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end())
    throw std::out_of_range("catalog: unknown function '" + name + "'");
  return it->second;
}

bool Catalog::contains(const std::string& name) const {
  return entries_.count(name) > 0;
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

void validate_entry(const CatalogFunction& fn) {
  if (!fn.time_eval)
    throw std::runtime_error("catalog entry '" + fn.name + "': no time_eval");
  if (fn.transform_eval) {
    const double probes[] = {0.6, 1.2, 2.3, 3.4, 4.7};
    for (double dp : probes) {
      const Complex s(fn.exp_order_c + dp, 0.0);
      const Complex closed = fn.transform_eval(s);
      const Complex numeric = laplace_numeric(fn, ComplexFreq(s));
      if (std::abs(numeric - closed) > 1e-6 * (std::abs(closed) + 1e-12))
        throw std::runtime_error("catalog entry '" + fn.name +
                                 "': numeric Laplace disagrees with "
                                 "transform_eval at registration probe");
    }
  }
  if (fn.period_T) {
    const double T = *fn.period_T;
    std::mt19937 rng(20260826);
    std::uniform_real_distribution<double> dist(0.0, 50.0 * T);
    for (int i = 0; i < 100; ++i) {
      const double t = dist(rng);
      if (std::abs(fn.time_eval(t + T) - fn.time_eval(t)) > 1e-10)
        throw std::runtime_error("catalog entry '" + fn.name +
                                 "': period_T check failed");
    }
  }
}

Catalog Catalog::standard() {
  Catalog c;
  {
    CatalogFunction f;
    f.name = "const1";
    f.time_eval = [](double) { return 1.0; };
    f.transform_eval = [](Complex s) { return 1.0 / s; };
    f.deriv_eval = [](double) { return 0.0; };
    f.known_sF_limit = 1.0;
    c.register_entry(std::move(f));
  }
  {
    CatalogFunction f;
    f.name = "const5";
    f.time_eval = [](double) { return 5.0; };
    f.transform_eval = [](Complex s) { return 5.0 / s; };
    f.deriv_eval = [](double) { return 0.0; };
    f.bound_M = 5.0;
    f.period_T = 1.0;  // constants are periodic with any period
    f.known_sF_limit = 5.0;
    c.register_entry(std::move(f));
  }
  {
    CatalogFunction f;
    f.name = "exp_decay";
    f.time_eval = [](double t) { return std::exp(-t); };
    f.transform_eval = [](Complex s) { return 1.0 / (s + 1.0); };
    f.deriv_eval = [](double t) { return -std::exp(-t); };
    f.known_sF_limit = 0.0;
    c.register_entry(std::move(f));
  }
  {
    CatalogFunction f;
    f.name = "sin";
    f.time_eval = [](double t) { return std::sin(t); };
    f.transform_eval = [](Complex s) { return 1.0 / (s * s + 1.0); };
    f.deriv_eval = [](double t) { return std::cos(t); };
    f.osc_omega = 1.0;
    f.period_T = 2.0 * M_PI;
    f.known_sF_limit = 0.0;
    c.register_entry(std::move(f));
  }
  {
    CatalogFunction f;
    f.name = "cos";
    f.time_eval = [](double t) { return std::cos(t); };
    f.transform_eval = [](Complex s) { return s / (s * s + 1.0); };
    f.deriv_eval = [](double t) { return -std::sin(t); };
    f.osc_omega = 1.0;
    f.period_T = 2.0 * M_PI;
    f.known_sF_limit = 0.0;
    c.register_entry(std::move(f));
  }
  {
    CatalogFunction f;
    f.name = "two_plus_cos3";
    f.time_eval = [](double t) { return 2.0 + std::cos(3.0 * t); };
    f.transform_eval = [](Complex s) { return 2.0 / s + s / (s * s + 9.0); };
    f.deriv_eval = [](double t) { return -3.0 * std::sin(3.0 * t); };
    f.osc_omega = 3.0;
    f.bound_M = 3.0;
    f.period_T = 2.0 * M_PI / 3.0;
    f.known_sF_limit = 2.0;
    c.register_entry(std::move(f));
  }
  {
    CatalogFunction f;
    f.name = "t_ramp";
    f.time_eval = [](double t) { return t; };
    f.transform_eval = [](Complex s) { return 1.0 / (s * s); };
    f.deriv_eval = [](double) { return 1.0; };
    f.growth_q = 1.0;
    c.register_entry(std::move(f));
  }
  return c;
}

}  // namespace fracfvt::xform
