#ifndef FRACFVT_QUADRATURE_HPP
#define FRACFVT_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracfvt::quad {

// Gauss-Kronrod 7-15 pair on [-1,1] (QUADPACK dqk15 constants).
namespace detail {
inline constexpr double kXgk[8] = {
    0.991455371120812639, 0.949107912342758525, 0.864864423359769073,
    0.741531185599394440, 0.586087235467691130, 0.405845151377397167,
    0.207784955007898468, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529225, 0.063092092629978553, 0.104790010322250184,
    0.140653259715525919, 0.169004726639267903, 0.190350578064785410,
    0.204432940075298892, 0.209482141084727828};
inline constexpr double kWg[4] = {
    0.129484966168869693, 0.279705391489276668, 0.381830050505118945,
    0.417959183673469388};

template <typename T>
double abs_of(const T& v) {
  if constexpr (std::is_same_v<T, std::complex<double>>)
    return std::abs(v);
  else
    return std::abs(static_cast<double>(v));
}
}  // namespace detail

template <typename F>
struct GKResult {
  using value_type = decltype(std::declval<F&>()(0.0));
  value_type value{};
  double error = 0.0;
};

// One Gauss-Kronrod 7-15 panel on [a,b]; error estimate is |K15 - G7|.
template <typename F>
auto gauss_kronrod(F&& f, double a, double b) {
  using detail::kWg;
  using detail::kWgk;
  using detail::kXgk;
  using V = decltype(f(0.0));
  const double mid = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const V fc = f(mid);
  V kronrod = kWgk[7] * fc;
  V gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const V fp = f(mid + hl * kXgk[i]);
    const V fm = f(mid - hl * kXgk[i]);
    kronrod += kWgk[i] * (fp + fm);
    if (i % 2 == 1) gauss += kWg[i / 2] * (fp + fm);
  }
  kronrod *= hl;
  gauss *= hl;
  GKResult<F> r;
  r.value = kronrod;
  r.error = detail::abs_of<V>(kronrod - gauss);
  return r;
}

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 40;
};

namespace detail {
template <typename F, typename V>
void adaptive_rec(F& f, double a, double b, double tol, int depth,
                  const AdaptiveOptions& opt, V& acc) {
  auto r = gauss_kronrod(f, a, b);
  if (r.error <= tol || depth >= opt.max_depth) {
    acc += r.value;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_rec(f, a, mid, 0.5 * tol, depth + 1, opt, acc);
  adaptive_rec(f, mid, b, 0.5 * tol, depth + 1, opt, acc);
}
}  // namespace detail

// Adaptive bisection driven by the GK error estimate.
template <typename F>
auto adaptive(F&& f, double a, double b, AdaptiveOptions opt = {}) {
  using V = decltype(f(0.0));
  auto first = gauss_kronrod(f, a, b);
  const double scale = detail::abs_of<V>(first.value);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);
  V acc{};
  detail::adaptive_rec(f, a, b, tol, 0, opt, acc);
  return acc;
}

// Adaptive integration over a partition; each segment gets a share of the
// tolerance proportional to its first-pass error estimate.
template <typename F>
auto adaptive_segments(F&& f, const std::vector<double>& breakpoints,
                       AdaptiveOptions opt = {}) {
  using V = decltype(f(0.0));
  if (breakpoints.size() < 2)
    throw std::invalid_argument("adaptive_segments: need >= 2 breakpoints");
  V acc{};
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    acc += adaptive(f, breakpoints[i], breakpoints[i + 1], opt);
  }
  return acc;
}

// Composite fixed-panel GK15 (no refinement); suited to integrands whose
// resolution scale is known, e.g. oscillatory ones.
template <typename F>
auto composite(F&& f, double a, double b, double max_panel_width) {
  using V = decltype(f(0.0));
  if (!(max_panel_width > 0)) throw std::invalid_argument("panel width <= 0");
  const auto panels =
      static_cast<std::size_t>(std::ceil((b - a) / max_panel_width));
  const double w = (b - a) / static_cast<double>(panels);
  V acc{};
  for (std::size_t i = 0; i < panels; ++i) {
    acc += gauss_kronrod(f, a + static_cast<double>(i) * w,
                         a + static_cast<double>(i + 1) * w)
               .value;
  }
  return acc;
}

// Breakpoints geometrically refined toward `a`; used where the integrand has
// structure on the scale `inner` near the left endpoint.
inline std::vector<double> geometric_breakpoints(double a, double b,
                                                 double inner) {
  std::vector<double> pts{a};
  double x = inner;
  while (x < b) {
    if (x > a) pts.push_back(x);
    x *= 2.0;
  }
  pts.push_back(b);
  return pts;
}

}  // namespace fracfvt::quad

#endif
