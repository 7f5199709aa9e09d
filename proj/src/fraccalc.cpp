#include "fracfvt/fraccalc.hpp"

#include <unsupported/Eigen/FFT>

#include <map>
#include <memory>
#include <mutex>

#include "fracfvt/specfun.hpp"

namespace fracfvt {

namespace {

// Product-trapezoidal weights for I^alpha at node k:
//   I(t_k) = h^alpha / Gamma(alpha+2) *
//            [ edge(k) f_0 + sum_{j=1}^{k-1} diff(k-j) f_j + f_k ],  k >= 1
// with diff(m) = (m+1)^{a1} - 2 m^{a1} + (m-1)^{a1}, a1 = alpha + 1, and
// edge(k) = (k-1)^{a1} - (k - alpha - 1) k^alpha.
struct RlWeights {
  Eigen::ArrayXd diff;  // diff[m], m = 1 .. n-2 (diff[0] unused)
  Eigen::ArrayXd edge;  // edge[k], k = 1 .. n-1 (edge[0] unused)
};

std::shared_ptr<const RlWeights> rl_weights(double alpha, Eigen::Index n) {
  static std::mutex mtx;
  static std::map<std::pair<double, Eigen::Index>,
                  std::shared_ptr<const RlWeights>>
      cache;
  {
    std::lock_guard lock(mtx);
    if (auto it = cache.find({alpha, n}); it != cache.end()) return it->second;
  }

  const double a1 = alpha + 1.0;
  Eigen::ArrayXd pow_a1(n + 1);
  for (Eigen::Index m = 0; m <= n; ++m)
    pow_a1[m] = std::pow(static_cast<double>(m), a1);

  auto w = std::make_shared<RlWeights>();
  w->diff = Eigen::ArrayXd::Zero(std::max<Eigen::Index>(n - 1, 1));
  for (Eigen::Index m = 1; m <= n - 2; ++m)
    w->diff[m] = pow_a1[m + 1] - 2.0 * pow_a1[m] + pow_a1[m - 1];
  w->edge = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    w->edge[k] = pow_a1[k - 1] - (kd - alpha - 1.0) * std::pow(kd, alpha);
  }

  std::lock_guard lock(mtx);
  auto [it, inserted] = cache.emplace(std::make_pair(alpha, n), std::move(w));
  return it->second;
}

// Linear convolution c_k = sum_{j} d[k-j] f[j] for k < n, with d[0] = 0 and
// f[0] ignored by construction (both zeroed by the caller).
Eigen::ArrayXd convolve_fft(const Eigen::ArrayXd& d, const Eigen::ArrayXd& f) {
  const Eigen::Index n = f.size();
  Eigen::Index fft_n = 1;
  while (fft_n < 2 * n) fft_n <<= 1;
  Eigen::FFT<double> fft;
  std::vector<double> a(fft_n, 0.0), b(fft_n, 0.0);
  for (Eigen::Index i = 0; i < d.size(); ++i) a[i] = d[i];
  for (Eigen::Index i = 0; i < n; ++i) b[i] = f[i];
  std::vector<std::complex<double>> fa, fb;
  fft.fwd(fa, a);
  fft.fwd(fb, b);
  for (Eigen::Index i = 0; i < fft_n; ++i) fa[i] *= fb[i];
  std::vector<double> c;
  fft.inv(c, fa);
  Eigen::ArrayXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = c[i];
  return out;
}

Eigen::ArrayXd convolve_direct(const Eigen::ArrayXd& d,
                               const Eigen::ArrayXd& f) {
  const Eigen::Index n = f.size();
  Eigen::ArrayXd out = Eigen::ArrayXd::Zero(n);
  for (Eigen::Index k = 2; k < n; ++k) {
    double s = 0.0;
    for (Eigen::Index j = 1; j < k; ++j) s += d[k - j] * f[j];
    out[k] = s;
  }
  return out;
}

constexpr Eigen::Index kFftThreshold = 4096;

}  // namespace

SampledSignal rl_integral(const SampledSignal& f, FracOrder order) {
  if (!(order.alpha > 0.0))
    throw std::invalid_argument("rl_integral: alpha must be > 0");
  const TimeGrid& g = f.grid();
  const Eigen::Index n = g.n;
  const auto w = rl_weights(order.alpha, n);
  const double scale =
      std::pow(g.h, order.alpha) /
      specfun::gamma_fn(order.alpha + 2.0);

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, f.dim());
  for (Eigen::Index c = 0; c < f.dim(); ++c) {
    Eigen::ArrayXd col = f.values().col(c).array();
    Eigen::ArrayXd interior = col;
    interior[0] = 0.0;  // edge node handled separately
    Eigen::ArrayXd conv;
    if (n > kFftThreshold) {
      conv = convolve_fft(w->diff, interior);
      // FFT roundoff is absolute (scales with the largest products in the
      // convolution); the first nodes have tiny exact values and downstream
      // consumers divide them by powers of t, so recompute them directly.
      const Eigen::Index head = std::min<Eigen::Index>(n, kFftThreshold);
      for (Eigen::Index k = 2; k < head; ++k) {
        double s = 0.0;
        for (Eigen::Index j = 1; j < k; ++j)
          s += w->diff[k - j] * interior[j];
        conv[k] = s;
      }
    } else {
      conv = convolve_direct(w->diff, interior);
    }
    for (Eigen::Index k = 1; k < n; ++k) {
      double s = w->edge[k] * col[0] + col[k];
      if (k >= 2) s += conv[k];
      out(k, c) = scale * s;
    }
  }
  return SampledSignal(g, std::move(out));
}

SampledSignal derivative_o2(const SampledSignal& x) {
  const TimeGrid& g = x.grid();
  const Eigen::Index n = g.n;
  if (n < 3) throw std::invalid_argument("derivative_o2: need n >= 3");
  const Eigen::MatrixXd& v = x.values();
  Eigen::MatrixXd d(n, x.dim());
  const double inv2h = 1.0 / (2.0 * g.h);
  d.row(0) = (-3.0 * v.row(0) + 4.0 * v.row(1) - v.row(2)) * inv2h;
  for (Eigen::Index k = 1; k < n - 1; ++k)
    d.row(k) = (v.row(k + 1) - v.row(k - 1)) * inv2h;
  d.row(n - 1) =
      (3.0 * v.row(n - 1) - 4.0 * v.row(n - 2) + v.row(n - 3)) * inv2h;
  return SampledSignal(g, std::move(d));
}

SampledSignal caputo_derivative(const SampledSignal& x, FracOrder order) {
  if (!(order.alpha > 0.0))
    throw std::invalid_argument("caputo_derivative: alpha must be > 0");
  const int m = order.m;
  if (x.grid().n < 2 * m + 2)
    throw std::invalid_argument("caputo_derivative: grid too coarse");
  SampledSignal dm = x;
  for (int i = 0; i < m; ++i) dm = derivative_o2(dm);
  if (order.is_integer()) return dm;
  return rl_integral(dm, FracOrder::of(static_cast<double>(m) - order.alpha));
}

SampledSignal cesaro_profile(const SampledSignal& f, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("cesaro_profile: alpha < 0");
  const TimeGrid& g = f.grid();
  if (g.t0 != 0.0)
    throw std::invalid_argument("cesaro_profile: grid must start at t = 0");
  const double a1 = alpha + 1.0;
  SampledSignal integ = rl_integral(f, FracOrder::of(a1));
  const double gam = specfun::gamma_fn(a1);
  Eigen::MatrixXd out(g.n, f.dim());
  // limit value as t -> 0+: g_alpha(t) = int_0^1 (1-u)^alpha f(tu) du tends
  // to f(0) int_0^1 (1-u)^alpha du = f(0)/(alpha+1)
  out.row(0) = f.values().row(0) / a1;
  for (Eigen::Index k = 1; k < g.n; ++k)
    out.row(k) = gam * integ.values().row(k) / std::pow(g.time(k), a1);
  return SampledSignal(g, std::move(out));
}

double semigroup_defect(const SampledSignal& f, double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("semigroup_defect: orders must be > 0");
  SampledSignal nested = rl_integral(rl_integral(f, FracOrder::of(beta)),
                                     FracOrder::of(alpha));
  SampledSignal direct = rl_integral(f, FracOrder::of(alpha + beta));
  return (nested.values() - direct.values()).cwiseAbs().maxCoeff();
}

Eigen::VectorXd trapezoid_integral(const SampledSignal& f) {
  const Eigen::Index n = f.grid().n;
  Eigen::VectorXd s =
      f.values().block(1, 0, n - 2, f.dim()).colwise().sum().transpose();
  s += 0.5 * (f.values().row(0) + f.values().row(n - 1)).transpose();
  return f.grid().h * s;
}

}  // namespace fracfvt
