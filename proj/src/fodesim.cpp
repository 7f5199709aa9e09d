#include "fracfvt/fodesim.hpp"

#include <chrono>
#include <cmath>

#include "fracfvt/fraccalc.hpp"
#include "fracfvt/specfun.hpp"
#include "fracfvt/xform.hpp"

namespace fracfvt::fodesim {

namespace {

constexpr long kStepCap = 200000;
constexpr double kBlowUpNorm = 1e12;
constexpr double kGolden = 0.6180339887498949;

// Crude local Lipschitz estimate of the rhs at x0 (max column norm of a
// forward-difference Jacobian).
double lipschitz_estimate(const Rhs& rhs, const Eigen::VectorXd& x0) {
  const double eps = 1e-6 * std::max(1.0, x0.norm());
  const Eigen::VectorXd f0 = rhs(x0);
  double L = 0.0;
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    Eigen::VectorXd xp = x0;
    xp[i] += eps;
    L = std::max(L, (rhs(xp) - f0).norm() / eps);
  }
  return L;
}

}  // namespace

void FodeProblem::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("FodeProblem: alpha must be in (0,1)");
  if (!rhs) throw std::invalid_argument("FodeProblem: rhs not set");
  if (x0.size() < 1) throw std::invalid_argument("FodeProblem: empty x0");
  if (!(horizon > 0.0) || !(h > 0.0))
    throw std::invalid_argument("FodeProblem: horizon and h must be > 0");
  const double steps = horizon / h;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
    throw std::invalid_argument("FodeProblem: horizon/h must be an integer");
}

Trajectory solve(const FodeProblem& p) {
  p.validate();
  const auto steps = static_cast<long>(std::llround(p.horizon / p.h));
  if (steps > kStepCap)
    throw std::invalid_argument("solve: step count exceeds the 2e5 cap");
  const Eigen::Index n = steps + 1;
  const Eigen::Index d = p.x0.size();
  const double a = p.alpha;

  Trajectory traj;
  traj.grid = TimeGrid(0.0, p.h, n);
  traj.states.resize(n, d);
  traj.states.row(0) = p.x0.transpose();
  traj.contraction_warning =
      std::pow(p.h, a) * lipschitz_estimate(p.rhs, p.x0) > 0.5;

  Eigen::ArrayXd pow_a(n + 1), pow_a1(n + 1);
  for (Eigen::Index m = 0; m <= n; ++m) {
    pow_a[m] = std::pow(static_cast<double>(m), a);
    pow_a1[m] = std::pow(static_cast<double>(m), a + 1.0);
  }

  Eigen::MatrixXd fhist(n, d);  // f(x_j) history
  fhist.row(0) = p.rhs(p.x0).transpose();
  traj.rhs_evals = 1;

  const double pred_scale = std::pow(p.h, a) / specfun::gamma_fn(a + 1.0);
  const double corr_scale = std::pow(p.h, a) / specfun::gamma_fn(a + 2.0);

  for (long k = 0; k < steps; ++k) {
    // predictor: product rectangle
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d);
    for (long j = 0; j <= k; ++j)
      acc += (pow_a[k + 1 - j] - pow_a[k - j]) * fhist.row(j);
    const Eigen::RowVectorXd xpred =
        p.x0.transpose() + pred_scale * acc;

    // corrector: product trapezoid, one correction
    const Eigen::VectorXd fpred = p.rhs(xpred.transpose());
    Eigen::RowVectorXd cacc =
        (pow_a1[k] - (static_cast<double>(k) - a) * pow_a[k + 1]) *
        fhist.row(0);
    for (long j = 1; j <= k; ++j)
      cacc += (pow_a1[k - j + 2] + pow_a1[k - j] - 2.0 * pow_a1[k - j + 1]) *
              fhist.row(j);
    cacc += fpred.transpose();
    const Eigen::RowVectorXd xnew = p.x0.transpose() + corr_scale * cacc;

    if (!xnew.allFinite() || xnew.norm() > kBlowUpNorm)
      throw std::runtime_error("solve: trajectory blow-up");
    traj.states.row(k + 1) = xnew;
    fhist.row(k + 1) = p.rhs(xnew.transpose()).transpose();
    traj.rhs_evals += 2;
  }
  return traj;
}

Trajectory resume(const Trajectory&, double) {
  throw std::logic_error(
      "resume: restarts are not supported; the Caputo operator's memory is "
      "global, re-solve from t = 0 with a longer horizon");
}

Trajectory solve_classical_rk4(const Rhs& rhs, const Eigen::VectorXd& x0,
                               double horizon, double h) {
  const auto steps = static_cast<long>(std::llround(horizon / h));
  Trajectory traj;
  traj.grid = TimeGrid(0.0, h, steps + 1);
  traj.states.resize(steps + 1, x0.size());
  traj.states.row(0) = x0.transpose();
  Eigen::VectorXd x = x0;
  for (long k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = rhs(x);
    const Eigen::VectorXd k2 = rhs(x + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(x + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.states.row(k + 1) = x.transpose();
    traj.rhs_evals += 4;
  }
  return traj;
}

namespace {

double residual_at(const SampledSignal& sig, double T, double t_skip,
                   double window) {
  const TimeGrid& g = sig.grid();
  const auto k0 = static_cast<Eigen::Index>(std::ceil(t_skip / g.h));
  const auto k1 = static_cast<Eigen::Index>(
      std::floor((t_skip + window) / g.h));
  double r = 0.0;
  for (Eigen::Index k = k0; k <= k1; ++k) {
    const Eigen::VectorXd shifted = sig.interpolate(g.time(k) + T);
    const double dev =
        (shifted - sig.values().row(k).transpose()).cwiseAbs().maxCoeff();
    r = std::max(r, dev);
  }
  return r;
}

}  // namespace

PeriodScan periodicity_residual(const Trajectory& traj,
                                const std::vector<double>& T_candidates,
                                double window,
                                std::optional<double> t_skip_opt) {
  if (T_candidates.empty())
    throw std::invalid_argument("periodicity_residual: no candidates");
  const SampledSignal sig = traj.signal();
  const double horizon = sig.grid().t_end();
  const double t_skip = t_skip_opt.value_or(0.2 * horizon);
  const double T_max = *std::max_element(T_candidates.begin(),
                                         T_candidates.end());
  if (t_skip + window + T_max > horizon + 1e-9)
    throw std::invalid_argument(
        "periodicity_residual: horizon too short for window + max(T)");

  PeriodScan scan;
  for (double T : T_candidates)
    scan.residuals.emplace_back(T, residual_at(sig, T, t_skip, window));
  auto best = std::min_element(
      scan.residuals.begin(), scan.residuals.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  scan.best_T = best->first;
  scan.best_residual = best->second;

  // golden-section sharpening between the best candidate's neighbors
  {
    const auto idx =
        static_cast<std::size_t>(best - scan.residuals.begin());
    double lo = idx > 0 ? scan.residuals[idx - 1].first : best->first;
    double hi = idx + 1 < scan.residuals.size()
                    ? scan.residuals[idx + 1].first
                    : best->first;
    if (hi > lo) {
      double x1 = hi - kGolden * (hi - lo);
      double x2 = lo + kGolden * (hi - lo);
      double f1 = residual_at(sig, x1, t_skip, window);
      double f2 = residual_at(sig, x2, t_skip, window);
      for (int it = 0; it < 40 && hi - lo > 1e-6; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kGolden * (hi - lo);
          f1 = residual_at(sig, x1, t_skip, window);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kGolden * (hi - lo);
          f2 = residual_at(sig, x2, t_skip, window);
        }
      }
      const double Tr = 0.5 * (lo + hi);
      const double fr = residual_at(sig, Tr, t_skip, window);
      if (fr < scan.best_residual) {
        scan.best_T = Tr;
        scan.best_residual = fr;
      }
    }
  }

  // nonconstancy over the window
  const TimeGrid& g = sig.grid();
  const auto k0 = static_cast<Eigen::Index>(std::ceil(t_skip / g.h));
  const auto k1 =
      static_cast<Eigen::Index>(std::floor((t_skip + window) / g.h));
  const Eigen::RowVectorXd mean =
      sig.values().middleRows(k0, k1 - k0 + 1).colwise().mean();
  scan.nonconstancy = (sig.values().middleRows(k0, k1 - k0 + 1).rowwise() -
                       mean)
                          .cwiseAbs()
                          .maxCoeff();
  return scan;
}

double certificate_integral(const SampledSignal& xprime, double T,
                            double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("certificate_integral: alpha must be in (0,1)");
  const TimeGrid& g = xprime.grid();
  if (g.t0 != 0.0)
    throw std::invalid_argument("certificate_integral: grid must start at 0");
  const auto nT = static_cast<Eigen::Index>(std::llround(T / g.h));
  if (nT < 2 || nT > g.n - 1)
    throw std::invalid_argument("certificate_integral: T outside the grid");

  // int_0^T (T-tau)^{a-1} y(tau) dtau with a = 2 - alpha, product-trapezoid:
  // exactly Gamma(a) * (I^a y)(T) evaluated at the final node only, O(n).
  const double a = 2.0 - alpha;
  const double a1 = a + 1.0;
  const double scale = std::pow(g.h, a) / (a * (a + 1.0));
  Eigen::VectorXd comp(xprime.dim());
  for (Eigen::Index c = 0; c < xprime.dim(); ++c) {
    const double nd = static_cast<double>(nT);
    double acc = (std::pow(nd - 1.0, a1) - (nd - a - 1.0) * std::pow(nd, a)) *
                 xprime.values()(0, c);
    for (Eigen::Index j = 1; j < nT; ++j) {
      const double m = static_cast<double>(nT - j);
      acc += (std::pow(m + 1.0, a1) + std::pow(m - 1.0, a1) -
              2.0 * std::pow(m, a1)) *
             xprime.values()(j, c);
    }
    acc += xprime.values()(nT, c);
    comp[c] = scale * acc;
  }
  return xprime.dim() == 1 ? comp[0] : comp.norm();
}

double certificate_integral(const Trajectory& traj, double T, double alpha) {
  return certificate_integral(derivative_o2(traj.signal()), T, alpha);
}

ReportRecord frequency_side_check(const SampledSignal& x, double alpha,
                                  double T,
                                  const std::vector<double>& s_seq) {
  const auto start = std::chrono::steady_clock::now();
  ReportRecord rec;
  rec.experiment_id = "frequency_side_check/alpha=" + std::to_string(alpha);
  rec.inputs["alpha"] = alpha;
  rec.inputs["T"] = T;
  rec.inputs["s_seq"] = s_seq;
  const double tol = 1e-3;
  rec.tolerances["identity_gap"] = tol;

  const SampledSignal xp = derivative_o2(x);
  const SampledSignal dax = caputo_derivative(x, FracOrder::of(alpha));

  std::vector<double> gaps;
  std::vector<std::pair<double, double>> a_pts;
  for (double s : s_seq) {
    const xform::ComplexFreq sf{std::complex<double>(s, 0.0)};
    const double A =
        std::pow(s, alpha) *
        xform::laplace_numeric(xp, sf, xform::TailMode::none).real();
    const double B =
        s * xform::laplace_numeric(dax, sf, xform::TailMode::none).real();
    gaps.push_back(std::abs(A - B));
    a_pts.emplace_back(std::pow(s, alpha), A);  // extrapolate in s^alpha
  }
  std::sort(a_pts.begin(), a_pts.end(),
            [](const auto& u, const auto& v) { return u.first > v.first; });
  double A0 = 0.0;
  {
    std::vector<double> sx, sy;
    for (auto& [u, v] : a_pts) sx.push_back(u), sy.push_back(v);
    // Neville to sigma = 0
    std::vector<double> p = sy;
    for (std::size_t lvl = 1; lvl < sx.size(); ++lvl)
      for (std::size_t i = 0; i + lvl < sx.size(); ++i)
        p[i] = (sx[i + lvl] * p[i] - sx[i] * p[i + 1]) / (sx[i + lvl] - sx[i]);
    A0 = p[0];
  }

  // one-period mean of the Caputo derivative
  const auto nT = static_cast<Eigen::Index>(std::llround(T / x.grid().h));
  SampledSignal head(TimeGrid(0.0, x.grid().h, nT + 1),
                     dax.values().topRows(nT + 1));
  const double mean_dax = trapezoid_integral(head)[0] / T;

  rec.outputs["gaps"] = gaps;
  rec.outputs["max_gap"] = *std::max_element(gaps.begin(), gaps.end());
  rec.outputs["extrapolated_s_alpha_L_xprime"] = A0;
  rec.outputs["period_mean_caputo"] = mean_dax;
  rec.status = (*std::max_element(gaps.begin(), gaps.end()) <= tol)
                   ? Status::pass
                   : Status::fail;
  rec.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return rec;
}

Rhs rhs_registry(const std::string& name) {
  if (name == "linear_decay")
    return [](const Eigen::VectorXd& x) { return (-x).eval(); };
  if (name == "rotation")
    return [](const Eigen::VectorXd& x) {
      if (x.size() != 2)
        throw std::invalid_argument("rotation rhs needs a 2-d state");
      Eigen::VectorXd out(2);
      out << -x[1], x[0];
      return out;
    };
  if (name == "logistic")
    return [](const Eigen::VectorXd& x) {
      return (x.array() * (1.0 - x.array())).matrix().eval();
    };
  if (name == "zero")
    return [](const Eigen::VectorXd& x) {
      return Eigen::VectorXd::Zero(x.size()).eval();
    };
  throw std::out_of_range("unknown rhs: " + name);
}

std::vector<std::string> rhs_names() {
  return {"linear_decay", "rotation", "logistic", "zero"};
}

}  // namespace fracfvt::fodesim
