#include <doctest.h>

#include <cmath>

#include <fracfvt/fodesim.hpp>
#include <fracfvt/specfun.hpp>

using namespace fracfvt;

namespace {

fodesim::FodeProblem decay_problem(double alpha, double horizon, double h) {
  fodesim::FodeProblem p;
  p.alpha = alpha;
  p.rhs = fodesim::rhs_registry("linear_decay");
  p.x0 = Eigen::VectorXd::Ones(1);
  p.horizon = horizon;
  p.h = h;
  return p;
}

}  // namespace

TEST_CASE("solve near alpha = 1 approaches the exponential") {
  const auto traj = fodesim::solve(decay_problem(0.999, 1.0, 1e-3));
  const double x1 = traj.states(traj.grid.n - 1, 0);
  CHECK(std::abs(x1 - 0.3678794) <= 2e-3);
}

TEST_CASE("solve at alpha = 0.5 matches the Mittag-Leffler oracle") {
  const auto traj = fodesim::solve(decay_problem(0.5, 5.0, 1e-3));
  double err = 0.0;
  for (Eigen::Index k = 0; k < traj.grid.n; ++k) {
    const double t = traj.grid.time(k);
    const double exact = specfun::mittag_leffler_real(0.5, -std::sqrt(t));
    err = std::max(err, std::abs(traj.states(k, 0) - exact));
  }
  CHECK(err <= 1e-3);
}

TEST_CASE("zero rhs keeps the trajectory constant") {
  fodesim::FodeProblem p;
  p.alpha = 0.6;
  p.rhs = fodesim::rhs_registry("zero");
  p.x0 = Eigen::VectorXd::Constant(2, 1.5);
  p.horizon = 2.0;
  p.h = 1e-2;
  const auto traj = fodesim::solve(p);
  CHECK((traj.states.array() - 1.5).abs().maxCoeff() == 0.0);
}

TEST_CASE("problem validation") {
  auto p = decay_problem(1.0, 1.0, 1e-3);
  CHECK_THROWS(p.validate());
  p = decay_problem(0.0, 1.0, 1e-3);
  CHECK_THROWS(p.validate());
  p = decay_problem(0.5, 1.0, 3e-3);  // horizon/h not an integer
  CHECK_THROWS(p.validate());
  p = decay_problem(0.5, 1.0, 1e-3);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("solve throws on blow-up") {
  fodesim::FodeProblem p;
  p.alpha = 0.5;
  p.rhs = [](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(x.array().square().matrix() * 40.0);
  };
  p.x0 = Eigen::VectorXd::Constant(1, 5.0);
  p.horizon = 10.0;
  p.h = 1e-2;
  CHECK_THROWS(fodesim::solve(p));
}

TEST_CASE("resume is refused: Caputo memory is global") {
  const auto traj = fodesim::solve(decay_problem(0.5, 1.0, 1e-2));
  CHECK_THROWS_AS(fodesim::resume(traj, 1.0), std::logic_error);
}

TEST_CASE("alpha -> 1 trajectories approach the RK4 reference monotonically") {
  Eigen::VectorXd x0(2);
  x0 << 1.0, 0.0;
  const auto rhs = fodesim::rhs_registry("rotation");
  const auto ref = fodesim::solve_classical_rk4(rhs, x0, 5.0, 1e-3);
  double prev = std::numeric_limits<double>::infinity();
  for (const double a : {0.9, 0.99, 0.999}) {
    fodesim::FodeProblem p;
    p.alpha = a;
    p.rhs = rhs;
    p.x0 = x0;
    p.horizon = 5.0;
    p.h = 1e-3;
    const auto traj = fodesim::solve(p);
    const double gap =
        (traj.states - ref.states).cwiseAbs().maxCoeff();
    CHECK(gap < prev);
    prev = gap;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("periodicity_residual on an analytic cosine") {
  // linear interpolation error is h^2/8 |x''|, so h = 5e-5 keeps the
  // residual at the 1e-9 scale
  const TimeGrid grid(0.0, 5e-5, 1000001);  // [0, 50]
  fodesim::Trajectory traj;
  traj.grid = grid;
  traj.states.resize(grid.n, 1);
  for (Eigen::Index k = 0; k < grid.n; ++k)
    traj.states(k, 0) = std::cos(grid.time(k));
  const auto scan =
      fodesim::periodicity_residual(traj, {2.0 * M_PI}, 10.0);
  CHECK(scan.best_residual <= 1e-9);
  CHECK(scan.nonconstancy > 0.5);
}

TEST_CASE("periodicity_residual on a constant trajectory is zero") {
  const TimeGrid grid(0.0, 1e-2, 5001);
  fodesim::Trajectory traj;
  traj.grid = grid;
  traj.states = Eigen::MatrixXd::Constant(grid.n, 1, 2.0);
  const auto scan =
      fodesim::periodicity_residual(traj, {1.0, 3.0, 7.0}, 10.0);
  CHECK(scan.best_residual == 0.0);
  CHECK(scan.nonconstancy == 0.0);
}

TEST_CASE("periodicity_residual rejects too-short horizons") {
  const TimeGrid grid(0.0, 1e-2, 501);  // [0, 5]
  fodesim::Trajectory traj;
  traj.grid = grid;
  traj.states = Eigen::MatrixXd::Zero(grid.n, 1);
  CHECK_THROWS(fodesim::periodicity_residual(traj, {4.0}, 3.0));
}

TEST_CASE("certificate_integral oracle values") {
  const Eigen::Index n = 62832;
  const double h = 2.0 * M_PI / static_cast<double>(n - 1);
  const auto xprime = SampledSignal::from_function(
      TimeGrid(0.0, h, n), [](double t) { return -std::sin(t); });

  // adaptive-quadrature oracles for int_0^{2pi} (2pi-tau)^{1-a}(-sin tau) dtau
  CHECK(std::abs(fodesim::certificate_integral(xprime, 2.0 * M_PI, 0.3) -
                 (-3.2257487305705095)) <= 1e-4);
  CHECK(std::abs(fodesim::certificate_integral(xprime, 2.0 * M_PI, 0.5) -
                 (-1.8946933782043324)) <= 1e-4);
  CHECK(std::abs(fodesim::certificate_integral(xprime, 2.0 * M_PI, 0.7) -
                 (-0.9443967722617810)) <= 1e-4);
  // alpha -> 1: kernel -> 1 and the full-period integral of x' vanishes
  CHECK(std::abs(fodesim::certificate_integral(xprime, 2.0 * M_PI, 0.999)) <=
        1e-2);
}

TEST_CASE("certificate_integral of a constant trajectory vanishes") {
  const TimeGrid grid(0.0, 1e-3, 10001);
  SampledSignal zero(grid, Eigen::MatrixXd::Zero(grid.n, 1));
  CHECK(std::abs(fodesim::certificate_integral(zero, 5.0, 0.5)) <= 1e-12);
}

TEST_CASE("frequency_side_check on the analytic cosine") {
  // the horizon must cover several 1/s at the smallest s, and the s
  // sequence must sit where the sigma = s^alpha model error is below 1e-3
  const TimeGrid grid(0.0, 1e-3, 600001);  // [0, 600]
  const auto x = SampledSignal::from_function(
      grid, [](double t) { return std::cos(t); });
  const auto rec =
      fodesim::frequency_side_check(x, 0.5, 2.0 * M_PI, {0.05, 0.03, 0.015});
  CHECK(rec.status != Status::fail);
  const double gap = rec.outputs.at("max_gap").get<double>();
  CHECK(gap <= 1e-3);
  const double extrap =
      rec.outputs.at("extrapolated_s_alpha_L_xprime").get<double>();
  CHECK(std::abs(extrap) <= 1e-3);
}

TEST_CASE("rhs registry") {
  CHECK_THROWS(fodesim::rhs_registry("nosuch"));
  const auto names = fodesim::rhs_names();
  CHECK(std::find(names.begin(), names.end(), "rotation") != names.end());
  Eigen::VectorXd v(2);
  v << 1.0, 2.0;
  const Eigen::VectorXd r = fodesim::rhs_registry("rotation")(v);
  CHECK(r(0) == -2.0);
  CHECK(r(1) == 1.0);
  const Eigen::VectorXd d = fodesim::rhs_registry("linear_decay")(v);
  CHECK(d(0) == -1.0);
  const Eigen::VectorXd l =
      fodesim::rhs_registry("logistic")(Eigen::VectorXd::Constant(1, 0.5));
  CHECK(l(0) == doctest::Approx(0.25));
}
