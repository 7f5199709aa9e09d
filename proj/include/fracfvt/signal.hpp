#ifndef FRACFVT_SIGNAL_HPP
#define FRACFVT_SIGNAL_HPP

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>

namespace fracfvt {

// Uniform time grid t_k = t0 + k h, k = 0 .. n-1.
struct TimeGrid {
  double t0 = 0.0;
  double h = 0.0;
  Eigen::Index n = 0;

  TimeGrid() = default;
  TimeGrid(double t0_, double h_, Eigen::Index n_) : t0(t0_), h(h_), n(n_) {
    if (!(h > 0.0)) throw std::invalid_argument("TimeGrid: h must be > 0");
    if (n < 2) throw std::invalid_argument("TimeGrid: n must be >= 2");
    if (t0 < 0.0) throw std::invalid_argument("TimeGrid: t0 must be >= 0");
  }

  double time(Eigen::Index k) const { return t0 + static_cast<double>(k) * h; }
  double t_end() const { return time(n - 1); }

  Eigen::ArrayXd times() const {
    return t0 + h * Eigen::ArrayXd::LinSpaced(n, 0.0, static_cast<double>(n - 1));
  }
};

// Uniform-grid samples of a real vector-valued signal; values are n x d,
// row k holding the sample at t_k.
class SampledSignal {
 public:
  SampledSignal(TimeGrid grid, Eigen::MatrixXd values)
      : grid_(grid), values_(std::move(values)) {
    if (values_.rows() != grid_.n)
      throw std::invalid_argument("SampledSignal: row count != grid.n");
    if (values_.cols() < 1)
      throw std::invalid_argument("SampledSignal: dimension must be >= 1");
    if (!values_.allFinite())
      throw std::invalid_argument("SampledSignal: non-finite sample");
  }

  static SampledSignal from_function(const TimeGrid& grid,
                                     const std::function<double(double)>& f) {
    Eigen::MatrixXd v(grid.n, 1);
    for (Eigen::Index k = 0; k < grid.n; ++k) v(k, 0) = f(grid.time(k));
    return SampledSignal(grid, std::move(v));
  }

  static SampledSignal from_function(
      const TimeGrid& grid,
      const std::function<Eigen::VectorXd(double)>& f) {
    Eigen::VectorXd first = f(grid.time(0));
    Eigen::MatrixXd v(grid.n, first.size());
    v.row(0) = first.transpose();
    for (Eigen::Index k = 1; k < grid.n; ++k)
      v.row(k) = f(grid.time(k)).transpose();
    return SampledSignal(grid, std::move(v));
  }

  const TimeGrid& grid() const { return grid_; }
  Eigen::Index size() const { return grid_.n; }
  Eigen::Index dim() const { return values_.cols(); }
  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::MatrixXd& values() { return values_; }
  double scalar_at(Eigen::Index k) const { return values_(k, 0); }

  // Linear interpolation at time t inside the grid span.
  Eigen::VectorXd interpolate(double t) const {
    const double pos = (t - grid_.t0) / grid_.h;
    if (pos < -1e-9 || pos > static_cast<double>(grid_.n - 1) + 1e-9)
      throw std::out_of_range("SampledSignal::interpolate: t outside grid");
    const auto k = static_cast<Eigen::Index>(
        std::min(std::max(std::floor(pos), 0.0),
                 static_cast<double>(grid_.n - 2)));
    const double w = pos - static_cast<double>(k);
    return ((1.0 - w) * values_.row(k) + w * values_.row(k + 1)).transpose();
  }

 private:
  TimeGrid grid_;
  Eigen::MatrixXd values_;  // n x d
};

}  // namespace fracfvt

#endif
