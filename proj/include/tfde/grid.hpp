#pragma once

#include <cstddef>
#include <vector>

namespace tfde {

/// Uniform grid x_i = a + i h, i = 0..M, with h = (b - a) / M.
class Grid1D {
 public:
  Grid1D(double a, double b, std::size_t cells);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t cells() const noexcept { return cells_; }
  /// Number of interior unknowns, M - 1.
  std::size_t interior() const noexcept { return cells_ - 1; }
  double h() const noexcept { return h_; }
  double x(std::size_t i) const noexcept;

  /// All M + 1 node coordinates.
  std::vector<double> nodes() const;

  /// Grid with spacing as close as possible to h on [a, b]; M = round((b-a)/h).
  static Grid1D with_spacing(double a, double b, double h);

 private:
  double a_;
  double b_;
  std::size_t cells_;
  double h_;
};

/// t_n = n tau, n = 0..N, tau = T / N.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t steps);

  double horizon() const noexcept { return horizon_; }
  std::size_t steps() const noexcept { return steps_; }
  double tau() const noexcept { return tau_; }
  double t(std::size_t n) const noexcept;

  /// Smallest N with T / N <= target_tau.
  static TimeGrid with_max_step(double horizon, double target_tau);
  /// Exactly tau per step, N = floor(T / tau) steps, ending at N tau <= T.
  static TimeGrid with_fixed_step(double horizon, double tau);

 private:
  double horizon_;
  std::size_t steps_;
  double tau_;
};

}  // namespace tfde
