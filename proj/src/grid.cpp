#include "tfde/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfde/errors.hpp"

namespace tfde {

Grid1D::Grid1D(double a, double b, std::size_t cells)
    : a_(a), b_(b), cells_(cells), h_((b - a) / static_cast<double>(cells)) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("grid needs finite endpoints with b > a");
  }
  if (cells < 4) {
    throw DomainError("grid needs M >= 4 cells, got " + std::to_string(cells));
  }
}

double Grid1D::x(std::size_t i) const noexcept {
  return i == cells_ ? b_ : a_ + static_cast<double>(i) * h_;
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> xs(cells_ + 1);
  for (std::size_t i = 0; i <= cells_; ++i) xs[i] = x(i);
  return xs;
}

Grid1D Grid1D::with_spacing(double a, double b, double h) {
  if (!(h > 0.0)) throw DomainError("grid spacing must be positive");
  const double cells = std::round((b - a) / h);
  if (cells < 4.0) throw DomainError("grid spacing too coarse for M >= 4");
  return Grid1D(a, b, static_cast<std::size_t>(cells));
}

TimeGrid::TimeGrid(double horizon, std::size_t steps)
    : horizon_(horizon), steps_(steps),
      tau_(horizon / static_cast<double>(steps)) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("time horizon must be positive");
  }
  if (steps < 1) throw DomainError("time grid needs N >= 1");
}

double TimeGrid::t(std::size_t n) const noexcept {
  return n == steps_ ? horizon_ : static_cast<double>(n) * tau_;
}

TimeGrid TimeGrid::with_max_step(double horizon, double target_tau) {
  if (!(target_tau > 0.0)) throw DomainError("time step must be positive");
  // Tolerate T / tau landing a hair above an integer through rounding.
  const double ratio = horizon / target_tau;
  const double steps = std::max(1.0, std::ceil(ratio * (1.0 - 1e-12)));
  return TimeGrid(horizon, static_cast<std::size_t>(steps));
}

TimeGrid TimeGrid::with_fixed_step(double horizon, double tau) {
  if (!(tau > 0.0)) throw DomainError("time step must be positive");
  if (!(tau <= horizon * (1.0 + 1e-12))) {
    throw DomainError("time step exceeds the horizon");
  }
  const double steps = std::floor(horizon / tau * (1.0 + 1e-12));
  const auto n = static_cast<std::size_t>(std::max(1.0, steps));
  return TimeGrid(static_cast<double>(n) * tau, n);
}

}  // namespace tfde
