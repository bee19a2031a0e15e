#include "tfde/solver_1d.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "tfde/discrete_operators.hpp"
#include "tfde/errors.hpp"
#include "tfde/stepping.hpp"

namespace tfde {

namespace {

constexpr double kCornerTolerance = 1e-10;
constexpr double kZeroTraceTolerance = 1e-14;

/// Interior samples of f(., t).
class SourceSampler {
 public:
  SourceSampler(const Source1D& source, const Grid1D& grid)
      : source_(source), grid_(grid) {
    if (source.is_separable()) {
      profile_.resize(static_cast<Eigen::Index>(grid.cells()) + 1);
      for (std::size_t i = 0; i <= grid.cells(); ++i) {
        profile_(static_cast<Eigen::Index>(i)) = source.spatial(grid.x(i));
      }
    }
  }

  bool zero() const { return source_.is_zero(); }

  Eigen::VectorXd interior(double t) const {
    const auto n = static_cast<Eigen::Index>(grid_.interior());
    if (source_.is_zero()) return Eigen::VectorXd::Zero(n);
    if (source_.is_separable()) return source_.temporal(t) * profile_.segment(1, n);
    Eigen::VectorXd f(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f(i) = source_(grid_.x(static_cast<std::size_t>(i) + 1), t);
    }
    return f;
  }

  /// Compact operator applied to f(., t) with the boundary nodes included.
  Eigen::VectorXd filtered(Side side, double lambda, double t) const {
    std::vector<double> f(grid_.cells() + 1);
    for (std::size_t i = 0; i <= grid_.cells(); ++i) f[i] = node(i, t);
    const auto g = apply_compact(side, lambda, grid_.h(), f);
    return Eigen::Map<const Eigen::VectorXd>(g.data(),
                                             static_cast<Eigen::Index>(g.size()));
  }

  double node(std::size_t i, double t) const {
    if (source_.is_zero()) return 0.0;
    if (source_.is_separable()) {
      return source_.temporal(t) * profile_(static_cast<Eigen::Index>(i));
    }
    return source_(grid_.x(i), t);
  }

 private:
  const Source1D& source_;
  const Grid1D& grid_;
  Eigen::VectorXd profile_;
};

std::vector<std::string> preflight(const ProblemSpec1D& spec) {
  std::vector<std::string> warnings;
  const auto& g = spec.grid;
  const double lh = spec.params.lambda() * g.h();
  if (lh > 1.0) {
    std::ostringstream os;
    os << "lambda*h = " << lh << " > 1: outside the proven stability regime";
    warnings.push_back(os.str());
  }
  const double left_gap = std::abs(spec.initial(g.a()) - spec.boundary_left(0.0));
  const double right_gap =
      std::abs(spec.initial(g.b()) - spec.boundary_right(0.0));
  if (left_gap > kCornerTolerance || right_gap > kCornerTolerance) {
    std::ostringstream os;
    os << "initial data and boundary traces disagree at the corners (gaps "
       << left_gap << ", " << right_gap << ")";
    warnings.push_back(os.str());
  }
  return warnings;
}

void require_zero_trace(double value, const char* which, double t) {
  if (std::abs(value) > kZeroTraceTolerance) {
    std::ostringstream os;
    os << which << " boundary trace must vanish, got " << value << " at t = "
       << t;
    throw DomainError(os.str());
  }
}

Eigen::VectorXd interior_initial(const ProblemSpec1D& spec) {
  const auto n = static_cast<Eigen::Index>(spec.grid.interior());
  Eigen::VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    u(i) = spec.initial(spec.grid.x(static_cast<std::size_t>(i) + 1));
  }
  return u;
}

double data_scale(const ProblemSpec1D& spec, const Eigen::VectorXd& u0,
                  const SourceSampler& source) {
  const double t0 = spec.time.t(0);
  const double t_end = spec.time.horizon();
  double scale = u0.size() ? u0.cwiseAbs().maxCoeff() : 0.0;
  for (double t : {t0, t_end}) {
    scale = std::max({scale, std::abs(spec.boundary_left(t)),
                      std::abs(spec.boundary_right(t))});
  }
  if (!source.zero() && spec.grid.interior() > 0) {
    scale = std::max(scale,
                     (t_end - t0) * source.interior(t0).cwiseAbs().maxCoeff());
  }
  return scale;
}

std::vector<double> nodal(const Eigen::VectorXd& interior, double left,
                          double right) {
  std::vector<double> v(static_cast<std::size_t>(interior.size()) + 2);
  v.front() = left;
  v.back() = right;
  for (Eigen::Index i = 0; i < interior.size(); ++i) {
    v[static_cast<std::size_t>(i) + 1] = interior(i);
  }
  return v;
}

Solution1D implicit_euler(const ProblemSpec1D& spec, Side side) {
  const auto& grid = spec.grid;
  const auto& time = spec.time;
  const double tau = time.tau();
  Solution1D out{grid, time, {}, {}, preflight(spec)};

  const auto b = assemble_B(side, grid, spec.params.lambda());
  const auto p = assemble_P(side, spec.params, grid, tau);
  const auto lu = factor_system(b.dense() - p.matrix, "system matrix B - P",
                                out.warnings);
  const auto weights = cached_weights(spec.params, grid.h(), grid.cells());
  const SourceSampler source(spec.source, grid);

  auto trace = [&](double t) {
    const double left = spec.boundary_left(t);
    const double right = spec.boundary_right(t);
    if (side == Side::kLeft) require_zero_trace(left, "left", t);
    if (side == Side::kRight) require_zero_trace(right, "right", t);
    return std::pair{left, right};
  };

  Eigen::VectorXd u = interior_initial(spec);
  const GrowthGuard guard(data_scale(spec, u, source));
  auto [left, right] = trace(time.t(0));
  if (spec.keep_history) out.history.push_back(nodal(u, left, right));

  for (std::size_t n = 0; n < time.steps(); ++n) {
    const double t_next = time.t(n + 1);
    const auto [left_next, right_next] = trace(t_next);
    const BoundaryData bd{left,
                          left_next,
                          right,
                          right_next,
                          source.node(0, t_next),
                          source.node(grid.cells(), t_next)};
    Eigen::VectorXd rhs = b.apply(u) +
                          assemble_H(side, spec.params, grid, tau, bd, *weights);
    if (!source.zero()) rhs += tau * b.apply(source.interior(t_next));
    u = lu.solve(rhs);
    guard.check(u, n + 1);
    left = left_next;
    right = right_next;
    if (spec.keep_history) out.history.push_back(nodal(u, left, right));
  }
  out.final_values = nodal(u, left, right);
  return out;
}

}  // namespace

Solution1D solve_left(const ProblemSpec1D& spec) {
  if (spec.side != ProblemSide::kLeft) {
    throw DomainError("solve_left needs a left-sided problem");
  }
  return implicit_euler(spec, Side::kLeft);
}

Solution1D solve_right(const ProblemSpec1D& spec) {
  if (spec.side != ProblemSide::kRight) {
    throw DomainError("solve_right needs a right-sided problem");
  }
  return implicit_euler(spec, Side::kRight);
}

Solution1D solve_two_sided(const ProblemSpec1D& spec) {
  if (spec.side != ProblemSide::kTwoSided) {
    throw DomainError("solve_two_sided needs a two-sided problem");
  }
  const auto& grid = spec.grid;
  const auto& time = spec.time;
  const double tau = time.tau();
  Solution1D out{grid, time, {}, {}, preflight(spec)};

  const double lambda = spec.params.lambda();
  const auto bl = assemble_B(Side::kLeft, grid, lambda);
  const auto br = assemble_B(Side::kRight, grid, lambda);
  const auto pl =
      assemble_P(Side::kLeft, spec.params, grid, tau, StepScaling::kExcludeTau);
  const auto pr =
      assemble_P(Side::kRight, spec.params, grid, tau, StepScaling::kExcludeTau);

  const Eigen::MatrixXd bl_dense = bl.dense();
  const Eigen::MatrixXd explicit_left = bl_dense + tau * pl.matrix;
  const auto lu_left = factor_system(bl_dense, "compact matrix B_l", out.warnings);
  const auto lu_right = factor_system(br.dense() - tau * pr.matrix,
                                      "system matrix B_r - tau P_r", out.warnings);
  const SourceSampler source(spec.source, grid);

  for (std::size_t n = 0; n <= time.steps(); ++n) {
    const double t = time.t(n);
    require_zero_trace(spec.boundary_left(t), "left", t);
    require_zero_trace(spec.boundary_right(t), "right", t);
  }

  Eigen::VectorXd u = interior_initial(spec);
  const GrowthGuard guard(data_scale(spec, u, source));
  if (spec.keep_history) out.history.push_back(nodal(u, 0.0, 0.0));
  for (std::size_t n = 0; n < time.steps(); ++n) {
    const double t_mid = 0.5 * (time.t(n) + time.t(n + 1));
    Eigen::VectorXd rhs = explicit_left * u;
    if (!source.zero()) {
      rhs += 0.5 * tau * source.filtered(Side::kLeft, lambda, t_mid);
    }
    const Eigen::VectorXd star = lu_left.solve(rhs);
    rhs = br.apply(star);
    if (!source.zero()) {
      rhs += 0.5 * tau * source.filtered(Side::kRight, lambda, t_mid);
    }
    u = lu_right.solve(rhs);
    guard.check(u, n + 1);
    if (spec.keep_history) out.history.push_back(nodal(u, 0.0, 0.0));
  }
  out.final_values = nodal(u, 0.0, 0.0);
  return out;
}

Solution1D solve(const ProblemSpec1D& spec) {
  switch (spec.side) {
    case ProblemSide::kLeft:
      return solve_left(spec);
    case ProblemSide::kRight:
      return solve_right(spec);
    case ProblemSide::kTwoSided:
      return solve_two_sided(spec);
  }
  throw DomainError("unknown problem side");
}

double discrete_energy(const Grid1D& grid, double lambda,
                       const std::vector<double>& nodal_values, Side side) {
  if (nodal_values.size() != grid.cells() + 1) {
    throw DomainError("discrete_energy needs M + 1 nodal values");
  }
  const auto n = static_cast<Eigen::Index>(grid.interior());
  const Eigen::Map<const Eigen::VectorXd> u(nodal_values.data() + 1, n);
  const auto b = assemble_B(side, grid, lambda);
  return grid.h() * u.dot(b.apply(Eigen::VectorXd(u)));
}

}  // namespace tfde
