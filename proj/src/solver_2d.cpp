#include "tfde/solver_2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tfde/discrete_operators.hpp"
#include "tfde/errors.hpp"
#include "tfde/stepping.hpp"

namespace tfde {

namespace {

Eigen::MatrixXd sample_interior(const Grid1D& gx, const Grid1D& gy,
                                const std::function<double(double, double)>& f) {
  const auto nx = static_cast<Eigen::Index>(gx.interior());
  const auto ny = static_cast<Eigen::Index>(gy.interior());
  Eigen::MatrixXd m(nx, ny);
  for (Eigen::Index k = 0; k < ny; ++k) {
    const double y = gy.x(static_cast<std::size_t>(k) + 1);
    for (Eigen::Index i = 0; i < nx; ++i) {
      m(i, k) = f(gx.x(static_cast<std::size_t>(i) + 1), y);
    }
  }
  return m;
}

Eigen::MatrixXd sample_nodes(const Grid1D& gx, const Grid1D& gy,
                             const std::function<double(double, double)>& f) {
  const auto nx = static_cast<Eigen::Index>(gx.cells()) + 1;
  const auto ny = static_cast<Eigen::Index>(gy.cells()) + 1;
  Eigen::MatrixXd m(nx, ny);
  for (Eigen::Index k = 0; k < ny; ++k) {
    const double y = gy.x(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < nx; ++i) {
      m(i, k) = f(gx.x(static_cast<std::size_t>(i)), y);
    }
  }
  return m;
}

/// Left compact operator from all M + 1 nodes to the M - 1 interior nodes.
Eigen::MatrixXd compact_with_boundary(const Grid1D& g, double lambda) {
  const auto n = static_cast<Eigen::Index>(g.interior());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n + 2);
  const double lh = lambda * g.h();
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = std::exp(-lh) / 6.0;
    m(i, i + 1) = 2.0 / 3.0;
    m(i, i + 2) = std::exp(lh) / 6.0;
  }
  return m;
}

}  // namespace

Solution2D solve_adi(const ProblemSpec2D& spec) {
  const auto& gx = spec.grid_x;
  const auto& gy = spec.grid_y;
  const double tau = spec.time.tau();
  Solution2D out{gx, gy, spec.time, {}, {}};

  for (const auto& [lh, axis] : {std::pair{spec.params_x.lambda() * gx.h(), 'x'},
                                 std::pair{spec.params_y.lambda() * gy.h(), 'y'}}) {
    if (lh > 1.0) {
      std::ostringstream os;
      os << "lambda*h = " << lh << " > 1 in " << axis
         << ": outside the proven stability regime";
      out.warnings.push_back(os.str());
    }
  }

  const auto bx = assemble_B(Side::kLeft, gx, spec.params_x.lambda());
  const auto by = assemble_B(Side::kLeft, gy, spec.params_y.lambda());
  const auto px = assemble_P(Side::kLeft, spec.params_x, gx, tau,
                             StepScaling::kExcludeTau);
  const auto py = assemble_P(Side::kLeft, spec.params_y, gy, tau,
                             StepScaling::kExcludeTau);

  const Eigen::MatrixXd bx_dense = bx.dense();
  const Eigen::MatrixXd by_dense = by.dense();
  const auto lu_x = factor_system(bx_dense - 0.5 * tau * px.matrix,
                                  "x-direction operator", out.warnings);
  const auto lu_y = factor_system(by_dense - 0.5 * tau * py.matrix,
                                  "y-direction operator", out.warnings);
  const Eigen::MatrixXd explicit_x = bx_dense + 0.5 * tau * px.matrix;
  const Eigen::MatrixXd explicit_y_t =
      (by_dense + 0.5 * tau * py.matrix).transpose();

  // B^a F (B^b)^T over the full nodal source, boundary rows included.
  const Eigen::MatrixXd cx = compact_with_boundary(gx, spec.params_x.lambda());
  const Eigen::MatrixXd cy_t =
      compact_with_boundary(gy, spec.params_y.lambda()).transpose();
  Eigen::MatrixXd profile;
  if (spec.source.is_separable()) {
    profile = cx *
              sample_nodes(gx, gy, [&](double x, double y) {
                return spec.source.spatial(x, y);
              }) *
              cy_t;
  }
  auto source_at = [&](double t) -> Eigen::MatrixXd {
    if (spec.source.is_separable()) return spec.source.temporal(t) * profile;
    return cx *
           sample_nodes(gx, gy, [&](double x, double y) {
             return spec.source(x, y, t);
           }) *
           cy_t;
  };

  Eigen::MatrixXd u = sample_interior(gx, gy, spec.initial);
  double scale = u.size() ? u.cwiseAbs().maxCoeff() : 0.0;
  if (!spec.source.is_zero() && u.size()) {
    scale = std::max(scale, spec.time.horizon() *
                                source_at(spec.time.t(0)).cwiseAbs().maxCoeff());
  }
  const GrowthGuard guard(scale);
  for (std::size_t n = 0; n < spec.time.steps(); ++n) {
    Eigen::MatrixXd rhs = explicit_x * u * explicit_y_t;
    if (!spec.source.is_zero()) {
      const double t_mid = 0.5 * (spec.time.t(n) + spec.time.t(n + 1));
      rhs.noalias() += tau * source_at(t_mid);
    }
    // (B^a - tau/2 P^a) U* = rhs, one column per y line
    kernels::solve_columns(lu_x, rhs, spec.execution);
    // U^{n+1} (B^b - tau/2 P^b)^T = U*, one row per x line
    kernels::solve_rows_transposed(lu_y, rhs, spec.execution);
    u = std::move(rhs);
    guard.check(u, n + 1);
  }
  out.interior = std::move(u);
  return out;
}

}  // namespace tfde
