#include "tfde/discrete_operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "tfde/errors.hpp"
#include "tfde/kernels.hpp"

namespace tfde {

namespace {

/// Scalar factors shared by P, H and the pointwise operator.
struct OperatorFactors {
  double inv_h_alpha;  // 1 / h^alpha
  double advection;    // alpha lambda^{alpha-1} / (2h)
  double reaction;     // lambda^alpha (alpha - 1)
  double e_plus;       // e^{lambda h}
  double e_minus;      // e^{-lambda h}
};

OperatorFactors factors(const TemperedParams& p, double h) {
  const double alpha = p.alpha();
  const double lambda = p.lambda();
  const double lam_a1 = lambda == 0.0 ? 0.0 : std::pow(lambda, alpha - 1.0);
  const double lam_a = lambda == 0.0 ? 0.0 : std::pow(lambda, alpha);
  return {1.0 / std::pow(h, alpha), alpha * lam_a1 / (2.0 * h),
          lam_a * (alpha - 1.0), std::exp(lambda * h), std::exp(-lambda * h)};
}

void require_production(const TemperedParams& p) {
  if (!p.production() || !(p.alpha() > 1.0 && p.alpha() < 2.0)) {
    throw DomainError("operator assembly needs 1 < alpha < 2");
  }
}

}  // namespace

Eigen::MatrixXd CompactMatrixB::dense() const {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diag;
    if (i > 0) m(i, i - 1) = sub;
    if (i + 1 < n) m(i, i + 1) = super;
  }
  return m;
}

Eigen::VectorXd CompactMatrixB::apply(const Eigen::VectorXd& v) const {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double acc = diag * v(i);
    if (i > 0) acc += sub * v(i - 1);
    if (i + 1 < n) acc += super * v(i + 1);
    out(i) = acc;
  }
  return out;
}

Eigen::MatrixXd CompactMatrixB::apply(const Eigen::MatrixXd& m) const {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd out = diag * m;
  out.bottomRows(n - 1) += sub * m.topRows(n - 1);
  out.topRows(n - 1) += super * m.bottomRows(n - 1);
  return out;
}

WeightTablePtr cached_weights(const TemperedParams& params, double h,
                              std::size_t n) {
  using Key = std::tuple<double, double, double, std::size_t>;
  static std::mutex mutex;
  static std::map<Key, WeightTablePtr> cache;

  const Key key{params.alpha(), params.lambda(), h, n};
  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto table = std::make_shared<const WeightTable>(
      tempered_weights(params, h, static_cast<std::ptrdiff_t>(n)));
  cache.emplace(key, table);
  return table;
}

CompactMatrixB assemble_B(Side side, const Grid1D& grid, double lambda) {
  const double lh = lambda * grid.h();
  const double lower = std::exp(-lh) / 6.0;
  const double upper = std::exp(lh) / 6.0;
  if (side == Side::kLeft) return {side, grid.interior(), lower, 2.0 / 3.0, upper};
  return {side, grid.interior(), upper, 2.0 / 3.0, lower};
}

SystemMatrixP assemble_P(Side side, const TemperedParams& params,
                         const Grid1D& grid, double tau, StepScaling scaling) {
  require_production(params);
  if (scaling == StepScaling::kIncludeTau && !(tau > 0.0)) {
    throw DomainError("assemble_P needs tau > 0");
  }
  const double h = grid.h();
  const auto n = static_cast<Eigen::Index>(grid.interior());
  const auto f = factors(params, h);
  const double scale = params.diffusivity() *
                       (scaling == StepScaling::kIncludeTau ? tau : 1.0);

  const auto weights = cached_weights(params, h, grid.cells());
  Eigen::MatrixXd p(n, n);
  kernels::fill_hessenberg_toeplitz(weights->values, f.inv_h_alpha, p);

  const auto b = assemble_B(Side::kLeft, grid, params.lambda());
  for (Eigen::Index i = 0; i < n; ++i) {
    p(i, i) += f.reaction * b.diag;
    if (i + 1 < n) p(i, i + 1) += -f.advection * f.e_plus + f.reaction * b.super;
    if (i > 0) p(i, i - 1) += f.advection * f.e_minus + f.reaction * b.sub;
  }
  p *= scale;
  if (side == Side::kRight) p.transposeInPlace();

  const bool warn = params.lambda() * h > 1.0;
  return {side, scale, warn, std::move(p)};
}

Eigen::VectorXd assemble_H(Side side, const TemperedParams& params,
                           const Grid1D& grid, double tau,
                           const BoundaryData& boundary,
                           const WeightTable& weights) {
  const std::size_t m = grid.cells();
  if (weights.size() < m + 1) {
    throw DomainError("assemble_H needs weights w_0..w_M");
  }
  if (side == Side::kRight) {
    // Mirror x -> a + b - x: the right problem's far boundary becomes the
    // left one, then the result is flipped back.
    BoundaryData mirrored{boundary.right_prev, boundary.right_next,
                          boundary.left_prev,  boundary.left_next,
                          boundary.source_right, boundary.source_left};
    Eigen::VectorXd left =
        assemble_H(Side::kLeft, params, grid, tau, mirrored, weights);
    return left.reverse();
  }

  const auto n = static_cast<Eigen::Index>(grid.interior());
  const auto f = factors(params, grid.h());
  const double ktau = params.diffusivity() * tau;
  Eigen::VectorXd hv = Eigen::VectorXd::Zero(n);

  const double u0 = boundary.left_next;
  const double um = boundary.right_next;
  for (Eigen::Index i = 0; i < n; ++i) {
    hv(i) += ktau * f.inv_h_alpha * weights[static_cast<std::size_t>(i) + 2] * u0;
  }
  hv(0) += f.e_minus / 6.0 *
               (boundary.left_prev - u0 + tau * boundary.source_left) +
           ktau * (f.advection * f.e_minus + f.reaction * f.e_minus / 6.0) * u0;
  hv(n - 1) +=
      f.e_plus / 6.0 * (boundary.right_prev - um + tau * boundary.source_right) +
      ktau *
          (f.inv_h_alpha * weights[0] - f.advection * f.e_plus +
           f.reaction * f.e_plus / 6.0) *
          um;
  return hv;
}

std::vector<double> apply_compact(Side side, double lambda, double h,
                                  std::span<const double> v) {
  if (v.size() < 3) throw DomainError("apply_compact needs ghost values");
  double lower = std::exp(-lambda * h) / 6.0;
  double upper = std::exp(lambda * h) / 6.0;
  if (side == Side::kRight) std::swap(lower, upper);
  std::vector<double> out(v.size() - 2);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    out[i - 1] = lower * v[i - 1] + 2.0 / 3.0 * v[i] + upper * v[i + 1];
  }
  return out;
}

std::vector<double> apply_quasi_compact_derivative(
    Side side, const TemperedParams& params, const Grid1D& grid,
    std::span<const double> v) {
  require_production(params);
  if (v.size() != grid.cells() + 1) {
    throw DomainError("apply_quasi_compact_derivative needs M + 1 values");
  }
  if (side == Side::kRight) {
    // The right operator is the left one on the mirrored grid function.
    std::vector<double> mirrored(v.rbegin(), v.rend());
    auto out =
        apply_quasi_compact_derivative(Side::kLeft, params, grid, mirrored);
    std::reverse(out.begin(), out.end());
    return out;
  }

  const auto f = factors(params, grid.h());
  const auto weights = cached_weights(params, grid.h(), grid.cells());
  std::vector<double> out(grid.interior());
  kernels::weighted_sum(weights->values, v, out);
  const auto compact = apply_compact(Side::kLeft, params.lambda(), grid.h(), v);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    out[i - 1] = f.inv_h_alpha * out[i - 1] -
                 f.advection * (f.e_plus * v[i + 1] - f.e_minus * v[i - 1]) +
                 f.reaction * compact[i - 1];
  }
  return out;
}

}  // namespace tfde
