#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tfde/grid.hpp"
#include "tfde/tempered_calculus.hpp"

namespace tfde {

/// Tridiagonal compact matrix B of dimension M - 1. The left variant has
/// sub = e^{-lambda h}/6, diag = 2/3, super = e^{lambda h}/6; the right
/// variant is its transpose.
struct CompactMatrixB {
  Side side;
  std::size_t dim;
  double sub;
  double diag;
  double super;

  Eigen::MatrixXd dense() const;
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  /// Same operation applied to each column of m.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& m) const;
};

/// Whether the assembled P carries the time step. The implicit Euler schemes
/// fold tau into P; the splitting and ADI schemes multiply by tau themselves.
enum class StepScaling { kIncludeTau, kExcludeTau };

/// Dense P = s (A - alpha lambda^{alpha-1} C + lambda^alpha (alpha-1) B) with
/// s = K tau (or K), A the Hessenberg weight Toeplitz over h^alpha and C the
/// tempered centered-advection matrix over 2h.
struct SystemMatrixP {
  Side side;
  double scale;
  /// lambda h > 1: outside the regime where the schemes are proven stable.
  bool stability_warning;
  Eigen::MatrixXd matrix;
};

/// Boundary traces and boundary source values entering H^{n+1}.
struct BoundaryData {
  double left_prev = 0.0;    ///< U_0^n
  double left_next = 0.0;    ///< U_0^{n+1}
  double right_prev = 0.0;   ///< U_M^n
  double right_next = 0.0;   ///< U_M^{n+1}
  double source_left = 0.0;  ///< f_0^{n+1}
  double source_right = 0.0; ///< f_M^{n+1}
};

using WeightTablePtr = std::shared_ptr<const WeightTable>;

/// Weight table w_0..w_n, computed once per (alpha, lambda, h, n) and shared.
WeightTablePtr cached_weights(const TemperedParams& params, double h,
                              std::size_t n);

CompactMatrixB assemble_B(Side side, const Grid1D& grid, double lambda);

SystemMatrixP assemble_P(Side side, const TemperedParams& params,
                         const Grid1D& grid, double tau,
                         StepScaling scaling = StepScaling::kIncludeTau);

/// Boundary contribution H^{n+1} (length M - 1). The weight table must
/// reach index M.
Eigen::VectorXd assemble_H(Side side, const TemperedParams& params,
                           const Grid1D& grid, double tau,
                           const BoundaryData& boundary,
                           const WeightTable& weights);

/// Compact operator applied at interior nodes; v holds nodes 0..M (the two
/// end values act as ghosts). Returns M - 1 values.
std::vector<double> apply_compact(Side side, double lambda, double h,
                                  std::span<const double> v);

/// Third-order quasi-compact approximation of the normalized tempered
/// derivative at interior nodes; v holds nodes 0..M. Returns M - 1 values.
std::vector<double> apply_quasi_compact_derivative(
    Side side, const TemperedParams& params, const Grid1D& grid,
    std::span<const double> v);

}  // namespace tfde
