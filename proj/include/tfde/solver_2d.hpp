#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tfde/grid.hpp"
#include "tfde/kernels.hpp"
#include "tfde/problem.hpp"
#include "tfde/tempered_calculus.hpp"

namespace tfde {

/// u_t = K_x D_x^{alpha,lambda_1} u + K_y D_y^{beta,lambda_2} u + f on a
/// rectangle, left tempered derivatives in both directions, homogeneous
/// Dirichlet boundary. Diffusivities come from params_x / params_y.
struct ProblemSpec2D {
  Grid1D grid_x;
  Grid1D grid_y;
  TimeGrid time;
  TemperedParams params_x;
  TemperedParams params_y;
  std::function<double(double, double)> initial;
  Source2D source;
  kernels::Execution execution = kernels::Execution::kParallel;
};

struct Solution2D {
  Grid1D grid_x;
  Grid1D grid_y;
  TimeGrid time;
  /// U^N on interior nodes, (M_x - 1) x (M_y - 1); entry (i, k) sits at
  /// (x_{i+1}, y_{k+1}).
  Eigen::MatrixXd interior;
  std::vector<std::string> warnings;
};

/// Quasi-compact D'yakonov ADI:
///   (B^a - tau/2 P^a) U* = (B^a + tau/2 P^a) U^n (B^b + tau/2 P^b)^T
///                          + tau B^a F^{n+1/2} (B^b)^T
///   U^{n+1} (B^b - tau/2 P^b)^T = U*
/// with P assembled without tau and F sampled at the temporal midpoint.
Solution2D solve_adi(const ProblemSpec2D& spec);

}  // namespace tfde
