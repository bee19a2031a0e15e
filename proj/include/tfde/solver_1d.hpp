#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tfde/grid.hpp"
#include "tfde/problem.hpp"
#include "tfde/tempered_calculus.hpp"

namespace tfde {

enum class ProblemSide { kLeft, kRight, kTwoSided };

/// u_t = K D u + f on (a, b) x (0, T] with Dirichlet data. D is the left,
/// right, or left-plus-right normalized tempered derivative.
struct ProblemSpec1D {
  Grid1D grid;
  TimeGrid time;
  TemperedParams params;
  ProblemSide side;
  std::function<double(double)> initial;
  std::function<double(double)> boundary_left;   ///< u(a, t)
  std::function<double(double)> boundary_right;  ///< u(b, t)
  Source1D source;
  bool keep_history = false;
};

struct Solution1D {
  Grid1D grid;
  TimeGrid time;
  /// U^N at nodes 0..M, boundary nodes included.
  std::vector<double> final_values;
  /// U^0..U^N when requested, each of length M + 1.
  std::vector<std::vector<double>> history;
  std::vector<std::string> warnings;
};

/// Implicit Euler: (B_l - P_l) U^{n+1} = B_l U^n + tau B_l F^{n+1} + H_l^{n+1}.
/// Requires u(a, t) = 0.
Solution1D solve_left(const ProblemSpec1D& spec);

/// Same stepping with B_r = B_l^T, P_r = P_l^T and the mirrored H.
/// Requires u(b, t) = 0.
Solution1D solve_right(const ProblemSpec1D& spec);

/// Operator splitting for the two-sided problem with homogeneous boundaries:
///   B_l U* = (B_l + tau P_l) U^n + tau/2 B_l f^{n+1/2}
///   (B_r - tau P_r) U^{n+1} = B_r U* + tau/2 B_r f^{n+1/2}
/// with f^{n+1/2} sampled at the temporal midpoint.
Solution1D solve_two_sided(const ProblemSpec1D& spec);

/// Dispatch on spec.side.
Solution1D solve(const ProblemSpec1D& spec);

/// E = h U^T B U over the interior nodes, B the compact matrix of `side`.
double discrete_energy(const Grid1D& grid, double lambda,
                       const std::vector<double>& nodal_values,
                       Side side = Side::kLeft);

}  // namespace tfde
