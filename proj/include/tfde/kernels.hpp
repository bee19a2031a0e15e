#pragma once

#include <span>

#include <Eigen/Dense>

namespace tfde::kernels {

// Data-parallel inner loops of the schemes. Every kernel exists twice: a
// plain serial loop kept as the reference, and an OpenMP version used by the
// library. Tests assert both agree; bench/ times them against each other.

enum class Execution { kSerial, kParallel };

/// out[i-1] = sum_{k=0}^{i+1} w[k] v[i-k+1] for interior nodes i = 1..M-1.
/// v holds all M + 1 nodal values, w at least M + 1 weights.
void weighted_sum(std::span<const double> w, std::span<const double> v,
                  std::span<double> out, Execution exec = Execution::kParallel);

/// Dense (M-1)x(M-1) lower-Hessenberg Toeplitz matrix with entries
/// scale * w[i - j + 1] for j <= i + 1 and zero above the first superdiagonal.
void fill_hessenberg_toeplitz(std::span<const double> w, double scale,
                              Eigen::MatrixXd& out,
                              Execution exec = Execution::kParallel);

/// Overwrites every column of rhs with the solution of lu * x = column.
void solve_columns(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                   Eigen::MatrixXd& rhs, Execution exec = Execution::kParallel);

/// Overwrites every row r of rhs with the solution of x * op^T = r, i.e.
/// op * x^T = r^T, using lu = factorization of op.
void solve_rows_transposed(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                           Eigen::MatrixXd& rhs,
                           Execution exec = Execution::kParallel);

/// Number of threads the parallel kernels will use.
int max_threads();

}  // namespace tfde::kernels
