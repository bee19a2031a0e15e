#include "tfde/kernels.hpp"

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tfde/errors.hpp"

namespace tfde::kernels {

namespace {

using Index = std::ptrdiff_t;

inline double weighted_sum_at(std::span<const double> w,
                              std::span<const double> v, Index i) {
  double acc = 0.0;
  for (Index k = 0; k <= i + 1; ++k) acc += w[k] * v[i - k + 1];
  return acc;
}

void check_weighted_sum_sizes(std::span<const double> w,
                              std::span<const double> v,
                              std::span<const double> out) {
  if (v.size() < 5 || out.size() + 2 != v.size()) {
    throw DomainError("weighted_sum: need M + 1 nodal values and M - 1 outputs");
  }
  if (w.size() < v.size()) {
    throw DomainError("weighted_sum: weight table shorter than M + 1");
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void weighted_sum(std::span<const double> w, std::span<const double> v,
                  std::span<double> out, Execution exec) {
  check_weighted_sum_sizes(w, v, out);
  const auto interior = static_cast<Index>(out.size());
  if (exec == Execution::kSerial) {
    for (Index i = 1; i <= interior; ++i) out[i - 1] = weighted_sum_at(w, v, i);
    return;
  }
  // Row i costs O(i); dynamic scheduling evens out the triangle.
#pragma omp parallel for schedule(dynamic, 16)
  for (Index i = 1; i <= interior; ++i) out[i - 1] = weighted_sum_at(w, v, i);
}

void fill_hessenberg_toeplitz(std::span<const double> w, double scale,
                              Eigen::MatrixXd& out, Execution exec) {
  const Index n = out.rows();
  if (out.cols() != n) throw DomainError("fill_hessenberg_toeplitz: not square");
  if (static_cast<Index>(w.size()) < n + 1) {
    throw DomainError("fill_hessenberg_toeplitz: weight table too short");
  }
  // Column-major storage: parallelize over columns.
  auto fill_column = [&](Index j) {
    for (Index i = 0; i < n; ++i) {
      const Index k = i - j + 1;
      out(i, j) = k >= 0 ? scale * w[k] : 0.0;
    }
  };
  if (exec == Execution::kSerial) {
    for (Index j = 0; j < n; ++j) fill_column(j);
    return;
  }
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j) fill_column(j);
}

void solve_columns(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                   Eigen::MatrixXd& rhs, Execution exec) {
  const Index cols = rhs.cols();
  if (exec == Execution::kSerial) {
    for (Index c = 0; c < cols; ++c) rhs.col(c) = lu.solve(rhs.col(c));
    return;
  }
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < cols; ++c) {
    Eigen::VectorXd col = rhs.col(c);
    rhs.col(c) = lu.solve(col);
  }
}

void solve_rows_transposed(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu,
                           Eigen::MatrixXd& rhs, Execution exec) {
  const Index rows = rhs.rows();
  if (exec == Execution::kSerial) {
    for (Index r = 0; r < rows; ++r) {
      Eigen::VectorXd row = rhs.row(r).transpose();
      rhs.row(r) = lu.solve(row).transpose();
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (Index r = 0; r < rows; ++r) {
    Eigen::VectorXd row = rhs.row(r).transpose();
    rhs.row(r) = lu.solve(row).transpose();
  }
}

}  // namespace tfde::kernels
