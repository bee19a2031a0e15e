#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tfde/kernels.hpp"
#include "tfde/solver_2d.hpp"
#include "tfde/tempered_calculus.hpp"
#include "tfde/verification.hpp"

namespace {

using tfde::kernels::Execution;

double best_of_ms(int reps, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void report(const char* name, std::size_t size, double serial, double parallel) {
  std::printf("%-26s %7zu %12.3f %12.3f %8.2fx\n", name, size, serial, parallel,
              parallel > 0.0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", tfde::kernels::max_threads());
  std::printf("%-26s %7s %12s %12s %9s\n", "kernel", "M", "serial ms",
              "parallel ms", "speedup");

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const tfde::TemperedParams params(1.5, 1.0);

  for (std::size_t cells : {1000u, 4000u, 16000u}) {
    const double h = 1.0 / static_cast<double>(cells);
    const auto table = tfde::tempered_weights(params, h,
                                              static_cast<std::ptrdiff_t>(cells));
    std::vector<double> v(cells + 1);
    for (auto& x : v) x = unit(rng);
    std::vector<double> out(cells - 1);
    const double s = best_of_ms(5, [&] {
      tfde::kernels::weighted_sum(table.values, v, out, Execution::kSerial);
    });
    const double p = best_of_ms(5, [&] {
      tfde::kernels::weighted_sum(table.values, v, out, Execution::kParallel);
    });
    report("weighted_sum", cells, s, p);
  }

  for (std::size_t cells : {200u, 800u, 1600u}) {
    const double h = 1.0 / static_cast<double>(cells);
    const auto table = tfde::tempered_weights(params, h,
                                              static_cast<std::ptrdiff_t>(cells));
    const auto n = static_cast<Eigen::Index>(cells - 1);
    Eigen::MatrixXd m(n, n);
    const double s = best_of_ms(3, [&] {
      tfde::kernels::fill_hessenberg_toeplitz(table.values, 1.0, m, Execution::kSerial);
    });
    const double p = best_of_ms(3, [&] {
      tfde::kernels::fill_hessenberg_toeplitz(table.values, 1.0, m, Execution::kParallel);
    });
    report("fill_hessenberg_toeplitz", cells, s, p);
  }

  for (std::size_t cells : {100u, 200u, 400u}) {
    const auto n = static_cast<Eigen::Index>(cells - 1);
    Eigen::MatrixXd a = Eigen::MatrixXd::Random(n, n);
    a.diagonal().array() += static_cast<double>(n);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    const Eigen::MatrixXd rhs = Eigen::MatrixXd::Random(n, n);
    Eigen::MatrixXd work;
    const double sc = best_of_ms(3, [&] {
      work = rhs;
      tfde::kernels::solve_columns(lu, work, Execution::kSerial);
    });
    const double pc = best_of_ms(3, [&] {
      work = rhs;
      tfde::kernels::solve_columns(lu, work, Execution::kParallel);
    });
    report("solve_columns", cells, sc, pc);
    const double sr = best_of_ms(3, [&] {
      work = rhs;
      tfde::kernels::solve_rows_transposed(lu, work, Execution::kSerial);
    });
    const double pr = best_of_ms(3, [&] {
      work = rhs;
      tfde::kernels::solve_rows_transposed(lu, work, Execution::kParallel);
    });
    report("solve_rows_transposed", cells, sr, pr);
  }

  // Whole ADI solve, serial kernels against parallel kernels.
  tfde::CaseParameters prm;
  prm.alpha = 1.2;
  prm.beta = 1.5;
  prm.lambda = 0.1;
  const auto c = tfde::make_case(tfde::CaseId::kEx5_3, prm);
  for (double h : {0.05, 0.025}) {
    auto spec = c.problem_2d(h, std::pow(h, 1.5));
    spec.execution = Execution::kSerial;
    const double s = best_of_ms(1, [&] { (void)tfde::solve_adi(spec); });
    spec.execution = Execution::kParallel;
    const double p = best_of_ms(1, [&] { (void)tfde::solve_adi(spec); });
    report("solve_adi (ex5_3)", spec.grid_x.cells(), s, p);
  }
  return 0;
}
