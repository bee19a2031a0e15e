#include <cmath>
#include <vector>

#include <doctest.h>

#include "tfde/errors.hpp"
#include "tfde/solver_1d.hpp"
#include "tfde/solver_2d.hpp"
#include "tfde/stepping.hpp"
#include "tfde/verification.hpp"

using namespace tfde;

namespace {

ManufacturedCase case_of(CaseId id, double alpha, double lambda, double beta = 1.5) {
  CaseParameters prm;
  prm.alpha = alpha;
  prm.beta = beta;
  prm.lambda = lambda;
  prm.j = 5;
  return make_case(id, prm);
}

double solve_error(const ManufacturedCase& c, double h) {
  const auto spec = c.problem_1d(h, h * h * h);
  const auto sol = solve(spec);
  const double t = spec.time.horizon();
  return error_norm(sol, [&](double x) { return c.exact_1d(x, t); });
}

ProblemSpec1D zero_problem(ProblemSide side) {
  auto zero = [](double) { return 0.0; };
  return ProblemSpec1D{Grid1D(0.0, 1.0, 20), TimeGrid(0.1, 50),
                       TemperedParams(1.5, 1.0), side, zero, zero, zero,
                       Source1D::zero()};
}

}  // namespace

TEST_SUITE("solver_1d") {

TEST_CASE("left solver error at a tabulated level") {
  CHECK(solve_error(case_of(CaseId::kEx5_1, 1.5, 1.0), 0.05) ==
        doctest::Approx(1.1772e-05).epsilon(1e-3));
  CHECK(solve_error(case_of(CaseId::kEx5_1, 1.1, 1.0), 0.1) ==
        doctest::Approx(6.0259e-06).epsilon(1e-3));
}

TEST_CASE("right solver errors at tabulated levels") {
  CHECK(solve_error(case_of(CaseId::kEx5_2, 1.5, 1.0), 0.05) ==
        doctest::Approx(3.2000e-05).epsilon(1e-3));
  CHECK(solve_error(case_of(CaseId::kEx5_2, 1.1, 10.0), 0.0125) ==
        doctest::Approx(2.3731e-05).epsilon(1e-3));
}

TEST_CASE("two-sided splitting error at a tabulated level") {
  CHECK(solve_error(case_of(CaseId::kEx5_4, 1.5, 0.1), 0.05) ==
        doctest::Approx(7.8215e-07).epsilon(1e-3));
}

TEST_CASE("zero data gives the zero solution") {
  for (auto side : {ProblemSide::kLeft, ProblemSide::kRight, ProblemSide::kTwoSided}) {
    const auto sol = solve(zero_problem(side));
    for (double v : sol.final_values) CHECK(v == 0.0);
  }
}

TEST_CASE("coarse strongly tempered run blows up") {
  const auto c = case_of(CaseId::kEx5_1, 1.9, 50.0);
  const auto spec = c.problem_1d(0.1, 1e-3);
  CHECK_THROWS_AS(solve(spec), BlowupError);
  try {
    (void)solve(spec);
  } catch (const BlowupError& e) {
    CHECK(e.step() > 0);
    CHECK(e.step() <= spec.time.steps());
  }
}

TEST_CASE("right solver mirrors the left solver") {
  const double lam = 2.0;
  auto init = [](double x) { return std::sin(M_PI * x) * x; };
  auto zero = [](double) { return 0.0; };
  auto far = [](double t) { return 0.3 * std::exp(-t); };
  auto src = Source1D::general([](double x, double t) { return x * (1 - x) * std::cos(t); });
  ProblemSpec1D left{Grid1D(0.0, 1.0, 25), TimeGrid(0.2, 40), TemperedParams(1.6, lam),
                     ProblemSide::kLeft, init, zero, far, src};
  ProblemSpec1D right{Grid1D(0.0, 1.0, 25), TimeGrid(0.2, 40), TemperedParams(1.6, lam),
                      ProblemSide::kRight,
                      [&](double x) { return init(1.0 - x); }, far, zero,
                      Source1D::general([](double x, double t) {
                        return (1 - x) * x * std::cos(t);
                      })};
  const auto l = solve_left(left);
  const auto r = solve_right(right);
  REQUIRE(l.final_values.size() == r.final_values.size());
  const std::size_t n = l.final_values.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(r.final_values[n - 1 - i] == doctest::Approx(l.final_values[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("solvers reject the wrong side or a nonzero near trace") {
  auto spec = zero_problem(ProblemSide::kRight);
  CHECK_THROWS_AS(solve_left(spec), DomainError);
  spec.side = ProblemSide::kLeft;
  spec.boundary_left = [](double) { return 1.0; };
  CHECK_THROWS_AS(solve_left(spec), DomainError);
  auto two = zero_problem(ProblemSide::kTwoSided);
  two.boundary_right = [](double) { return 0.5; };
  CHECK_THROWS_AS(solve_two_sided(two), DomainError);
}

TEST_CASE("history and energy") {
  auto spec = zero_problem(ProblemSide::kLeft);
  spec.initial = [](double x) { return x * x * (1 - x); };
  spec.keep_history = true;
  const auto sol = solve_left(spec);
  REQUIRE(sol.history.size() == spec.time.steps() + 1);
  CHECK(sol.history.back() == sol.final_values);
  const double e0 = discrete_energy(spec.grid, 1.0, sol.history.front());
  const double e1 = discrete_energy(spec.grid, 1.0, sol.history.back());
  CHECK(e0 > 0.0);
  CHECK(e1 < e0);
  CHECK_THROWS_AS(discrete_energy(spec.grid, 1.0, std::vector<double>(3)), DomainError);
}

TEST_CASE("growth guard") {
  const GrowthGuard guard(2.0);
  CHECK(guard.limit() == doctest::Approx(2.0 * kGrowthLimit));
  Eigen::VectorXd ok = Eigen::VectorXd::Constant(4, 1.0);
  CHECK_NOTHROW(guard.check(ok, 1));
  Eigen::VectorXd bad = ok;
  bad(2) = std::nan("");
  CHECK_THROWS_AS(guard.check(bad, 3), BlowupError);
  bad(2) = 1e11;
  CHECK_THROWS_AS(guard.check(bad, 3), BlowupError);
}

TEST_CASE("singular system is reported") {
  std::vector<std::string> warnings;
  CHECK_THROWS_AS(factor_system(Eigen::MatrixXd::Zero(3, 3), "test", warnings), SingularSystem);
  CHECK_NOTHROW(factor_system(Eigen::MatrixXd::Identity(3, 3), "test", warnings));
  CHECK(warnings.empty());
}

}  // TEST_SUITE

TEST_SUITE("solver_2d") {

TEST_CASE("ADI error at a tabulated level") {
  const auto c = case_of(CaseId::kEx5_3, 1.2, 0.1, 1.5);
  const auto spec = c.problem_2d(0.05, std::pow(0.05, 1.5));
  const auto sol = solve_adi(spec);
  const double t = spec.time.horizon();
  CHECK(error_norm(sol, [&](double x, double y) { return c.exact_2d(x, y, t); }) ==
        doctest::Approx(8.4125e-07).epsilon(1e-3));
}

TEST_CASE("serial and parallel ADI agree") {
  const auto c = case_of(CaseId::kEx5_3, 1.5, 0.1, 1.9);
  auto spec = c.problem_2d(0.1, 0.05);
  spec.execution = kernels::Execution::kSerial;
  const auto s = solve_adi(spec);
  spec.execution = kernels::Execution::kParallel;
  const auto p = solve_adi(spec);
  CHECK(s.interior.isApprox(p.interior, 1e-14));
}

TEST_CASE("zero data gives the zero solution") {
  ProblemSpec2D spec{Grid1D(0.0, 1.0, 10), Grid1D(0.0, 1.0, 12), TimeGrid(0.5, 10),
                     TemperedParams(1.3, 0.5), TemperedParams(1.7, 0.5),
                     [](double, double) { return 0.0; }, Source2D::zero()};
  const auto sol = solve_adi(spec);
  CHECK(sol.interior.rows() == 9);
  CHECK(sol.interior.cols() == 11);
  CHECK(sol.interior.isZero(0.0));
}

TEST_CASE("general and separable sources give the same result") {
  const auto c = case_of(CaseId::kEx5_3, 1.2, 0.1, 1.5);
  auto spec = c.problem_2d(0.1, 0.05);
  const auto a = solve_adi(spec);
  const auto sep = spec.source;
  spec.source = Source2D::general([sep](double x, double y, double t) { return sep(x, y, t); });
  const auto b = solve_adi(spec);
  CHECK(a.interior.isApprox(b.interior, 1e-12));
}

}  // TEST_SUITE
