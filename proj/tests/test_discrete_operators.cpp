#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "tfde/discrete_operators.hpp"
#include "tfde/errors.hpp"
#include "tfde/oracle.hpp"
#include "tfde/verification.hpp"

using namespace tfde;

namespace {

std::vector<double> sample(const Grid1D& grid, double (*f)(double)) {
  std::vector<double> v(grid.cells() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
  return v;
}

Eigen::VectorXd interior_of(const std::vector<double>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size() - 2));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = v[static_cast<std::size_t>(i) + 1];
  return out;
}

/// Quasi-compact weights with lambda = 0 built from scratch.
std::vector<double> untempered_weights(double a, std::size_t n) {
  const double mm = (3.0 * a * a - 7.0 * a + 4.0) / 24.0;
  const double mp = (3.0 * a * a + 5.0 * a + 4.0) / 24.0;
  const double m0 = (8.0 + a - 3.0 * a * a) / 12.0;
  std::vector<double> g(n + 1);
  g[0] = 1.0;
  for (std::size_t k = 1; k <= n; ++k) g[k] = g[k - 1] * (1.0 - (a + 1.0) / k);
  std::vector<double> w(n + 1);
  w[0] = mp * g[0];
  w[1] = mp * g[1] + m0 * g[0];
  for (std::size_t k = 2; k <= n; ++k) w[k] = mp * g[k] + m0 * g[k - 1] + mm * g[k - 2];
  return w;
}

}  // namespace

TEST_SUITE("discrete_operators") {

TEST_CASE("compact matrix bands") {
  const Grid1D grid(0.0, 1.0, 10);
  const auto b0 = assemble_B(Side::kLeft, grid, 0.0);
  CHECK(b0.sub == doctest::Approx(1.0 / 6.0));
  CHECK(b0.diag == doctest::Approx(2.0 / 3.0));
  CHECK(b0.super == doctest::Approx(1.0 / 6.0));
  CHECK(b0.dense().isApprox(b0.dense().transpose()));

  const auto bl = assemble_B(Side::kLeft, grid, 1.0);
  CHECK(bl.super == doctest::Approx(0.1841952).epsilon(1e-6));
  CHECK(bl.sub == doctest::Approx(0.150806).epsilon(1e-6));
  const auto br = assemble_B(Side::kRight, grid, 1.0);
  CHECK(br.sub == bl.super);
  CHECK(br.super == bl.sub);
  CHECK(br.dense().isApprox(bl.dense().transpose(), 0.0));
}

TEST_CASE("compact operator on constants and exponentials") {
  std::vector<double> ones(12, 1.0);
  for (double v : apply_compact(Side::kLeft, 0.0, 0.1, ones)) CHECK(v == doctest::Approx(1.0));

  const double lam = 2.0, h = 0.05;
  std::vector<double> e(21);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(-lam * h * static_cast<double>(i));
  const auto out = apply_compact(Side::kLeft, lam, h, e);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == doctest::Approx(e[i + 1]).epsilon(1e-14));

  std::vector<double> er(21);
  for (std::size_t i = 0; i < er.size(); ++i) er[i] = std::exp(lam * h * static_cast<double>(i));
  const auto outr = apply_compact(Side::kRight, lam, h, er);
  for (std::size_t i = 0; i < outr.size(); ++i) CHECK(outr[i] == doctest::Approx(er[i + 1]).epsilon(1e-14));
}

TEST_CASE("matrix B plus ghost terms equals the pointwise operator") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid1D grid(0.0, 1.0, 16);
  for (Side side : {Side::kLeft, Side::kRight}) {
    std::vector<double> v(17);
    for (auto& x : v) x = u(rng);
    const auto b = assemble_B(side, grid, 3.0);
    Eigen::VectorXd mv = b.apply(interior_of(v));
    mv(0) += b.sub * v.front();
    mv(mv.size() - 1) += b.super * v.back();
    const auto direct = apply_compact(side, 3.0, grid.h(), v);
    for (std::size_t i = 0; i < direct.size(); ++i) {
      CHECK(mv(static_cast<Eigen::Index>(i)) == doctest::Approx(direct[i]).epsilon(1e-14));
    }
    CHECK(b.apply(interior_of(v)).isApprox(b.dense() * interior_of(v), 1e-14));
  }
}

TEST_CASE("P diagonal entry") {
  const TemperedParams p(1.5, 1.0);
  const Grid1D grid(0.0, 1.0, 10);
  const auto sys = assemble_P(Side::kLeft, p, grid, 1.0);
  const double w1 = -(73.0 / 96.0) * 1.5 + 11.0 / 48.0;
  const double expect = w1 / std::pow(0.1, 1.5) + (2.0 / 3.0) * 0.5;
  CHECK(sys.matrix(3, 3) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(sys.matrix(3, 3) == doctest::Approx(-28.489).epsilon(1e-4));
  CHECK_FALSE(sys.stability_warning);
  CHECK(assemble_P(Side::kLeft, TemperedParams(1.5, 50.0), grid, 1.0).stability_warning);
}

TEST_CASE("P structure: untempered Toeplitz, transposes, tau scaling") {
  const Grid1D grid(0.0, 1.0, 12);
  const double a = 1.7;
  const auto w = untempered_weights(a, 12);
  const auto p0 = assemble_P(Side::kLeft, TemperedParams(a, 0.0), grid, 1.0).matrix;
  const double s = std::pow(grid.h(), -a);
  for (Eigen::Index i = 0; i < p0.rows(); ++i) {
    for (Eigen::Index j = 0; j < p0.cols(); ++j) {
      const double expect = j <= i + 1 ? s * w[static_cast<std::size_t>(i - j + 1)] : 0.0;
      CHECK(p0(i, j) == doctest::Approx(expect).epsilon(1e-13).scale(1.0));
    }
  }
  const TemperedParams p(1.4, 2.0);
  const auto l = assemble_P(Side::kLeft, p, grid, 0.01);
  const auto r = assemble_P(Side::kRight, p, grid, 0.01);
  CHECK(r.matrix.isApprox(l.matrix.transpose(), 0.0));
  const auto noscale = assemble_P(Side::kLeft, p, grid, 0.01, StepScaling::kExcludeTau);
  CHECK((0.01 * noscale.matrix).isApprox(l.matrix, 1e-14));
}

TEST_CASE("P reproduces the pointwise derivative for zero boundary values") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid1D grid(0.0, 1.0, 20);
  const TemperedParams p(1.3, 4.0);
  for (Side side : {Side::kLeft, Side::kRight}) {
    std::vector<double> v(21, 0.0);
    for (std::size_t i = 1; i < 20; ++i) v[i] = u(rng);
    const auto sys = assemble_P(side, p, grid, 1.0, StepScaling::kExcludeTau);
    const Eigen::VectorXd mv = sys.matrix * interior_of(v);
    const auto direct = apply_quasi_compact_derivative(side, p, grid, v);
    for (std::size_t i = 0; i < direct.size(); ++i) {
      CHECK(mv(static_cast<Eigen::Index>(i)) == doctest::Approx(direct[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("H vanishes for homogeneous data and is confined to the far row") {
  const Grid1D grid(0.0, 1.0, 10);
  const TemperedParams p(1.5, 1.0);
  const auto w = tempered_weights(p, grid.h(), 10);
  CHECK(assemble_H(Side::kLeft, p, grid, 1e-3, BoundaryData{}, w).isZero(0.0));
  CHECK(assemble_H(Side::kRight, p, grid, 1e-3, BoundaryData{}, w).isZero(0.0));

  BoundaryData far;
  far.right_prev = std::exp(-1.0);
  far.right_next = std::exp(-1.001);
  far.source_right = 0.3;
  const auto hv = assemble_H(Side::kLeft, p, grid, 1e-3, far, w);
  CHECK(hv(hv.size() - 1) != 0.0);
  for (Eigen::Index i = 0; i + 1 < hv.size(); ++i) CHECK(hv(i) == 0.0);

  const auto short_table = tempered_weights(p, grid.h(), 5);
  CHECK_THROWS_AS(assemble_H(Side::kLeft, p, grid, 1e-3, far, short_table), DomainError);
}

TEST_CASE("right H is the flipped left H of the mirrored data") {
  const Grid1D grid(0.0, 1.0, 10);
  const TemperedParams p(1.6, 2.0);
  const auto w = tempered_weights(p, grid.h(), 10);
  BoundaryData d{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  BoundaryData m{0.3, 0.4, 0.1, 0.2, 0.6, 0.5};
  const auto r = assemble_H(Side::kRight, p, grid, 1e-2, d, w);
  const auto l = assemble_H(Side::kLeft, p, grid, 1e-2, m, w);
  CHECK(r.isApprox(l.reverse(), 0.0));
}

TEST_CASE("scheme residual of the exact solution is O(tau (tau + h^3))") {
  CaseParameters prm;
  prm.alpha = 1.5;
  prm.lambda = 1.0;
  prm.j = 5;
  const auto c = make_case(CaseId::kEx5_1, prm);
  auto residual = [&](double h) {
    const Grid1D grid = Grid1D::with_spacing(0.0, 1.0, h);
    const double tau = h * h * h;
    const TemperedParams p(prm.alpha, prm.lambda);
    const auto b = assemble_B(Side::kLeft, grid, p.lambda());
    const auto sys = assemble_P(Side::kLeft, p, grid, tau);
    const auto w = tempered_weights(p, grid.h(), static_cast<std::ptrdiff_t>(grid.cells()));
    const double t0 = 0.05, t1 = t0 + tau;
    const auto n = static_cast<Eigen::Index>(grid.interior());
    Eigen::VectorXd u0(n), u1(n), f1(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double x = grid.x(static_cast<std::size_t>(i) + 1);
      u0(i) = c.exact_1d(x, t0);
      u1(i) = c.exact_1d(x, t1);
      f1(i) = c.source_1d(x, t1);
    }
    BoundaryData bd;
    bd.left_prev = c.exact_1d(0.0, t0);
    bd.left_next = c.exact_1d(0.0, t1);
    bd.right_prev = c.exact_1d(1.0, t0);
    bd.right_next = c.exact_1d(1.0, t1);
    bd.source_left = c.source_1d(0.0, t1);
    bd.source_right = c.source_1d(1.0, t1);
    const Eigen::VectorXd r = b.apply(u1) - sys.matrix * u1 - b.apply(u0) -
                              tau * b.apply(f1) -
                              assemble_H(Side::kLeft, p, grid, tau, bd, w);
    return r.cwiseAbs().maxCoeff();
  };
  const double coarse = residual(0.1);
  const double fine = residual(0.05);
  CHECK(coarse / fine > 30.0);
}

TEST_CASE("quasi-compact derivative: zero, untempered path, third order") {
  const Grid1D grid(0.0, 1.0, 16);
  std::vector<double> zero(17, 0.0);
  for (double v : apply_quasi_compact_derivative(Side::kLeft, TemperedParams(1.5, 1.0), grid, zero)) {
    CHECK(v == 0.0);
  }

  const double a = 1.35;
  auto f = [](double x) { return std::sin(3.0 * x) + x * x; };
  std::vector<double> v(17);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
  const auto w = untempered_weights(a, 16);
  const auto d = apply_quasi_compact_derivative(Side::kLeft, TemperedParams(a, 0.0), grid, v);
  for (std::size_t i = 1; i < 16; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= i + 1; ++k) acc += w[k] * v[i - k + 1];
    CHECK(d[i - 1] == doctest::Approx(acc * std::pow(grid.h(), -a)).epsilon(1e-12));
  }

  const TemperedParams p(1.5, 1.0);
  auto error_at = [&](std::size_t cells, Side side) {
    const Grid1D g(0.0, 1.0, cells);
    const double end = side == Side::kLeft ? 0.0 : 1.0;
    std::vector<double> u(cells + 1), du(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
      u[i] = power_family(side, p.lambda(), end, 5, g.x(i));
      du[i] = exact_normalized_power_derivative(side, p, end, 5, g.x(i));
    }
    const auto approx = apply_quasi_compact_derivative(side, p, g, u);
    const auto filtered = apply_compact(side, p.lambda(), g.h(), du);
    double worst = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i) {
      worst = std::max(worst, std::abs(approx[i] - filtered[i]));
    }
    return worst;
  };
  for (Side side : {Side::kLeft, Side::kRight}) {
    const double order = std::log2(error_at(40, side) / error_at(80, side));
    CHECK(order == doctest::Approx(3.0).epsilon(0.1));
  }
}

TEST_CASE("weight cache shares tables") {
  const TemperedParams p(1.5, 1.0);
  const auto a = cached_weights(p, 0.1, 10);
  const auto b = cached_weights(p, 0.1, 10);
  CHECK(a.get() == b.get());
  CHECK(a->size() >= 11);
}

}  // TEST_SUITE
