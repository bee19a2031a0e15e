#include <cmath>

#include <doctest.h>

#include "tfde/errors.hpp"
#include "tfde/spectral_analysis.hpp"

using namespace tfde;

TEST_SUITE("spectral_analysis") {

TEST_CASE("classification of simple matrices") {
  CHECK(classify_symmetric(-Eigen::MatrixXd::Identity(3, 3)).verdict == Verdict::kNegativeDefinite);
  CHECK(classify_symmetric(Eigen::MatrixXd::Identity(3, 3)).verdict == Verdict::kPositiveDefinite);
  Eigen::MatrixXd mixed = Eigen::MatrixXd::Identity(3, 3);
  mixed(0, 0) = -1.0;
  CHECK(classify_symmetric(mixed).verdict == Verdict::kIndefinite);
  Eigen::MatrixXd near_zero = -Eigen::MatrixXd::Identity(3, 3);
  near_zero(2, 2) = -1e-14;
  CHECK(classify_symmetric(near_zero).verdict == Verdict::kIndefinite);
  CHECK(max_symmetric_eigenvalue(mixed) == doctest::Approx(1.0));
}

TEST_CASE("P is negative definite in the documented regimes") {
  const Grid1D g20(0.0, 1.0, 20);
  CHECK(check_P_definiteness(TemperedParams(1.5, 1.0), g20, 1.0).verdict ==
        Verdict::kNegativeDefinite);
  const Grid1D g40(0.0, 1.0, 40);
  CHECK(check_P_definiteness(TemperedParams(1.9, 40.0), g40, 1.0).verdict ==
        Verdict::kNegativeDefinite);
  CHECK(check_P_definiteness(TemperedParams(1.1, 0.0), g40, 1.0).verdict ==
        Verdict::kNegativeDefinite);
  const auto right = check_P_definiteness(TemperedParams(1.5, 1.0), g20, 1.0, Side::kRight);
  const auto left = check_P_definiteness(TemperedParams(1.5, 1.0), g20, 1.0);
  CHECK(right.max_eig == doctest::Approx(left.max_eig).epsilon(1e-12));
}

TEST_CASE("B spectrum bounds and closed form") {
  const auto b0 = check_B_bounds(0.0, 0.1, 10);
  CHECK(b0.above_lower);
  CHECK(b0.below_upper);
  CHECK(b0.closed_form_gap < 1e-10);
  CHECK(sym_B_eigenvalue(0.0, 1, 10) ==
        doctest::Approx(2.0 / 3.0 + std::cos(M_PI / 10.0) / 3.0));

  const auto b1 = check_B_bounds(40.0, 1.0 / 40.0, 40);
  CHECK(b1.spectrum.min_eig > 1.0 / 12.0);
  CHECK(b1.spectrum.max_eig < 2.0);
  CHECK(b1.closed_form_gap < 1e-10);
}

TEST_CASE("w3 sign root") {
  const double r = w3_sign_root();
  CHECK(r == doctest::Approx(1.7646).epsilon(1e-4));
  CHECK(3 * r * r * r + 17 * r * r + 6 * r - 80 == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(w3_quartic(1.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(w3_quartic(r) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  const double below = closed_form_w3(r - 1e-3, 0.0);
  const double above = closed_form_w3(r + 1e-3, 0.0);
  CHECK(below > 0.0);
  CHECK(above < 0.0);
}

TEST_CASE("H+ splitting") {
  const Grid1D grid(0.0, 1.0, 20);
  const auto split = hplus_split(TemperedParams(1.9, 0.0), grid);
  CHECK(split.combined_negative_diagonal);
  CHECK(split.combined_diagonally_dominant);
  CHECK(split.h_c > 0.0);
  CHECK(split.f_plus(1.0) == doctest::Approx(0.0).scale(std::abs(split.h_a)));
  for (double y = -1.0; y <= 1.0; y += 0.125) CHECK(split.f_plus(y) >= -1e-12);
  CHECK(max_symmetric_eigenvalue(split.hplus) >= -1e-10);

  CHECK_THROWS_AS(hplus_split(TemperedParams(1.5, 0.0), grid), RegimeMismatch);
}

TEST_CASE("Weyl bound: sym(P) eigenvalues lie below those of the combined matrix") {
  const Grid1D grid(0.0, 1.0, 40);
  const TemperedParams p(1.95, 20.0);
  const auto split = hplus_split(p, grid);
  const double upper = max_symmetric_eigenvalue(split.combined);
  const double actual = max_symmetric_eigenvalue(sym_P_unscaled(p, grid));
  CHECK(actual <= upper + 1e-9);
  CHECK(upper < 0.0);
  const auto disc = gershgorin(split.combined);
  CHECK(disc.upper < 0.0);
}

TEST_CASE("stability predicate") {
  CHECK(stability_predicate(10.0, 0.05));
  CHECK_FALSE(stability_predicate(50.0, 0.1));
  CHECK(stability_predicate(0.0, 123.0));
  CHECK(stability_predicate(1.0, 1.0));
  CHECK_FALSE(stability_predicate(1.0, 0.0));
}

TEST_CASE("generating function brackets the spectrum") {
  const Grid1D grid(0.0, 1.0, 40);
  for (double a : {1.2, 1.8}) {
    const TemperedParams p(a, 10.0);
    const auto range = sym_P_generating_range(p, grid);
    const auto sym = sym_P_unscaled(p, grid);
    const auto report = classify_symmetric(sym);
    CHECK(report.max_eig <= range.max + 1e-9);
    CHECK(report.min_eig >= range.min - 1e-9);
  }
}

TEST_CASE("Gershgorin and diagonal dominance") {
  Eigen::MatrixXd m(2, 2);
  m << -4.0, 1.0, 2.0, -5.0;
  const auto g = gershgorin(m);
  CHECK(g.lower == doctest::Approx(-7.0));
  CHECK(g.upper == doctest::Approx(-3.0));
  CHECK(strictly_diagonally_dominant(m));
  m(0, 1) = 4.0;
  CHECK_FALSE(strictly_diagonally_dominant(m));
}

TEST_CASE("fourth P property is nonpositive") {
  for (double a = 1.05; a < 2.0; a += 0.1) {
    for (double lh = 0.0; lh <= 1.0; lh += 0.125) CHECK(p_property_sum(a, lh) <= 1e-14);
  }
}

TEST_CASE("verdict names") {
  CHECK(to_string(Verdict::kNegativeDefinite) == "negative-definite");
  CHECK(to_string(Verdict::kPositiveDefinite) == "positive-definite");
}

}  // TEST_SUITE
