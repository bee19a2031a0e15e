#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "tfde/grid.hpp"
#include "tfde/tempered_calculus.hpp"

namespace tfde {

enum class Verdict { kNegativeDefinite, kIndefinite, kPositiveDefinite };

std::string to_string(Verdict v);

/// Extreme eigenvalues of a symmetric part. |eig| <= 1e-12 counts as zero,
/// so borderline spectra are reported as indefinite.
struct DefinitenessReport {
  double alpha = 0.0;
  double lambda_h = 0.0;
  std::size_t dim = 0;
  double max_eig = 0.0;
  double min_eig = 0.0;
  Verdict verdict = Verdict::kIndefinite;
};

inline constexpr double kZeroThreshold = 1e-12;
inline constexpr std::size_t kMaxDiagnosticDim = 400;

/// Classifies a symmetric matrix by its extreme eigenvalues.
DefinitenessReport classify_symmetric(const Eigen::MatrixXd& sym);

/// Spectrum of (P + P^T)/2 for the assembled P (tau folded in).
DefinitenessReport check_P_definiteness(const TemperedParams& params,
                                        const Grid1D& grid, double tau,
                                        Side side = Side::kLeft);

struct BBoundsReport {
  DefinitenessReport spectrum;   ///< of (B + B^T)/2
  bool above_lower = false;      ///< min eig > 1/12
  bool below_upper = false;      ///< max eig < 2
  double closed_form_gap = 0.0;  ///< max |direct - closed-form| eigenvalue
};

/// Closed-form eigenvalue 2/3 + (e^{lambda h} + e^{-lambda h}) cos(j pi / M) / 6.
double sym_B_eigenvalue(double lambda_h, std::size_t j, std::size_t cells);

BBoundsReport check_B_bounds(double lambda, double h, std::size_t cells);

/// Pentadiagonal symmetric Toeplitz H+ with bands (h_a, h_b, h_c) =
/// (6, -4, 1) h_c, and the shifted matrix sym(P)/(K tau) + H+.
struct HPlusSplit {
  double h_c = 0.0;
  double h_b = 0.0;
  double h_a = 0.0;
  Eigen::MatrixXd hplus;
  Eigen::MatrixXd combined;
  bool combined_negative_diagonal = false;
  bool combined_diagonally_dominant = false;

  /// f+(y) = h_a - 2 h_c + 2 h_b y + 4 h_c y^2 on y = cos(x).
  double f_plus(double y) const;
};

/// Throws RegimeMismatch when w_3 >= 0 (no negative third diagonal to absorb).
HPlusSplit hplus_split(const TemperedParams& params, const Grid1D& grid);

/// Root of 3a^3 + 17a^2 + 6a - 80 on (1, 2) by bisection to 1e-12.
double w3_sign_root();

/// The quartic 80 - 86a - 11a^2 + 14a^3 + 3a^4 whose sign fixes w_3.
double w3_quartic(double alpha);

/// True iff h <= 1 / lambda (always for lambda = 0).
bool stability_predicate(double lambda, double h);

/// Range of the generating function of the Toeplitz matrix sym(P)/(K tau),
/// f(x) = t_0 + 2 sum_k t_k cos(k x), sampled on `samples` points of [-pi, pi].
struct GeneratingRange {
  double min = 0.0;
  double max = 0.0;
};

GeneratingRange sym_P_generating_range(const TemperedParams& params,
                                       const Grid1D& grid,
                                       std::size_t samples = 10000);

/// Symmetric part of P/(K tau), left variant.
Eigen::MatrixXd sym_P_unscaled(const TemperedParams& params, const Grid1D& grid);

/// Union of Gershgorin discs of a real matrix, as an interval of the real axis.
struct GershgorinInterval {
  double lower = 0.0;
  double upper = 0.0;
};

GershgorinInterval gershgorin(const Eigen::MatrixXd& m);
bool strictly_diagonally_dominant(const Eigen::MatrixXd& m);

double max_symmetric_eigenvalue(const Eigen::MatrixXd& sym);

/// Scalar of the fourth P-property: sum_k w_k - alpha (lambda h)^{alpha-1}
/// (e^{lambda h} - e^{-lambda h}) / 2 + (lambda h)^alpha (alpha - 1)
/// (2/3 + (e^{lambda h} + e^{-lambda h}) / 6). Nonpositive for lambda h <= 1.
double p_property_sum(double alpha, double lambda_h);

}  // namespace tfde
