#include "tfde/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "tfde/discrete_operators.hpp"
#include "tfde/errors.hpp"

namespace tfde {

namespace {

void require_diagnostic_size(std::size_t dim) {
  if (dim > kMaxDiagnosticDim) {
    std::ostringstream os;
    os << "diagnostic dimension " << dim << " exceeds the cap "
       << kMaxDiagnosticDim;
    throw DomainError(os.str());
  }
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigen-solver did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kNegativeDefinite:
      return "negative-definite";
    case Verdict::kIndefinite:
      return "indefinite";
    case Verdict::kPositiveDefinite:
      return "positive-definite";
  }
  return "unknown";
}

DefinitenessReport classify_symmetric(const Eigen::MatrixXd& sym) {
  require_diagnostic_size(static_cast<std::size_t>(sym.rows()));
  DefinitenessReport r;
  r.dim = static_cast<std::size_t>(sym.rows());
  if (sym.rows() == 0) return r;
  const Eigen::VectorXd eig = symmetric_eigenvalues(sym);
  r.min_eig = eig.minCoeff();
  r.max_eig = eig.maxCoeff();
  if (r.max_eig < -kZeroThreshold) {
    r.verdict = Verdict::kNegativeDefinite;
  } else if (r.min_eig > kZeroThreshold) {
    r.verdict = Verdict::kPositiveDefinite;
  } else {
    r.verdict = Verdict::kIndefinite;
  }
  return r;
}

double max_symmetric_eigenvalue(const Eigen::MatrixXd& sym) {
  return symmetric_eigenvalues(sym).maxCoeff();
}

DefinitenessReport check_P_definiteness(const TemperedParams& params,
                                        const Grid1D& grid, double tau,
                                        Side side) {
  require_diagnostic_size(grid.interior());
  const auto p = assemble_P(side, params, grid, tau);
  auto r = classify_symmetric(0.5 * (p.matrix + p.matrix.transpose()));
  r.alpha = params.alpha();
  r.lambda_h = params.lambda() * grid.h();
  return r;
}

double sym_B_eigenvalue(double lambda_h, std::size_t j, std::size_t cells) {
  return 2.0 / 3.0 + (std::exp(lambda_h) + std::exp(-lambda_h)) / 6.0 *
                         std::cos(static_cast<double>(j) * std::numbers::pi /
                                  static_cast<double>(cells));
}

BBoundsReport check_B_bounds(double lambda, double h, std::size_t cells) {
  if (!(h > 0.0) || lambda < 0.0) throw DomainError("need h > 0, lambda >= 0");
  const Grid1D grid(0.0, h * static_cast<double>(cells), cells);
  require_diagnostic_size(grid.interior());
  const Eigen::MatrixXd b = assemble_B(Side::kLeft, grid, lambda).dense();
  const Eigen::MatrixXd sym = 0.5 * (b + b.transpose());

  BBoundsReport out;
  out.spectrum = classify_symmetric(sym);
  out.spectrum.lambda_h = lambda * h;
  out.above_lower = out.spectrum.min_eig > 1.0 / 12.0;
  out.below_upper = out.spectrum.max_eig < 2.0;

  const Eigen::VectorXd direct = symmetric_eigenvalues(sym);  // ascending
  // cos(j pi / M) decreases in j, so j = M-1 .. 1 lists the closed form ascending.
  for (std::size_t k = 0; k < grid.interior(); ++k) {
    const double closed = sym_B_eigenvalue(lambda * h, cells - 1 - k, cells);
    out.closed_form_gap = std::max(
        out.closed_form_gap,
        std::abs(direct(static_cast<Eigen::Index>(k)) - closed));
  }
  return out;
}

double HPlusSplit::f_plus(double y) const {
  return h_a - 2.0 * h_c + 2.0 * h_b * y + 4.0 * h_c * y * y;
}

Eigen::MatrixXd sym_P_unscaled(const TemperedParams& params,
                               const Grid1D& grid) {
  if (!(params.diffusivity() > 0.0)) {
    throw DomainError("symmetric part of P / (K tau) needs K > 0");
  }
  const auto p = assemble_P(Side::kLeft, params, grid, 1.0,
                            StepScaling::kExcludeTau);
  return 0.5 * (p.matrix + p.matrix.transpose()) / params.diffusivity();
}

HPlusSplit hplus_split(const TemperedParams& params, const Grid1D& grid) {
  require_diagnostic_size(grid.interior());
  const double h = grid.h();
  const auto w = cached_weights(params, h, std::max<std::size_t>(grid.cells(), 3));
  const double w3 = (*w)[3];
  if (w3 >= 0.0) {
    std::ostringstream os;
    os << "w_3 = " << w3 << " >= 0 at alpha = " << params.alpha()
       << ": the symmetric part is diagonally dominant without a split";
    throw RegimeMismatch(os.str());
  }
  HPlusSplit s;
  s.h_c = -w3 / (2.0 * std::pow(h, params.alpha()));
  s.h_b = -4.0 * s.h_c;
  s.h_a = 6.0 * s.h_c;

  const auto n = static_cast<Eigen::Index>(grid.interior());
  s.hplus = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.hplus(i, i) = s.h_a;
    if (i + 1 < n) s.hplus(i, i + 1) = s.hplus(i + 1, i) = s.h_b;
    if (i + 2 < n) s.hplus(i, i + 2) = s.hplus(i + 2, i) = s.h_c;
  }
  s.combined = sym_P_unscaled(params, grid) + s.hplus;
  s.combined_negative_diagonal = (s.combined.diagonal().array() < 0.0).all();
  s.combined_diagonally_dominant = strictly_diagonally_dominant(s.combined);
  return s;
}

double w3_quartic(double alpha) {
  const double a = alpha;
  return 80.0 - 86.0 * a - 11.0 * a * a + 14.0 * a * a * a + 3.0 * a * a * a * a;
}

double w3_sign_root() {
  auto cubic = [](double a) { return ((3.0 * a + 17.0) * a + 6.0) * a - 80.0; };
  double lo = 1.0;
  double hi = 2.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (cubic(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool stability_predicate(double lambda, double h) {
  if (!(h > 0.0)) return false;
  return lambda * h <= 1.0;
}

GeneratingRange sym_P_generating_range(const TemperedParams& params,
                                       const Grid1D& grid,
                                       std::size_t samples) {
  if (samples < 2) throw DomainError("need at least two samples");
  const Eigen::MatrixXd sym = sym_P_unscaled(params, grid);
  const auto n = sym.rows();
  // Toeplitz: the first column carries every diagonal.
  const Eigen::VectorXd t = sym.col(0);
  GeneratingRange r{std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = -std::numbers::pi + 2.0 * std::numbers::pi *
                                             static_cast<double>(s) /
                                             static_cast<double>(samples - 1);
    double f = t(0);
    for (Eigen::Index k = 1; k < n; ++k) {
      f += 2.0 * t(k) * std::cos(static_cast<double>(k) * x);
    }
    r.min = std::min(r.min, f);
    r.max = std::max(r.max, f);
  }
  return r;
}

GershgorinInterval gershgorin(const Eigen::MatrixXd& m) {
  GershgorinInterval g{std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity()};
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double radius = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
    g.lower = std::min(g.lower, m(i, i) - radius);
    g.upper = std::max(g.upper, m(i, i) + radius);
  }
  return g;
}

bool strictly_diagonally_dominant(const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double off = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
    if (!(std::abs(m(i, i)) > off)) return false;
  }
  return true;
}

double p_property_sum(double alpha, double lambda_h) {
  const double x = lambda_h;
  const double ep = std::exp(x);
  const double em = std::exp(-x);
  const double xa1 = x == 0.0 ? 0.0 : std::pow(x, alpha - 1.0);
  const double xa = x == 0.0 ? 0.0 : std::pow(x, alpha);
  return closed_form_weight_sum(alpha, x) - 0.5 * alpha * xa1 * (ep - em) +
         xa * (alpha - 1.0) * (2.0 / 3.0 + (ep + em) / 6.0);
}

}  // namespace tfde
