#include "tfde/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "tfde/errors.hpp"
#include "tfde/oracle.hpp"

namespace tfde {

namespace {

constexpr double kDomainA = 0.0;
constexpr double kDomainB = 1.0;

double gamma_ratio(double num, double den) {
  // Gamma(num) / Gamma(den) for positive arguments, overflow-safe.
  return std::exp(std::lgamma(num) - std::lgamma(den));
}

double lambda_pow(double lambda, double e) {
  return lambda == 0.0 ? 0.0 : std::pow(lambda, e);
}

/// Spatial part of the left monomial source: f = e^{-t} * this.
double ex5_1_profile(double alpha, double lambda, int j, double x) {
  const double xj = std::pow(x, j);
  const double dxj = j > 0 ? j * std::pow(x, j - 1) : 0.0;
  return -std::exp(-lambda * x) *
         (xj + gamma_ratio(j + 1.0, 1.0 + j - alpha) * std::pow(x, j - alpha) -
          alpha * lambda_pow(lambda, alpha - 1.0) * (dxj - lambda * xj) -
          lambda_pow(lambda, alpha) * xj);
}

double ex5_2_profile(double alpha, double lambda, int j, double x) {
  const double r = 1.0 - x;
  const double rj = std::pow(r, j);
  const double drj = j > 0 ? j * std::pow(r, j - 1) : 0.0;
  return -std::exp(lambda * x) *
         (rj + gamma_ratio(j + 1.0, 1.0 + j - alpha) * std::pow(r, j - alpha) +
          alpha * lambda_pow(lambda, alpha - 1.0) * (lambda * rj - drj) -
          lambda_pow(lambda, alpha) * rj);
}

/// x^n + Gamma(n+1)/Gamma(n+1-a) x^{n-a} - a l^{a-1}(n x^{n-1} - l x^n)
///   - l^a x^n, with the leading x^n optional.
double ex5_3_term(double a, double l, int n, double x, bool with_value) {
  const double xn = std::pow(x, n);
  return (with_value ? xn : 0.0) +
         gamma_ratio(n + 1.0, n + 1.0 - a) * std::pow(x, n - a) -
         a * lambda_pow(l, a - 1.0) * (n * std::pow(x, n - 1) - l * xn) -
         lambda_pow(l, a) * xn;
}

double ex5_3_profile(double alpha, double beta, double lambda, double x,
                     double y) {
  const double xs = ex5_3_term(alpha, lambda, 4, x, true) -
                    ex5_3_term(alpha, lambda, 5, x, true);
  const double ys = ex5_3_term(beta, lambda, 4, y, false) -
                    ex5_3_term(beta, lambda, 5, y, false);
  return -std::exp(-lambda * x - lambda * y) *
         (xs * std::pow(y, 4) * (1.0 - y) + ys * std::pow(x, 4) * (1.0 - x));
}

constexpr double kBinom4[5] = {1.0, 4.0, 6.0, 4.0, 1.0};

std::string describe_warnings(const std::vector<std::string>& warnings) {
  std::string s = "ok";
  for (const auto& w : warnings) s += "; " + w;
  return s;
}

}  // namespace

std::string to_string(CaseId id) {
  switch (id) {
    case CaseId::kEx5_1:
      return "ex5_1";
    case CaseId::kEx5_2:
      return "ex5_2";
    case CaseId::kEx5_3:
      return "ex5_3";
    case CaseId::kEx5_4:
      return "ex5_4";
  }
  return "unknown";
}

std::optional<CaseId> parse_case_id(const std::string& text) {
  for (auto id : {CaseId::kEx5_1, CaseId::kEx5_2, CaseId::kEx5_3, CaseId::kEx5_4}) {
    if (text == to_string(id)) return id;
  }
  return std::nullopt;
}

double example_5_4_source(double alpha, double lambda, double x, double t,
                          int n_terms) {
  const double p = std::pow(x, 4) * std::pow(1.0 - x, 4);
  double left = 0.0;
  for (int m = 0; m <= 4; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    left += sign * kBinom4[m] * gamma_ratio(5.0 + m, 5.0 + m - alpha) *
            std::pow(x, 4 + m - alpha);
  }
  double series = 0.0;
  for (int j = 0; j <= n_terms; ++j) {
    double coeff = 1.0;
    if (j > 0) {
      if (lambda == 0.0) break;
      coeff = std::exp(j * std::log(2.0 * lambda) - std::lgamma(j + 1.0));
    }
    double inner = 0.0;
    for (int m = 0; m <= 4; ++m) {
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      inner += sign * kBinom4[m] *
               gamma_ratio(5.0 + m + j, 5.0 + m + j - alpha) *
               std::pow(1.0 - x, j + 4 + m - alpha);
    }
    series += coeff * inner;
  }
  return -std::exp(-t) *
         (std::exp(-lambda * x) *
              (p + left - 2.0 * lambda_pow(lambda, alpha) * p) +
          std::exp(lambda * (x - 2.0)) * series);
}

ManufacturedCase make_case(CaseId id, const CaseParameters& prm) {
  ManufacturedCase c{id, prm, 0.1, {}, {}, {}, {}};
  const double alpha = prm.alpha;
  const double beta = prm.beta;
  const double lambda = prm.lambda;
  const int j = prm.j;
  if ((id == CaseId::kEx5_1 || id == CaseId::kEx5_2) && j < 1) {
    throw DomainError("monomial degree j must be >= 1");
  }
  // Validates the orders up front.
  (void)TemperedParams(alpha, lambda);
  if (id == CaseId::kEx5_3) (void)TemperedParams(beta, lambda);

  auto decay = [](double t) { return std::exp(-t); };
  switch (id) {
    case CaseId::kEx5_1:
      c.exact_1d = [=](double x, double t) {
        return std::exp(-t - lambda * x) * std::pow(x, j);
      };
      c.source_1d = Source1D::separable(
          [=](double x) { return ex5_1_profile(alpha, lambda, j, x); }, decay);
      break;
    case CaseId::kEx5_2:
      c.exact_1d = [=](double x, double t) {
        return std::exp(-t + lambda * x) * std::pow(1.0 - x, j);
      };
      c.source_1d = Source1D::separable(
          [=](double x) { return ex5_2_profile(alpha, lambda, j, x); }, decay);
      break;
    case CaseId::kEx5_3:
      c.horizon = 1.0;
      c.exact_2d = [=](double x, double y, double t) {
        return std::exp(-t - lambda * x - lambda * y) * std::pow(x, 4) *
               (1.0 - x) * std::pow(y, 4) * (1.0 - y);
      };
      c.source_2d = Source2D::separable(
          [=](double x, double y) {
            return ex5_3_profile(alpha, beta, lambda, x, y);
          },
          decay);
      break;
    case CaseId::kEx5_4:
      c.horizon = 1.0;
      c.exact_1d = [=](double x, double t) {
        return std::exp(-t - lambda * x) * std::pow(x, 4) *
               std::pow(1.0 - x, 4);
      };
      c.source_1d = Source1D::separable(
          [=](double x) { return example_5_4_source(alpha, lambda, x, 0.0); },
          decay);
      break;
  }
  return c;
}

ProblemSpec1D ManufacturedCase::problem_1d(double h, double tau) const {
  if (two_dimensional()) throw DomainError("ex5_3 is two-dimensional");
  const auto grid = Grid1D::with_spacing(kDomainA, kDomainB, h);
  const auto time = TimeGrid::with_fixed_step(horizon, tau);
  const TemperedParams params(parameters.alpha, parameters.lambda);
  const auto exact = exact_1d;
  ProblemSide side = ProblemSide::kLeft;
  if (id == CaseId::kEx5_2) side = ProblemSide::kRight;
  if (id == CaseId::kEx5_4) side = ProblemSide::kTwoSided;
  return ProblemSpec1D{grid,
                       time,
                       params,
                       side,
                       [exact](double x) { return exact(x, 0.0); },
                       [exact](double t) { return exact(kDomainA, t); },
                       [exact](double t) { return exact(kDomainB, t); },
                       source_1d};
}

ProblemSpec2D ManufacturedCase::problem_2d(double h, double tau) const {
  if (!two_dimensional()) throw DomainError("only ex5_3 is two-dimensional");
  const auto grid = Grid1D::with_spacing(kDomainA, kDomainB, h);
  const auto exact = exact_2d;
  return ProblemSpec2D{grid,
                       grid,
                       TimeGrid::with_fixed_step(horizon, tau),
                       TemperedParams(parameters.alpha, parameters.lambda),
                       TemperedParams(parameters.beta, parameters.lambda),
                       [exact](double x, double y) { return exact(x, y, 0.0); },
                       source_2d};
}

double manufactured_residual(const ManufacturedCase& c, int samples,
                             unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> space(0.1, 0.9);
  std::uniform_real_distribution<double> time(0.1 * c.horizon, 0.9 * c.horizon);
  constexpr double kTol = 1e-9;
  const double dt = 1e-3;
  const TemperedParams px(c.parameters.alpha, c.parameters.lambda);

  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double x = space(rng);
    const double t = time(rng);
    double residual = 0.0;
    if (c.two_dimensional()) {
      const double y = space(rng);
      const TemperedParams py(c.parameters.beta, c.parameters.lambda);
      const double ut = central_difference(
          [&](double tt) { return c.exact_2d(x, y, tt); }, t, 1, dt);
      const double dx = quadrature_oracle(
          Side::kLeft, px, kDomainA,
          [&](double xx) { return c.exact_2d(xx, y, t); }, x, kTol);
      const double dy = quadrature_oracle(
          Side::kLeft, py, kDomainA,
          [&](double yy) { return c.exact_2d(x, yy, t); }, y, kTol);
      residual = ut - dx - dy - c.source_2d(x, y, t);
    } else {
      ScalarFunction u = [&](double xx) { return c.exact_1d(xx, t); };
      const double ut = central_difference(
          [&](double tt) { return c.exact_1d(x, tt); }, t, 1, dt);
      double d = 0.0;
      if (c.id != CaseId::kEx5_2) {
        d += quadrature_oracle(Side::kLeft, px, kDomainA, u, x, kTol);
      }
      if (c.id != CaseId::kEx5_1) {
        d += quadrature_oracle(Side::kRight, px, kDomainB, u, x, kTol);
      }
      residual = ut - d - c.source_1d(x, t);
    }
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

double error_norm(const Solution1D& numerical,
                  const std::function<double(double)>& exact_at_final) {
  const auto& g = numerical.grid;
  if (numerical.final_values.size() != g.cells() + 1) {
    return std::numeric_limits<double>::infinity();
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < g.cells(); ++i) {
    const double v = numerical.final_values[i];
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    const double d = exact_at_final(g.x(i)) - v;
    acc += d * d;
  }
  return std::sqrt(g.h() * acc);
}

double error_norm(const Solution2D& numerical,
                  const std::function<double(double, double)>& exact_at_final) {
  const auto& gx = numerical.grid_x;
  const auto& gy = numerical.grid_y;
  const auto& u = numerical.interior;
  if (u.rows() != static_cast<Eigen::Index>(gx.interior()) ||
      u.cols() != static_cast<Eigen::Index>(gy.interior()) || !u.allFinite()) {
    return std::numeric_limits<double>::infinity();
  }
  double acc = 0.0;
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      const double d = exact_at_final(gx.x(static_cast<std::size_t>(i) + 1),
                                      gy.x(static_cast<std::size_t>(k) + 1)) -
                       u(i, k);
      acc += d * d;
    }
  }
  return std::sqrt(gx.h() * gy.h() * acc);
}

double tau_for(TauCoupling coupling, double h, double fixed_tau) {
  switch (coupling) {
    case TauCoupling::kCubic:
      return h * h * h;
    case TauCoupling::kThreeHalves:
      return std::pow(h, 1.5);
    case TauCoupling::kFixed:
      if (!(fixed_tau > 0.0)) throw DomainError("fixed coupling needs tau > 0");
      return fixed_tau;
  }
  throw DomainError("unknown tau coupling");
}

double observed_rate(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

ConvergenceReport run_convergence_study(const ManufacturedCase& c,
                                        const std::vector<double>& h_levels,
                                        TauCoupling coupling,
                                        double fixed_tau) {
  if (h_levels.size() < 2) {
    throw DomainError("a convergence study needs at least two levels");
  }
  ConvergenceReport report{c.id, c.parameters, coupling,
                           std::vector<ConvergenceRow>(h_levels.size())};
  const auto levels = static_cast<std::ptrdiff_t>(h_levels.size());

  // Levels are independent runs; finest (most expensive) levels go first.
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t r = levels - 1; r >= 0; --r) {
    auto& row = report.rows[static_cast<std::size_t>(r)];
    const double h = h_levels[static_cast<std::size_t>(r)];
    row.h = h;
    const auto start = std::chrono::steady_clock::now();
    try {
      const double tau_target = tau_for(coupling, h, fixed_tau);
      if (c.two_dimensional()) {
        const auto spec = c.problem_2d(h, tau_target);
        row.tau = spec.time.tau();
        const auto sol = solve_adi(spec);
        const double t_end = spec.time.horizon();
        row.error = error_norm(sol, [&](double x, double y) {
          return c.exact_2d(x, y, t_end);
        });
        row.status = describe_warnings(sol.warnings);
      } else {
        const auto spec = c.problem_1d(h, tau_target);
        row.tau = spec.time.tau();
        const auto sol = solve(spec);
        const double t_end = spec.time.horizon();
        row.error = error_norm(sol, [&](double x) { return c.exact_1d(x, t_end); });
        row.status = describe_warnings(sol.warnings);
      }
    } catch (const BlowupError& e) {
      row.error = std::numeric_limits<double>::infinity();
      row.status = e.what();
    } catch (const std::exception& e) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.status = std::string("error: ") + e.what();
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  }

  for (std::size_t r = 1; r < report.rows.size(); ++r) {
    report.rows[r].rate =
        observed_rate(report.rows[r - 1].error, report.rows[r].error);
  }
  return report;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports,
               bool include_timing) {
  os << "case,alpha,beta,lambda,h,tau,error,rate,wall_ms\n";
  for (const auto& rep : reports) {
    const bool has_beta = rep.id == CaseId::kEx5_3;
    for (const auto& row : rep.rows) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", include_timing ? row.wall_ms : 0.0);
      os << to_string(rep.id) << ',' << format_value(rep.parameters.alpha)
         << ',' << (has_beta ? format_value(rep.parameters.beta) : "") << ','
         << format_value(rep.parameters.lambda) << ',' << format_value(row.h)
         << ',' << format_value(row.tau) << ',' << format_value(row.error)
         << ',' << (row.rate ? format_value(*row.rate) : "") << ',' << ms
         << '\n';
    }
  }
}

void write_table(std::ostream& os, const ConvergenceReport& report) {
  const auto& p = report.parameters;
  char line[160];
  os << to_string(report.id) << "  alpha=" << p.alpha;
  if (report.id == CaseId::kEx5_3) os << " beta=" << p.beta;
  os << " lambda=" << p.lambda;
  if (report.id == CaseId::kEx5_1 || report.id == CaseId::kEx5_2) {
    os << " j=" << p.j;
  }
  os << '\n';
  std::snprintf(line, sizeof line, "%-10s %-12s %-12s %-8s\n", "h", "tau",
                "e(tau,h)", "rate");
  os << line;
  for (const auto& row : report.rows) {
    const std::string err =
        std::isfinite(row.error) ? [&] {
          char b[32];
          std::snprintf(b, sizeof b, "%.4e", row.error);
          return std::string(b);
        }()
                                 : format_value(row.error);
    std::string rate;
    if (row.rate) {
      if (std::isfinite(*row.rate)) {
        char b[32];
        std::snprintf(b, sizeof b, "%.4f", *row.rate);
        rate = b;
      } else {
        rate = format_value(*row.rate);
      }
    }
    std::snprintf(line, sizeof line, "%-10g %-12.4e %-12s %-8s\n", row.h,
                  row.tau, err.c_str(), rate.c_str());
    os << line;
  }
}

}  // namespace tfde
