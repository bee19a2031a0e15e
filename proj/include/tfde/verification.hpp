#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tfde/solver_1d.hpp"
#include "tfde/solver_2d.hpp"

namespace tfde {

enum class CaseId { kEx5_1, kEx5_2, kEx5_3, kEx5_4 };

std::string to_string(CaseId id);
/// Parses "ex5_1".."ex5_4"; std::nullopt for anything else.
std::optional<CaseId> parse_case_id(const std::string& text);

/// How tau follows h across refinement levels.
enum class TauCoupling { kCubic, kThreeHalves, kFixed };

struct CaseParameters {
  double alpha = 1.5;
  double beta = 1.5;    ///< y-direction order (ex5_3 only)
  double lambda = 1.0;  ///< also lambda_2 for ex5_3
  int j = 5;            ///< monomial degree (ex5_1, ex5_2)
};

/// Manufactured solution with its source and problem builders.
///
/// ex5_1: u = e^{-t - lambda x} x^j, left derivative on (0,1), T = 0.1.
/// ex5_2: u = e^{-t + lambda x} (1-x)^j, right derivative on (0,1), T = 0.1.
/// ex5_3: u = e^{-t - lambda(x+y)} x^4 (1-x) y^4 (1-y), 2D ADI, T = 1.
/// ex5_4: u = e^{-t - lambda x} x^4 (1-x)^4, two-sided splitting, T = 1.
struct ManufacturedCase {
  CaseId id;
  CaseParameters parameters;
  double horizon;
  std::function<double(double, double)> exact_1d;          ///< u(x, t)
  std::function<double(double, double, double)> exact_2d;  ///< u(x, y, t)
  Source1D source_1d;
  Source2D source_2d;

  bool two_dimensional() const { return id == CaseId::kEx5_3; }
  ProblemSpec1D problem_1d(double h, double tau) const;
  ProblemSpec2D problem_2d(double h, double tau) const;
};

ManufacturedCase make_case(CaseId id, const CaseParameters& parameters);

/// Source of the two-sided example: closed-form left part plus the right
/// part as the series truncated after n_terms + 1 terms.
double example_5_4_source(double alpha, double lambda, double x, double t,
                          int n_terms = 50);

/// Largest |PDE residual| of a case over `samples` random interior
/// space-time points, with the derivatives taken by the quadrature oracle.
double manufactured_residual(const ManufacturedCase& c, int samples,
                             unsigned seed = 7);

/// sqrt(h sum_{interior} (u(x_i, T) - U_i^N)^2); +inf for non-finite input.
double error_norm(const Solution1D& numerical,
                  const std::function<double(double)>& exact_at_final);
/// sqrt(h_x h_y sum (u - U)^2) over interior nodes; +inf for non-finite input.
double error_norm(const Solution2D& numerical,
                  const std::function<double(double, double)>& exact_at_final);

struct ConvergenceRow {
  double h = 0.0;
  double tau = 0.0;
  double error = 0.0;
  std::optional<double> rate;  ///< absent on the first row
  double wall_ms = 0.0;
  std::string status;          ///< "ok", "blowup: ...", or an error message
};

struct ConvergenceReport {
  CaseId id;
  CaseParameters parameters;
  TauCoupling coupling;
  std::vector<ConvergenceRow> rows;
};

double tau_for(TauCoupling coupling, double h, double fixed_tau);

/// One solve per h level (run concurrently), errors and log2 rates.
/// Failed levels carry an infinite error and their message; the study goes on.
ConvergenceReport run_convergence_study(const ManufacturedCase& c,
                                        const std::vector<double>& h_levels,
                                        TauCoupling coupling,
                                        double fixed_tau = 0.0);

/// log2(coarse / fine).
double observed_rate(double coarse_error, double fine_error);

/// "Inf", "-Inf", "NaN" or %.16e.
std::string format_value(double v);

/// CSV with header case,alpha,beta,lambda,h,tau,error,rate,wall_ms.
/// With include_timing false, wall_ms is written as 0 so output is
/// byte-identical across runs.
void write_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports,
               bool include_timing = true);

/// Human-readable h / error / rate table.
void write_table(std::ostream& os, const ConvergenceReport& report);

}  // namespace tfde
