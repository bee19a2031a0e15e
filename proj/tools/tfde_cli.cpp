#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tfde/errors.hpp"
#include "tfde/oracle.hpp"
#include "tfde/spectral_analysis.hpp"
#include "tfde/verification.hpp"

namespace {

using namespace tfde;

constexpr int kExitOk = 0;
constexpr int kExitDeviation = 1;
constexpr int kExitUsage = 2;

constexpr double kResidualTolerance = 1e-6;
constexpr double kRateBand = 0.5;

struct Options {
  std::string case_id = "ex5_1";
  double alpha = 1.5;
  double beta = 1.5;
  double lambda = 1.0;
  int j = 5;
  double h = 0.05;
  std::vector<double> levels{0.1, 0.05, 0.025, 0.0125};
  std::string coupling;
  double tau = 0.0;
  std::string out;
  std::string format = "table";
  std::size_t n = 10;
  std::size_t cells = 0;
  std::string side = "left";
  double x = 0.5;
  bool no_timing = false;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

/// Writes to --out when given, else stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

CaseId require_case(const std::string& text) {
  const auto id = parse_case_id(text);
  if (!id) throw DomainError("unknown case id '" + text + "'");
  return *id;
}

TauCoupling coupling_for(const Options& o, CaseId id) {
  if (o.coupling.empty()) {
    return id == CaseId::kEx5_3 ? TauCoupling::kThreeHalves : TauCoupling::kCubic;
  }
  if (o.coupling == "h3") return TauCoupling::kCubic;
  if (o.coupling == "h32") return TauCoupling::kThreeHalves;
  return TauCoupling::kFixed;
}

int cmd_weights(const Options& o) {
  const TemperedParams params(o.alpha, o.lambda);
  if (o.n < 2) throw DomainError("--n must be at least 2");
  const auto table =
      tempered_weights(params, o.h, static_cast<std::ptrdiff_t>(o.n));
  Output out(o.out);
  auto& os = out.stream();
  double partial = 0.0;
  if (o.format == "csv") {
    os << "k,g,w,partial_sum\n";
  } else {
    os << "alpha=" << o.alpha << " lambda=" << o.lambda << " h=" << o.h
       << "\n";
    char line[128];
    std::snprintf(line, sizeof line, "%-5s %-24s %-24s %-24s\n", "k", "g_k",
                  "w_k", "sum_{i<=k} w_i");
    os << line;
  }
  for (std::size_t k = 0; k < table.size(); ++k) {
    partial += table[k];
    const double g = table.grunwald.values[k];
    if (o.format == "csv") {
      os << k << ',' << format_value(g) << ',' << format_value(table[k]) << ','
         << format_value(partial) << '\n';
    } else {
      char line[128];
      std::snprintf(line, sizeof line, "%-5zu % -24.16e % -24.16e % -24.16e\n",
                    k, g, table[k], partial);
      os << line;
    }
  }
  return kExitOk;
}

bool stable_level(double lambda, double h) { return stability_predicate(lambda, h); }

int cmd_converge(const Options& o) {
  const CaseId id = require_case(o.case_id);
  CaseParameters prm;
  prm.alpha = o.alpha;
  prm.beta = o.beta;
  prm.lambda = o.lambda;
  prm.j = o.j;
  const auto c = make_case(id, prm);
  const auto coupling = coupling_for(o, id);
  if (coupling == TauCoupling::kFixed && !(o.tau > 0.0)) {
    throw DomainError("--coupling fixed needs --tau > 0");
  }
  if (o.levels.size() < 2) throw DomainError("--levels needs at least two values");

  const double residual = manufactured_residual(c, 20);
  if (!(residual <= kResidualTolerance)) {
    std::cerr << "manufactured residual " << residual << " exceeds "
              << kResidualTolerance << "\n";
    return kExitDeviation;
  }

  const auto report = run_convergence_study(c, o.levels, coupling, o.tau);
  Output out(o.out);
  if (o.format == "csv") {
    write_csv(out.stream(), {report}, !o.no_timing);
  } else {
    write_table(out.stream(), report);
  }

  int code = kExitOk;
  for (std::size_t r = 1; r < report.rows.size(); ++r) {
    const auto& prev = report.rows[r - 1];
    const auto& row = report.rows[r];
    if (!stable_level(o.lambda, prev.h) || !stable_level(o.lambda, row.h)) continue;
    if (!row.rate || !(std::abs(*row.rate - 3.0) <= kRateBand)) {
      std::cerr << "rate at h=" << row.h << " is "
                << (row.rate ? format_value(*row.rate) : "missing")
                << ", outside 3 +- " << kRateBand << "\n";
      code = kExitDeviation;
    }
  }
  for (const auto& row : report.rows) {
    if (row.status != "ok") std::cerr << "h=" << row.h << ": " << row.status << "\n";
  }
  return code;
}

int cmd_stability(const Options& o) {
  const TemperedParams params(o.alpha, o.lambda);
  if (!(o.h > 0.0)) throw DomainError("--h must be positive");
  const std::size_t cells =
      o.cells > 0 ? o.cells
                  : static_cast<std::size_t>(std::max(4.0, std::round(1.0 / o.h)));
  const Grid1D grid(0.0, o.h * static_cast<double>(cells), cells);
  const bool stable = stability_predicate(o.lambda, o.h);
  const auto p = check_P_definiteness(params, grid, 1.0);
  const auto b = check_B_bounds(o.lambda, o.h, cells);

  std::string hplus;
  try {
    const auto split = hplus_split(params, grid);
    hplus = split.combined_diagonally_dominant ? "applicable (combined matrix "
                                                 "diagonally dominant)"
                                               : "applicable (combined matrix "
                                                 "NOT diagonally dominant)";
  } catch (const RegimeMismatch&) {
    hplus = "not needed (w_3 >= 0)";
  }

  Output out(o.out);
  auto& os = out.stream();
  if (o.format == "csv") {
    os << "alpha,lambda,h,M,lambda_h,stable,symP_max,symP_min,symP_verdict,"
          "symB_min,symB_max,symB_in_bounds\n";
    os << format_value(o.alpha) << ',' << format_value(o.lambda) << ','
       << format_value(o.h) << ',' << cells << ','
       << format_value(o.lambda * o.h) << ',' << (stable ? "true" : "false")
       << ',' << format_value(p.max_eig) << ',' << format_value(p.min_eig)
       << ',' << to_string(p.verdict) << ','
       << format_value(b.spectrum.min_eig) << ','
       << format_value(b.spectrum.max_eig) << ','
       << (b.above_lower && b.below_upper ? "true" : "false") << '\n';
    return kExitOk;
  }
  os << "alpha = " << o.alpha << ", lambda = " << o.lambda << ", h = " << o.h
     << ", M = " << cells << ", lambda*h = " << o.lambda * o.h << "\n";
  os << "stability predicate : " << (stable ? "STABLE" : "UNSTABLE")
     << " (lambda*h " << (stable ? "<=" : ">") << " 1)\n";
  os << "sym(P) eigenvalues  : max " << fmt("%.6e", p.max_eig) << ", min "
     << fmt("%.6e", p.min_eig) << " -> " << to_string(p.verdict) << "\n";
  os << "sym(B) eigenvalues  : [" << fmt("%.6f", b.spectrum.min_eig) << ", "
     << fmt("%.6f", b.spectrum.max_eig) << "] "
     << (b.above_lower && b.below_upper ? "inside" : "OUTSIDE")
     << " (1/12, 2); closed-form gap " << fmt("%.1e", b.closed_form_gap) << "\n";
  os << "w_3 sign root       : " << fmt("%.12f", w3_sign_root()) << "\n";
  os << "H+ splitting        : " << hplus << "\n";
  return kExitOk;
}

int cmd_solve(const Options& o) {
  const CaseId id = require_case(o.case_id);
  CaseParameters prm;
  prm.alpha = o.alpha;
  prm.beta = o.beta;
  prm.lambda = o.lambda;
  prm.j = o.j;
  const auto c = make_case(id, prm);
  const double tau = o.tau > 0.0 ? o.tau : tau_for(coupling_for(o, id), o.h, 0.0);
  Output out(o.out);
  auto& os = out.stream();
  try {
    if (c.two_dimensional()) {
      const auto spec = c.problem_2d(o.h, tau);
      const auto sol = solve_adi(spec);
      const double t = spec.time.horizon();
      const double e = error_norm(
          sol, [&](double x, double y) { return c.exact_2d(x, y, t); });
      os << "case " << to_string(id) << ", h " << o.h << ", tau "
         << spec.time.tau() << ", steps " << spec.time.steps() << ", t_N " << t
         << ", error " << format_value(e) << "\n";
      for (const auto& w : sol.warnings) os << "warning: " << w << "\n";
      return kExitOk;
    }
    const auto spec = c.problem_1d(o.h, tau);
    const auto sol = solve(spec);
    const double t = spec.time.horizon();
    const double e =
        error_norm(sol, [&](double x) { return c.exact_1d(x, t); });
    if (o.format == "csv") {
      os << "x,numerical,exact\n";
      for (std::size_t i = 0; i <= spec.grid.cells(); ++i) {
        const double x = spec.grid.x(i);
        os << format_value(x) << ',' << format_value(sol.final_values[i]) << ','
           << format_value(c.exact_1d(x, t)) << '\n';
      }
    } else {
      os << "case " << to_string(id) << ", h " << o.h << ", tau "
         << spec.time.tau() << ", steps " << spec.time.steps() << ", t_N " << t
         << ", error " << format_value(e) << "\n";
    }
    for (const auto& w : sol.warnings) std::cerr << "warning: " << w << "\n";
  } catch (const BlowupError& e) {
    std::cerr << e.what() << "\n";
    os << "case " << to_string(id) << ", h " << o.h << ", error Inf ("
       << e.what() << ")\n";
    return kExitDeviation;
  }
  return kExitOk;
}

int cmd_oracle(const Options& o) {
  const TemperedParams params(o.alpha, o.lambda);
  const Side side = o.side == "right" ? Side::kRight : Side::kLeft;
  const double endpoint = side == Side::kLeft ? 0.0 : 1.0;
  if (!(o.x > 0.0 && o.x < 1.0)) throw DomainError("--x must lie in (0, 1)");
  auto u = [&](double y) { return power_family(side, o.lambda, endpoint, o.j, y); };
  const double quad = quadrature_oracle(side, params, endpoint, u, o.x);
  const double exact =
      exact_normalized_power_derivative(side, params, endpoint, o.j, o.x);
  std::cout << "side " << o.side << ", alpha " << o.alpha << ", lambda "
            << o.lambda << ", j " << o.j << ", x " << o.x << "\n"
            << "quadrature  " << format_value(quad) << "\n"
            << "power rule  " << format_value(exact) << "\n"
            << "difference  " << format_value(quad - exact) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-compact schemes for tempered fractional diffusion"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  Options o;

  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", o.alpha, "order in (1, 2)")->capture_default_str();
    cmd->add_option("--lambda", o.lambda, "tempering rate >= 0")->capture_default_str();
  };
  auto add_case = [&](CLI::App* cmd) {
    cmd->add_option("--case", o.case_id, "ex5_1 | ex5_2 | ex5_3 | ex5_4")
        ->capture_default_str();
    cmd->add_option("--beta", o.beta, "y-direction order (ex5_3)")->capture_default_str();
    cmd->add_option("--j", o.j, "monomial degree (ex5_1, ex5_2)")->capture_default_str();
    cmd->add_option("--coupling", o.coupling, "tau coupling (default h3, h32 for ex5_3)")
        ->check(CLI::IsMember({"h3", "h32", "fixed"}));
    cmd->add_option("--tau", o.tau, "time step for --coupling fixed");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--format", o.format, "csv | table")
        ->check(CLI::IsMember({"csv", "table"}))
        ->capture_default_str();
  };

  auto* weights = app.add_subcommand("weights", "print g_k, w_k and partial sums");
  add_params(weights);
  weights->add_option("--h", o.h, "grid spacing")->capture_default_str();
  weights->add_option("--n", o.n, "largest index")->capture_default_str();
  add_output(weights);

  auto* converge = app.add_subcommand("converge", "convergence study of a case");
  add_params(converge);
  add_case(converge);
  converge->add_option("--levels", o.levels, "comma-separated h values")
      ->delimiter(',')
      ->capture_default_str();
  converge->add_flag("--no-timing", o.no_timing, "write wall_ms as 0");
  add_output(converge);

  auto* stability = app.add_subcommand("stability", "spectral stability diagnostics");
  add_params(stability);
  stability->add_option("--h", o.h, "grid spacing")->capture_default_str();
  stability->add_option("--M", o.cells, "cells (default round(1/h))");
  add_output(stability);

  auto* solve_cmd = app.add_subcommand("solve", "single solve of a case");
  add_params(solve_cmd);
  add_case(solve_cmd);
  solve_cmd->add_option("--h", o.h, "grid spacing")->capture_default_str();
  add_output(solve_cmd);

  auto* oracle = app.add_subcommand("oracle", "quadrature oracle vs power rule");
  add_params(oracle);
  oracle->add_option("--side", o.side, "left | right")
      ->check(CLI::IsMember({"left", "right"}))
      ->capture_default_str();
  oracle->add_option("--j", o.j, "monomial degree")->capture_default_str();
  oracle->add_option("--x", o.x, "evaluation point in (0, 1)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*weights) return cmd_weights(o);
    if (*converge) return cmd_converge(o);
    if (*stability) return cmd_stability(o);
    if (*solve_cmd) return cmd_solve(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDeviation;
  }
  return kExitUsage;
}
