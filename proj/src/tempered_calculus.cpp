#include "tfde/tempered_calculus.hpp"

#include <cmath>
#include <string>

#include "tfde/errors.hpp"

namespace tfde {

namespace {

void require_nonnegative(double lambda, double diffusivity) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("tempering rate lambda must be finite and >= 0, got " +
                      std::to_string(lambda));
  }
  if (!(diffusivity >= 0.0) || !std::isfinite(diffusivity)) {
    throw DomainError("diffusivity K must be finite and >= 0, got " +
                      std::to_string(diffusivity));
  }
}

}  // namespace

TemperedParams::TemperedParams(double alpha, double lambda, double diffusivity)
    : alpha_(alpha), lambda_(lambda), diffusivity_(diffusivity) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    throw DomainError("order alpha must lie in (1, 2), got " +
                      std::to_string(alpha));
  }
  require_nonnegative(lambda, diffusivity);
}

TemperedParams::TemperedParams(Unchecked, double alpha, double lambda,
                               double diffusivity)
    : alpha_(alpha), lambda_(lambda), diffusivity_(diffusivity),
      production_(false) {}

TemperedParams TemperedParams::boundary_for_testing(double alpha,
                                                    double lambda,
                                                    double diffusivity) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) {
    throw DomainError("order alpha must lie in [1, 2], got " +
                      std::to_string(alpha));
  }
  require_nonnegative(lambda, diffusivity);
  return TemperedParams(Unchecked{}, alpha, lambda, diffusivity);
}

GrunwaldWeights grunwald_weights(double alpha, std::ptrdiff_t n) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("Grunwald weights need 0 < alpha <= 2, got " +
                      std::to_string(alpha));
  }
  if (n < 0) throw DomainError("Grunwald weight count must be >= 0");

  GrunwaldWeights g{alpha, std::vector<double>(static_cast<std::size_t>(n) + 1)};
  g.values[0] = 1.0;
  for (std::ptrdiff_t k = 1; k <= n; ++k) {
    const auto kk = static_cast<double>(k);
    g.values[k] = (kk - 1.0 - alpha) / kk * g.values[k - 1];
  }
  return g;
}

QuasiCompactCoefficients quasi_compact_coefficients(double alpha) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) {
    throw DomainError("quasi-compact coefficients need 1 <= alpha <= 2, got " +
                      std::to_string(alpha));
  }
  const double a2 = alpha * alpha;
  return {(4.0 - 7.0 * alpha + 3.0 * a2) / 24.0,
          (8.0 + alpha - 3.0 * a2) / 12.0,
          (4.0 + 5.0 * alpha + 3.0 * a2) / 24.0};
}

WeightTable tempered_weights(const TemperedParams& params, double h,
                             std::ptrdiff_t n) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError("grid spacing h must be positive, got " +
                      std::to_string(h));
  }
  if (n < 2) throw DomainError("weight table needs n >= 2");

  const double alpha = params.alpha();
  const long double a = alpha;
  const long double lh = static_cast<long double>(params.lambda()) * h;
  const long double mu_minus = (4.0L - 7.0L * a + 3.0L * a * a) / 24.0L;
  const long double mu_zero = (8.0L + a - 3.0L * a * a) / 12.0L;
  const long double mu_plus = (4.0L + 5.0L * a + 3.0L * a * a) / 24.0L;
  auto g = grunwald_weights(alpha, n);

  // Extended precision keeps w_3 accurate near the root of its quartic.
  std::vector<long double> gl(static_cast<std::size_t>(n) + 1);
  gl[0] = 1.0L;
  for (std::ptrdiff_t k = 1; k <= n; ++k) {
    const auto kk = static_cast<long double>(k);
    gl[k] = (kk - 1.0L - a) / kk * gl[k - 1];
  }

  std::vector<double> w(static_cast<std::size_t>(n) + 1);
  w[0] = static_cast<double>(mu_plus * std::exp(lh));
  w[1] = static_cast<double>(mu_plus * gl[1] + mu_zero);
  for (std::ptrdiff_t k = 2; k <= n; ++k) {
    w[k] = static_cast<double>(
        (mu_plus * gl[k] + mu_zero * gl[k - 1] + mu_minus * gl[k - 2]) *
        std::exp((1.0L - static_cast<long double>(k)) * lh));
  }
  return WeightTable{params, h, std::move(w), std::move(g)};
}

ExpansionCoefficients expansion_coefficients(double alpha, int p) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw DomainError("expansion coefficients need 0 < alpha <= 2");
  }
  const double pd = p;
  return {p, 1.0, pd - alpha / 2.0,
          (alpha + 3.0 * alpha * alpha - 12.0 * alpha * pd + 12.0 * pd * pd) /
              24.0};
}

double closed_form_w2(double alpha, double lambda_h) {
  const double a = alpha;
  return std::exp(-lambda_h) / 48.0 *
         (8.0 - 50.0 * a + a * a + 14.0 * a * a * a + 3.0 * a * a * a * a);
}

double closed_form_w3(double alpha, double lambda_h) {
  const double a = alpha;
  return -std::exp(-2.0 * lambda_h) / 144.0 * a *
         (80.0 - 86.0 * a - 11.0 * a * a + 14.0 * a * a * a +
          3.0 * a * a * a * a);
}

double closed_form_weight_sum(double alpha, double lambda_h) {
  const auto mu = quasi_compact_coefficients(alpha);
  return (mu.mu_plus * std::exp(lambda_h) + mu.mu_zero +
          mu.mu_minus * std::exp(-lambda_h)) *
         std::pow(-std::expm1(-lambda_h), alpha);
}

}  // namespace tfde
