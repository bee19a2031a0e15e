#pragma once

#include <cstddef>
#include <vector>

namespace tfde {

enum class Side { kLeft, kRight };

/// Order, tempering rate and diffusivity of a tempered fractional operator.
///
/// The regular constructor enforces 1 < alpha < 2. The closed forms used by
/// the weight generator stay valid at alpha = 1 and alpha = 2; those values
/// are reachable only through `boundary_for_testing`.
class TemperedParams {
 public:
  TemperedParams(double alpha, double lambda, double diffusivity = 1.0);

  static TemperedParams boundary_for_testing(double alpha, double lambda,
                                             double diffusivity = 1.0);

  double alpha() const noexcept { return alpha_; }
  double lambda() const noexcept { return lambda_; }
  double diffusivity() const noexcept { return diffusivity_; }

  /// True when constructed through the regular (production) path.
  bool production() const noexcept { return production_; }

 private:
  struct Unchecked {};
  TemperedParams(Unchecked, double alpha, double lambda, double diffusivity);

  double alpha_;
  double lambda_;
  double diffusivity_;
  bool production_ = true;
};

/// Grunwald-Letnikov coefficients g_k of the power series of (1 - z)^alpha.
struct GrunwaldWeights {
  double alpha;
  std::vector<double> values;
};

/// Shift weights (mu_{-1}, mu_0, mu_1) of the quasi-compact combination.
struct QuasiCompactCoefficients {
  double mu_minus;
  double mu_zero;
  double mu_plus;
};

/// Tempered quasi-compact weights w_0..w_n for one (alpha, lambda, h).
struct WeightTable {
  TemperedParams params;
  double h;
  std::vector<double> values;
  GrunwaldWeights grunwald;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t k) const { return values[k]; }
};

/// First three power-series coefficients of ((1 - e^{-z}) / z)^alpha e^{pz}.
struct ExpansionCoefficients {
  int p;
  double a0;
  double a1;
  double a2;
};

/// g_0..g_n by the multiplicative recurrence g_k = (k - 1 - alpha)/k g_{k-1}.
/// Requires 0 < alpha <= 2.
GrunwaldWeights grunwald_weights(double alpha, std::ptrdiff_t n);

/// Requires 1 <= alpha <= 2.
QuasiCompactCoefficients quasi_compact_coefficients(double alpha);

/// w_0..w_n. Requires h > 0 and n >= 2.
WeightTable tempered_weights(const TemperedParams& params, double h,
                             std::ptrdiff_t n);

ExpansionCoefficients expansion_coefficients(double alpha, int p);

/// Closed forms of w_2, w_3 and of the full weight sum.
double closed_form_w2(double alpha, double lambda_h);
double closed_form_w3(double alpha, double lambda_h);
double closed_form_weight_sum(double alpha, double lambda_h);

}  // namespace tfde
