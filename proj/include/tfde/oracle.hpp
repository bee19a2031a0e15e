#pragma once

#include <functional>

#include "tfde/tempered_calculus.hpp"

namespace tfde {

using ScalarFunction = std::function<double(double)>;

// Reference evaluators for tempered fractional operators. None of these share
// code with the grid operators; tests use them as independent oracles.

/// Closed-form power rule for the tempered RL derivative without the
/// normalization terms:
///   left:  D^{(order,lambda)}[e^{-lambda x} (x - a)^j] =
///            Gamma(1+j)/Gamma(1+j-order) e^{-lambda x} (x - a)^{j-order}
///   right: D^{(order,lambda)}[e^{ lambda x} (b - x)^j] =
///            Gamma(1+j)/Gamma(1+j-order) e^{ lambda x} (b - x)^{j-order}
/// Throws SingularEvaluation at x == endpoint when j < order.
double exact_power_derivative(Side side, double order, double lambda,
                              double endpoint, int j, double x);

double exact_power_derivative(Side side, const TemperedParams& params,
                              double endpoint, int j, double x);

/// The monomial family e^{-lambda x}(x-a)^j (left) / e^{lambda x}(b-x)^j
/// (right) that the power rule applies to.
double power_family(Side side, double lambda, double endpoint, int j,
                    double x);

/// Power rule including the -lambda^alpha u -/+ alpha lambda^{alpha-1} u'
/// terms, i.e. the normalized tempered derivative of the power family.
double exact_normalized_power_derivative(Side side,
                                         const TemperedParams& params,
                                         double endpoint, int j, double x);

/// Tempered fractional integral of order p > 0: the r^{p-1} u(x) part in
/// closed form, the remainder by tanh-sinh quadrature.
double tempered_integral(Side side, double order, double lambda,
                         double endpoint, const ScalarFunction& u, double x,
                         double tol = 1e-12);

/// Tempered RL derivative D^{(order,lambda)} (no normalization terms) of any
/// positive order: the m-th derivative, m = floor(order) + 1, of the tempered
/// integral of order m - order, taken by Richardson-extrapolated central
/// differences.
double tempered_derivative(Side side, double order, double lambda,
                           double endpoint, const ScalarFunction& u, double x,
                           double tol = 1e-9);

/// Normalized tempered RL derivative D^{alpha,lambda} u(x), the quantity the
/// diffusion equations are written in.
double quadrature_oracle(Side side, const TemperedParams& params,
                         double endpoint, const ScalarFunction& u, double x,
                         double tol = 1e-9);

/// Richardson-extrapolated central difference of order m in {1, 2, 3} with
/// base step delta.
double central_difference(const ScalarFunction& f, double x, int m,
                          double delta);

/// 1 / Gamma(z), zero at the poles.
double reciprocal_gamma(double z);

}  // namespace tfde
