#include "tfde/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "tfde/errors.hpp"

namespace tfde {

namespace {

constexpr std::size_t kMaxRefinementLevels = 15;
constexpr double kQuadratureRelTol = 1e-14;
// Floor on the accepted error estimate, relative to the integral.
constexpr double kAcceptedRelError = 1e-12;

double sign_of(Side side) { return side == Side::kLeft ? 1.0 : -1.0; }

double distance_to_endpoint(Side side, double endpoint, double x) {
  return side == Side::kLeft ? x - endpoint : endpoint - x;
}

double stencil_a(const ScalarFunction& f, double x, int m, double d) {
  switch (m) {
    case 1:
      return (-f(x + 2 * d) + 8 * f(x + d) - 8 * f(x - d) + f(x - 2 * d)) /
             (12 * d);
    case 2:
      return (-f(x + 2 * d) + 16 * f(x + d) - 30 * f(x) + 16 * f(x - d) -
              f(x - 2 * d)) /
             (12 * d * d);
    case 3:
      return (-f(x + 3 * d) + 8 * f(x + 2 * d) - 13 * f(x + d) +
              13 * f(x - d) - 8 * f(x - 2 * d) + f(x - 3 * d)) /
             (8 * d * d * d);
    default:
      throw DomainError("central_difference supports orders 1..3");
  }
}

}  // namespace

double reciprocal_gamma(double z) {
  if (z <= 0.0 && z == std::floor(z)) return 0.0;
  return 1.0 / std::tgamma(z);
}

double central_difference(const ScalarFunction& f, double x, int m,
                          double delta) {
  // All three stencils are fourth order, so one Richardson step gives sixth.
  const double coarse = stencil_a(f, x, m, delta);
  const double fine = stencil_a(f, x, m, delta / 2);
  return (16.0 * fine - coarse) / 15.0;
}

double power_family(Side side, double lambda, double endpoint, int j,
                    double x) {
  const double r = distance_to_endpoint(side, endpoint, x);
  return std::exp(-sign_of(side) * lambda * x) * std::pow(r, j);
}

double exact_power_derivative(Side side, double order, double lambda,
                              double endpoint, int j, double x) {
  if (j < 0) throw DomainError("power rule needs integer j >= 0");
  const double r = distance_to_endpoint(side, endpoint, x);
  if (r < 0.0) throw DomainError("power rule evaluated outside the domain");
  if (r == 0.0) {
    if (static_cast<double>(j) < order) {
      throw SingularEvaluation("power rule is singular at the endpoint for j < "
                               "order");
    }
    if (static_cast<double>(j) > order) return 0.0;
  }
  const double ratio = std::tgamma(1.0 + j) * reciprocal_gamma(1.0 + j - order);
  return ratio * std::exp(-sign_of(side) * lambda * x) *
         std::pow(r, static_cast<double>(j) - order);
}

double exact_power_derivative(Side side, const TemperedParams& params,
                              double endpoint, int j, double x) {
  return exact_power_derivative(side, params.alpha(), params.lambda(),
                                endpoint, j, x);
}

double exact_normalized_power_derivative(Side side,
                                         const TemperedParams& params,
                                         double endpoint, int j, double x) {
  const double alpha = params.alpha();
  const double lambda = params.lambda();
  const double s = sign_of(side);
  const double r = distance_to_endpoint(side, endpoint, x);
  const double e = std::exp(-s * lambda * x);
  const double u = e * std::pow(r, j);
  // d/dx of e^{-s lambda x} r^j, with dr/dx = s.
  const double du =
      e * (-s * lambda * std::pow(r, j) +
           (j > 0 ? s * j * std::pow(r, j - 1) : 0.0));
  const double lam_a = lambda == 0.0 ? 0.0 : std::pow(lambda, alpha);
  const double lam_a1 = lambda == 0.0 ? 0.0 : std::pow(lambda, alpha - 1.0);
  return exact_power_derivative(side, params, endpoint, j, x) - lam_a * u -
         s * alpha * lam_a1 * du;
}

double tempered_integral(Side side, double order, double lambda,
                         double endpoint, const ScalarFunction& u, double x,
                         double tol) {
  if (!(order > 0.0)) throw DomainError("integral order must be positive");
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  const double len = distance_to_endpoint(side, endpoint, x);
  if (len < 0.0) throw DomainError("tempered integral evaluated outside domain");
  if (len == 0.0) return 0.0;

  const double s = sign_of(side);
  // Peel off g(0) r^{p-1} analytically; the remainder vanishes like r^p.
  auto g = [&](double r) { return std::exp(-lambda * r) * u(x - s * r); };
  const double g0 = u(x);
  boost::math::quadrature::tanh_sinh<double> quad(kMaxRefinementLevels);
  auto integrand = [&](double r) {
    return std::pow(r, order - 1.0) * (g(r) - g0);
  };
  double error = 0.0;
  double value = quad.integrate(integrand, 0.0, len, kQuadratureRelTol, &error) +
                 g0 * std::pow(len, order) / order;
  const double gamma = std::tgamma(order);
  value /= gamma;
  error /= gamma;
  if (!std::isfinite(value) ||
      error > std::max(tol, kAcceptedRelError * std::abs(value))) {
    std::ostringstream os;
    os << "tempered integral did not reach tolerance " << tol << " (estimate "
       << error << ", value " << value << ")";
    throw ConvergenceError(os.str());
  }
  return value;
}

double tempered_derivative(Side side, double order, double lambda,
                           double endpoint, const ScalarFunction& u, double x,
                           double tol) {
  if (!(order > 0.0)) throw DomainError("derivative order must be positive");
  if (!(tol > 0.0)) throw DomainError("oracle tolerance must be positive");
  const int m = static_cast<int>(std::floor(order)) + 1;
  if (m > 3) throw DomainError("tempered_derivative supports order < 3");
  const double dist = distance_to_endpoint(side, endpoint, x);
  if (!(dist > 0.0)) {
    throw SingularEvaluation("oracle needs x strictly inside the domain");
  }
  const double s = sign_of(side);
  const double int_order = static_cast<double>(m) - order;
  const bool integer_order = int_order == 1.0;

  // Stencil half-width is 3 delta for m = 3 and 2 delta otherwise.
  const double reach = m == 3 ? 3.0 : 2.0;
  const double delta = std::min(std::pow(tol, 0.25), dist / (reach + 0.5));
  const double quad_tol = std::max(tol * std::pow(delta, m) * 1e-3, 1e-300);

  ScalarFunction shifted = [&](double y) {
    const double inner =
        integer_order ? u(y)
                      : tempered_integral(side, int_order, lambda, endpoint,
                                          u, y, quad_tol);
    return std::exp(s * lambda * y) * inner;
  };
  // For an integer order the m-th derivative of e^{s lambda y} u(y) is wanted
  // with m = order, not order + 1.
  const int diff_order = integer_order ? m - 1 : m;
  const double deriv = central_difference(shifted, x, diff_order, delta);
  const double orient = (diff_order % 2 == 0) ? 1.0 : s;
  return orient * std::exp(-s * lambda * x) * deriv;
}

double quadrature_oracle(Side side, const TemperedParams& params,
                         double endpoint, const ScalarFunction& u, double x,
                         double tol) {
  const double alpha = params.alpha();
  const double lambda = params.lambda();
  const double core =
      tempered_derivative(side, alpha, lambda, endpoint, u, x, tol);
  if (lambda == 0.0) return core;

  const double dist = distance_to_endpoint(side, endpoint, x);
  const double delta = std::min(std::pow(tol, 0.25), dist / 2.5);
  const double du = central_difference(u, x, 1, delta);
  return core - std::pow(lambda, alpha) * u(x) -
         sign_of(side) * alpha * std::pow(lambda, alpha - 1.0) * du;
}

}  // namespace tfde
