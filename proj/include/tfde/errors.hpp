#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfde {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature exhausted its refinement budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation at a point where the closed form is singular.
class SingularEvaluation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// hplus_split requested outside the regime where w_3 < 0.
class RegimeMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Dense factorization of a system matrix failed.
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time stepper produced non-finite or runaway values.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_(step) {}

  /// Index n of the first offending step U^n.
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace tfde
