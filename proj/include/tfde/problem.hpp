#pragma once

#include <functional>

namespace tfde {

/// Source term f(x, t). Sources of the form temporal(t) * spatial(x) can be
/// declared separable so solvers sample the spatial profile only once.
class Source1D {
 public:
  using Field = std::function<double(double, double)>;
  using Profile = std::function<double(double)>;

  Source1D() = default;

  static Source1D zero();
  static Source1D general(Field f);
  static Source1D separable(Profile spatial, Profile temporal);

  double operator()(double x, double t) const;
  bool is_separable() const noexcept { return static_cast<bool>(spatial_); }
  bool is_zero() const noexcept { return !field_ && !spatial_; }
  double spatial(double x) const { return spatial_(x); }
  double temporal(double t) const { return temporal_(t); }

 private:
  Field field_;
  Profile spatial_;
  Profile temporal_;
};

/// Source term f(x, y, t) with the same optional separable form.
class Source2D {
 public:
  using Field = std::function<double(double, double, double)>;
  using Profile = std::function<double(double, double)>;
  using Temporal = std::function<double(double)>;

  Source2D() = default;

  static Source2D zero();
  static Source2D general(Field f);
  static Source2D separable(Profile spatial, Temporal temporal);

  double operator()(double x, double y, double t) const;
  bool is_separable() const noexcept { return static_cast<bool>(spatial_); }
  bool is_zero() const noexcept { return !field_ && !spatial_; }
  double spatial(double x, double y) const { return spatial_(x, y); }
  double temporal(double t) const { return temporal_(t); }

 private:
  Field field_;
  Profile spatial_;
  Temporal temporal_;
};

}  // namespace tfde
