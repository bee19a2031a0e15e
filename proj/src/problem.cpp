#include "tfde/problem.hpp"

#include <utility>

namespace tfde {

Source1D Source1D::zero() { return Source1D{}; }

Source1D Source1D::general(Field f) {
  Source1D s;
  s.field_ = std::move(f);
  return s;
}

Source1D Source1D::separable(Profile spatial, Profile temporal) {
  Source1D s;
  s.spatial_ = std::move(spatial);
  s.temporal_ = std::move(temporal);
  return s;
}

double Source1D::operator()(double x, double t) const {
  if (spatial_) return temporal_(t) * spatial_(x);
  if (field_) return field_(x, t);
  return 0.0;
}

Source2D Source2D::zero() { return Source2D{}; }

Source2D Source2D::general(Field f) {
  Source2D s;
  s.field_ = std::move(f);
  return s;
}

Source2D Source2D::separable(Profile spatial, Temporal temporal) {
  Source2D s;
  s.spatial_ = std::move(spatial);
  s.temporal_ = std::move(temporal);
  return s;
}

double Source2D::operator()(double x, double y, double t) const {
  if (spatial_) return temporal_(t) * spatial_(x, y);
  if (field_) return field_(x, y, t);
  return 0.0;
}

}  // namespace tfde
