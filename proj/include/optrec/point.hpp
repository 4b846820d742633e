#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

namespace optrec {

// Point in R^k, k <= 4: up to three space coordinates, optionally followed
// by a trailing time coordinate (space-time domains).
struct Point {
  std::array<double, 4> coord{};
  int dim = 0;

  Point() = default;
  Point(std::initializer_list<double> xs) {
    if (xs.size() > 4) throw std::invalid_argument("Point: at most 4 coordinates");
    for (double v : xs) coord[static_cast<std::size_t>(dim++)] = v;
  }

  double operator[](int i) const { return coord[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return coord[static_cast<std::size_t>(i)]; }

  bool operator==(const Point& o) const {
    if (dim != o.dim) return false;
    for (int i = 0; i < dim; ++i)
      if (coord[static_cast<std::size_t>(i)] != o.coord[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

inline Point pt(double x) { return Point{x}; }
inline Point pt(double x, double y) { return Point{x, y}; }
inline Point pt(double x, double y, double z) { return Point{x, y, z}; }

inline double euclidean(const Point& a, const Point& b) {
  if (a.dim != b.dim) throw std::domain_error("euclidean: point dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

// (x_1..x_k) -> (x_1..x_k, t)
inline Point with_time(const Point& space, double t) {
  if (space.dim >= 4) throw std::invalid_argument("with_time: point already has 4 coordinates");
  Point p = space;
  p.coord[static_cast<std::size_t>(p.dim++)] = t;
  return p;
}

// Drop the trailing coordinate.
inline Point space_part(const Point& spacetime) {
  if (spacetime.dim < 2) throw std::invalid_argument("space_part: need at least 2 coordinates");
  Point p = spacetime;
  --p.dim;
  return p;
}

}  // namespace optrec
