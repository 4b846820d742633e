#pragma once

#include <string>
#include <vector>

#include "optrec/point.hpp"

namespace optrec {

// Quadrature nodes and positive weights; weights sum to the domain measure.
struct QuadratureGrid {
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
  double total_weight() const;
};

enum class DomainKind { Interval, Box, Disk, Circle, SpacetimeBox };

// Compact metric-measure domain M' with distance, boundary distance, and a
// composite midpoint/tensor quadrature rule.
//   interval [a,b]        Lebesgue length
//   box in R^d, d <= 3    Lebesgue, Euclidean metric
//   disk in R^2           Lebesgue area, polar tensor quadrature
//   circle boundary       arc-length (geodesic) metric, surface measure 2*pi*r
//   spacetime box         box in R^d x [t0,t1], time as an extra Euclidean axis
class Domain {
public:
  static Domain interval(double a, double b);
  static Domain box(std::vector<double> lo, std::vector<double> hi);
  static Domain disk(Point center, double radius);
  static Domain circle(Point center, double radius);
  static Domain spacetime_box(std::vector<double> space_lo, std::vector<double> space_hi,
                              double t_begin, double t_end);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }        // ambient coordinate count
  int space_dim() const;                  // dim() minus the time axis, if any
  double measure() const;
  double diameter() const;                // geodesic for the circle

  bool contains(const Point& t, double tol = 1e-9) const;
  double distance(const Point& a, const Point& b) const;
  // rho(t, boundary of M'); +inf for the circle (closed curve, empty boundary).
  double boundary_distance(const Point& t) const;

  QuadratureGrid build_grid(int resolution) const;  // resolution >= 2 per axis

  double lo(int axis) const { return lo_[static_cast<std::size_t>(axis)]; }
  double hi(int axis) const { return hi_[static_cast<std::size_t>(axis)]; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }
  std::string coord_name(int axis) const;

private:
  Domain() = default;
  DomainKind kind_ = DomainKind::Interval;
  int dim_ = 1;
  bool has_time_axis_ = false;
  std::vector<double> lo_, hi_;  // interval / box / spacetime box
  Point center_{};
  double radius_ = 0.0;
};

}  // namespace optrec
