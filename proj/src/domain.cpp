#include "optrec/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "optrec/errors.hpp"

namespace optrec {

namespace {
constexpr double kPi = std::numbers::pi;

double wrap_angle_abs(double a) {
  // |a| folded into [0, pi]
  a = std::fmod(std::fabs(a), 2.0 * kPi);
  return a > kPi ? 2.0 * kPi - a : a;
}
}  // namespace

double QuadratureGrid::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

Domain Domain::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("interval: need finite a < b");
  Domain d;
  d.kind_ = DomainKind::Interval;
  d.dim_ = 1;
  d.lo_ = {a};
  d.hi_ = {b};
  return d;
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
  if (lo.empty() || lo.size() != hi.size() || lo.size() > 3)
    throw std::invalid_argument("box: need 1..3 matching bounds");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
      throw std::invalid_argument("box: need finite lo < hi on every axis");
  }
  Domain d;
  d.kind_ = DomainKind::Box;
  d.dim_ = static_cast<int>(lo.size());
  d.lo_ = std::move(lo);
  d.hi_ = std::move(hi);
  return d;
}

Domain Domain::disk(Point center, double radius) {
  if (center.dim != 2) throw std::invalid_argument("disk: center must be 2-dimensional");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("disk: radius must be finite and > 0");
  Domain d;
  d.kind_ = DomainKind::Disk;
  d.dim_ = 2;
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::circle(Point center, double radius) {
  if (center.dim != 2) throw std::invalid_argument("circle: center must be 2-dimensional");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("circle: radius must be finite and > 0");
  Domain d;
  d.kind_ = DomainKind::Circle;
  d.dim_ = 2;
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

Domain Domain::spacetime_box(std::vector<double> space_lo, std::vector<double> space_hi,
                             double t_begin, double t_end) {
  if (space_lo.empty() || space_lo.size() != space_hi.size() || space_lo.size() > 3)
    throw std::invalid_argument("spacetime_box: need 1..3 space axes");
  if (!(t_begin < t_end) || !std::isfinite(t_begin) || !std::isfinite(t_end))
    throw std::invalid_argument("spacetime_box: need finite t_begin < t_end");
  for (std::size_t i = 0; i < space_lo.size(); ++i) {
    if (!(space_lo[i] < space_hi[i]))
      throw std::invalid_argument("spacetime_box: need lo < hi on every space axis");
  }
  Domain d;
  d.kind_ = DomainKind::SpacetimeBox;
  d.dim_ = static_cast<int>(space_lo.size()) + 1;
  d.has_time_axis_ = true;
  d.lo_ = std::move(space_lo);
  d.lo_.push_back(t_begin);
  d.hi_ = std::move(space_hi);
  d.hi_.push_back(t_end);
  return d;
}

int Domain::space_dim() const { return has_time_axis_ ? dim_ - 1 : dim_; }

double Domain::measure() const {
  switch (kind_) {
    case DomainKind::Interval:
      return hi_[0] - lo_[0];
    case DomainKind::Box:
    case DomainKind::SpacetimeBox: {
      double m = 1.0;
      for (std::size_t i = 0; i < lo_.size(); ++i) m *= hi_[i] - lo_[i];
      return m;
    }
    case DomainKind::Disk:
      return kPi * radius_ * radius_;
    case DomainKind::Circle:
      return 2.0 * kPi * radius_;
  }
  return 0.0;
}

double Domain::diameter() const {
  switch (kind_) {
    case DomainKind::Interval:
      return hi_[0] - lo_[0];
    case DomainKind::Box:
    case DomainKind::SpacetimeBox: {
      double s = 0.0;
      for (std::size_t i = 0; i < lo_.size(); ++i) {
        const double d = hi_[i] - lo_[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case DomainKind::Disk:
      return 2.0 * radius_;
    case DomainKind::Circle:
      return kPi * radius_;  // geodesic
  }
  return 0.0;
}

bool Domain::contains(const Point& t, double tol) const {
  if (t.dim != dim_) throw std::domain_error("contains: point dimension mismatch");
  switch (kind_) {
    case DomainKind::Interval:
    case DomainKind::Box:
    case DomainKind::SpacetimeBox: {
      for (std::size_t i = 0; i < lo_.size(); ++i) {
        const double scale = std::max(1.0, hi_[i] - lo_[i]);
        if (t[static_cast<int>(i)] < lo_[i] - tol * scale) return false;
        if (t[static_cast<int>(i)] > hi_[i] + tol * scale) return false;
      }
      return true;
    }
    case DomainKind::Disk:
      return euclidean(t, center_) <= radius_ + tol * std::max(1.0, radius_);
    case DomainKind::Circle:
      return std::fabs(euclidean(t, center_) - radius_) <= tol * std::max(1.0, radius_);
  }
  return false;
}

double Domain::distance(const Point& a, const Point& b) const {
  if (a.dim != dim_ || b.dim != dim_)
    throw std::domain_error("distance: point dimension mismatch");
  if (kind_ == DomainKind::Circle) {
    const double ta = std::atan2(a[1] - center_[1], a[0] - center_[0]);
    const double tb = std::atan2(b[1] - center_[1], b[0] - center_[0]);
    return radius_ * wrap_angle_abs(ta - tb);
  }
  return euclidean(a, b);
}

double Domain::boundary_distance(const Point& t) const {
  if (!contains(t)) throw std::domain_error("boundary_distance: point outside the domain");
  switch (kind_) {
    case DomainKind::Interval:
      return std::max(0.0, std::min(t[0] - lo_[0], hi_[0] - t[0]));
    case DomainKind::Box:
    case DomainKind::SpacetimeBox: {
      double d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < lo_.size(); ++i) {
        d = std::min({d, t[static_cast<int>(i)] - lo_[i], hi_[i] - t[static_cast<int>(i)]});
      }
      return std::max(0.0, d);
    }
    case DomainKind::Disk:
      return std::max(0.0, radius_ - euclidean(t, center_));
    case DomainKind::Circle:
      return std::numeric_limits<double>::infinity();  // closed curve
  }
  return 0.0;
}

QuadratureGrid Domain::build_grid(int resolution) const {
  if (resolution < 2) throw ConfigError("build_grid: resolution must be >= 2");
  QuadratureGrid g;
  switch (kind_) {
    case DomainKind::Interval: {
      const double h = (hi_[0] - lo_[0]) / resolution;
      g.nodes.reserve(static_cast<std::size_t>(resolution));
      for (int i = 0; i < resolution; ++i) {
        g.nodes.push_back(pt(lo_[0] + (i + 0.5) * h));
        g.weights.push_back(h);
      }
      break;
    }
    case DomainKind::Box:
    case DomainKind::SpacetimeBox: {
      const int d = dim_;
      std::vector<double> h(static_cast<std::size_t>(d));
      double w = 1.0;
      for (int i = 0; i < d; ++i) {
        h[static_cast<std::size_t>(i)] =
            (hi_[static_cast<std::size_t>(i)] - lo_[static_cast<std::size_t>(i)]) / resolution;
        w *= h[static_cast<std::size_t>(i)];
      }
      std::vector<int> idx(static_cast<std::size_t>(d), 0);
      while (true) {
        Point p;
        p.dim = d;
        for (int i = 0; i < d; ++i)
          p[i] = lo_[static_cast<std::size_t>(i)] +
                 (idx[static_cast<std::size_t>(i)] + 0.5) * h[static_cast<std::size_t>(i)];
        g.nodes.push_back(p);
        g.weights.push_back(w);
        int axis = 0;
        while (axis < d && ++idx[static_cast<std::size_t>(axis)] == resolution) {
          idx[static_cast<std::size_t>(axis)] = 0;
          ++axis;
        }
        if (axis == d) break;
      }
      break;
    }
    case DomainKind::Disk: {
      // Polar tensor rule; Jacobian weights sum to pi r^2 exactly.
      const int nr = resolution;
      const int na = 4 * resolution;
      const double dr = radius_ / nr;
      const double da = 2.0 * kPi / na;
      g.nodes.reserve(static_cast<std::size_t>(nr) * static_cast<std::size_t>(na));
      for (int i = 0; i < nr; ++i) {
        const double rho = (i + 0.5) * dr;
        for (int k = 0; k < na; ++k) {
          const double th = (k + 0.5) * da;
          g.nodes.push_back(pt(center_[0] + rho * std::cos(th), center_[1] + rho * std::sin(th)));
          g.weights.push_back(rho * dr * da);
        }
      }
      break;
    }
    case DomainKind::Circle: {
      const double da = 2.0 * kPi / resolution;
      for (int k = 0; k < resolution; ++k) {
        const double th = (k + 0.5) * da;
        g.nodes.push_back(pt(center_[0] + radius_ * std::cos(th), center_[1] + radius_ * std::sin(th)));
        g.weights.push_back(radius_ * da);
      }
      break;
    }
  }
  return g;
}

std::string Domain::coord_name(int axis) const {
  static const char* kSpace[] = {"x", "y", "z"};
  if (has_time_axis_ && axis == dim_ - 1) return "t";
  if (axis >= 0 && axis < 3) return kSpace[axis];
  return "c" + std::to_string(axis);
}

}  // namespace optrec
