#include "optrec/pde.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "optrec/errors.hpp"

namespace optrec {

namespace {
constexpr double kPi = std::numbers::pi;

void require_tilde(const RecoveryMethod& m, const char* who) {
  if (m.variant() != Variant::Tilde)
    throw PreconditionError(std::string(who) +
                            ": heat classes vanish toward the boundary; tilde variant required");
}
}  // namespace

// ---------------------------------------------------------------- Poisson --

double disk_green(double r, const Point& center, const Point& t, const Point& s) {
  const double dist = euclidean(t, s);
  if (dist == 0.0) return std::numeric_limits<double>::infinity();
  const double rs = euclidean(s, center);
  if (rs < 1e-14 * r) return std::log(r / euclidean(t, center)) / (2.0 * kPi);
  // reflected source s* = c + (r/|s-c|)^2 (s - c)
  const double f = (r * r) / (rs * rs);
  const Point sref = pt(center[0] + f * (s[0] - center[0]), center[1] + f * (s[1] - center[1]));
  return std::log(rs * euclidean(t, sref) / (r * dist)) / (2.0 * kPi);
}

double disk_poisson_kernel(double r, const Point& center, const Point& t, const Point& s) {
  const double dist2 = (t[0] - s[0]) * (t[0] - s[0]) + (t[1] - s[1]) * (t[1] - s[1]);
  const double rt = euclidean(t, center);
  return (r * r - rt * rt) / (2.0 * kPi * r * dist2);
}

PoissonDiskError poisson_disk_error(double r, const Point& center, const ScalarField& tau1,
                                    const ScalarField& tau2, int res, bool crosscheck) {
  const Domain disk = Domain::disk(center, r);
  const Domain circle = Domain::circle(center, r);
  const QuadratureGrid gd = disk.build_grid(res);
  const QuadratureGrid gc = circle.build_grid(8 * res);

  PoissonDiskError e;
  for (std::size_t i = 0; i < gd.size(); ++i) {
    const Point& s = gd.nodes[i];
    const double rs = euclidean(s, center);
    e.interior_printed += gd.weights[i] * 0.5 * (r * r - rs * rs) * tau1(s);
    if (!crosscheck) continue;
    // column integral int_Omega G(t,s) dmu(t); skip the singular self-node
    double col = 0.0;
    for (std::size_t k = 0; k < gd.size(); ++k) {
      if (k == i) continue;
      col += gd.weights[k] * disk_green(r, center, gd.nodes[k], s);
    }
    e.interior_quadrature += gd.weights[i] * col * tau1(s);
  }
  for (std::size_t i = 0; i < gc.size(); ++i) {
    const Point& s = gc.nodes[i];
    e.boundary_printed += gc.weights[i] * 0.5 * r * tau2(s);
    if (!crosscheck) continue;
    double col = 0.0;
    for (std::size_t k = 0; k < gd.size(); ++k)
      col += gd.weights[k] * disk_poisson_kernel(r, center, gd.nodes[k], s);
    e.boundary_quadrature += gc.weights[i] * col * tau2(s);
  }
  e.printed_value = e.interior_printed + e.boundary_printed;
  e.quadrature_value = e.interior_quadrature + e.boundary_quadrature;
  return e;
}

double poisson_disk_solution(double r, const Point& center, const ScalarField& f,
                             const ScalarField& g, const Point& t, int res) {
  const Domain disk = Domain::disk(center, r);
  const Domain circle = Domain::circle(center, r);
  const QuadratureGrid gd = disk.build_grid(res);
  const QuadratureGrid gc = circle.build_grid(8 * res);
  double v = 0.0;
  for (std::size_t k = 0; k < gd.size(); ++k) {
    const double green = disk_green(r, center, t, gd.nodes[k]);
    if (!std::isfinite(green)) continue;  // node coincides with t
    v += gd.weights[k] * green * f(gd.nodes[k]);
  }
  for (std::size_t k = 0; k < gc.size(); ++k)
    v += gc.weights[k] * disk_poisson_kernel(r, center, t, gc.nodes[k]) * g(gc.nodes[k]);
  return v;
}

// ------------------------------------------------------------------- Heat --

double heat_kernel_source(int d, const Point& out_ut, const Point& in_vs) {
  if (out_ut.dim != d + 1 || in_vs.dim != d + 1)
    throw std::domain_error("heat_kernel_source: expected spacetime points of dimension d+1");
  const double t = out_ut[d], s = in_vs[d];
  if (!(s > 0.0) || !(s < t)) return 0.0;  // indicator chi_(0,t)(s)
  double r2 = 0.0;
  for (int i = 0; i < d; ++i) {
    const double dx = out_ut[i] - in_vs[i];
    r2 += dx * dx;
  }
  const double dt = t - s;
  return std::exp(-r2 / (4.0 * dt)) / std::pow(4.0 * kPi * dt, 0.5 * d);
}

double heat_kernel_initial(int d, const Point& out_ut, const Point& in_v) {
  if (out_ut.dim != d + 1 || in_v.dim != d)
    throw std::domain_error("heat_kernel_initial: dimension mismatch");
  const double t = out_ut[d];
  if (!(t > 0.0)) throw std::domain_error("heat_kernel_initial: requires t > 0");
  double r2 = 0.0;
  for (int i = 0; i < d; ++i) {
    const double dx = out_ut[i] - in_v[i];
    r2 += dx * dx;
  }
  return std::exp(-r2 / (4.0 * t)) / std::pow(4.0 * kPi * t, 0.5 * d);
}

double heat_ray_weight(int d, double R) {
  if (d < 3)
    throw std::invalid_argument("heat_ray_weight: the time integral diverges for d < 3");
  if (!(R > 0.0)) throw std::domain_error("heat_ray_weight: R must be > 0");
  return std::tgamma(0.5 * d - 1.0) / (4.0 * std::pow(kPi, 0.5 * d) * std::pow(R, d - 2));
}

double heat_ray_weight_printed(int d, double R) {
  if (d < 3)
    throw std::invalid_argument("heat_ray_weight_printed: defined for d >= 3");
  return std::pow(4.0, d - 1) * std::tgamma(0.5 * d - 1.0) /
         (std::pow(kPi, 0.5 * d) * std::pow(R, d - 2));
}

HeatError heat_optimal_error(HeatCase hcase, int d, double t0, const Point& u0,
                             const RecoveryMethod& f_method, const RecoveryMethod& g_method,
                             int res) {
  require_tilde(f_method, "heat_optimal_error(f)");
  require_tilde(g_method, "heat_optimal_error(g)");
  if (f_method.domain().kind() != DomainKind::SpacetimeBox ||
      f_method.domain().space_dim() != d)
    throw std::invalid_argument("heat_optimal_error: f lives on a spacetime box in R^d x (0,T)");
  if (f_method.domain().lo(d) < 0.0)
    throw std::invalid_argument("heat_optimal_error: the source support must sit in positive time");
  if (g_method.domain().kind() == DomainKind::SpacetimeBox || g_method.domain().dim() != d)
    throw std::invalid_argument("heat_optimal_error: g lives on a spatial domain of dimension d");
  if (hcase == HeatCase::FixedPointRay && d < 3)
    throw std::invalid_argument(
        "heat_optimal_error: the fixed-point-ray output needs d >= 3 (time integral diverges)");
  if ((hcase == HeatCase::FixedTime || hcase == HeatCase::SinglePoint) && !(t0 > 0.0))
    throw std::invalid_argument("heat_optimal_error: t0 must be > 0");

  const QuadratureGrid gf = f_method.domain().build_grid(res);
  const QuadratureGrid gg = g_method.domain().build_grid(res);
  const int td = d;  // time coordinate index in spacetime points

  HeatError e;
  switch (hcase) {
    case HeatCase::FixedTime: {
      for (std::size_t k = 0; k < gf.size(); ++k) {
        if (gf.nodes[k][td] >= t0) continue;  // source acts before the output time
        e.source_term += gf.weights[k] * f_method.tau_tilde(gf.nodes[k]);
      }
      for (std::size_t k = 0; k < gg.size(); ++k)
        e.initial_term += gg.weights[k] * g_method.tau_tilde(gg.nodes[k]);
      e.value = e.source_term + e.initial_term;
      e.printed_constant_value = e.value;
      break;
    }
    case HeatCase::FixedPointRay: {
      double src = 0.0, ini = 0.0, src_printed = 0.0, ini_printed = 0.0;
      for (std::size_t k = 0; k < gf.size(); ++k) {
        double R2 = 0.0;
        for (int i = 0; i < d; ++i) {
          const double dx = u0[i] - gf.nodes[k][i];
          R2 += dx * dx;
        }
        const double R = std::sqrt(R2);
        if (R < 1e-14) continue;  // integrable point singularity
        const double phi = gf.weights[k] * f_method.tau_tilde(gf.nodes[k]);
        src += phi * heat_ray_weight(d, R);
        src_printed += phi * heat_ray_weight_printed(d, R);
      }
      for (std::size_t k = 0; k < gg.size(); ++k) {
        const double R = euclidean(u0, gg.nodes[k]);
        if (R < 1e-14) continue;
        const double phi = gg.weights[k] * g_method.tau_tilde(gg.nodes[k]);
        ini += phi * heat_ray_weight(d, R);
        ini_printed += phi * heat_ray_weight_printed(d, R);
      }
      e.source_term = src;
      e.initial_term = ini;
      e.value = src + ini;
      e.printed_constant_value = src_printed + ini_printed;
      break;
    }
    case HeatCase::SinglePoint: {
      const Point out = with_time(u0, t0);
      for (std::size_t k = 0; k < gf.size(); ++k)
        e.source_term +=
            gf.weights[k] * heat_kernel_source(d, out, gf.nodes[k]) * f_method.tau_tilde(gf.nodes[k]);
      for (std::size_t k = 0; k < gg.size(); ++k)
        e.initial_term +=
            gg.weights[k] * heat_kernel_initial(d, out, gg.nodes[k]) * g_method.tau_tilde(gg.nodes[k]);
      e.value = e.source_term + e.initial_term;
      e.printed_constant_value = e.value;
      break;
    }
  }
  return e;
}

// ------------------------------------------------------------------- Wave --

double dalembert_solution(const ScalarField& f, const std::function<double(double)>& g,
                          const std::function<double(double)>& h, double u, double t, int res) {
  if (!(t > 0.0)) throw std::domain_error("dalembert_solution: t must be > 0");
  double v = 0.5 * (g(u - t) + g(u + t));
  const double hs = t / res;
  // (1/2) int_0^t int_{u-s}^{u+s} f(v', t-s) dv' ds
  double src = 0.0;
  for (int i = 0; i < res; ++i) {
    const double s = (i + 0.5) * hs;
    const double hv = 2.0 * s / res;
    double inner = 0.0;
    for (int k = 0; k < res; ++k) {
      const double vv = u - s + (k + 0.5) * hv;
      inner += hv * f(pt(vv, t - s));
    }
    src += hs * inner;
  }
  v += 0.5 * src;
  // (1/2) int_{u-t}^{u+t} h
  const double hv = 2.0 * t / res;
  double vel = 0.0;
  for (int k = 0; k < res; ++k) vel += hv * h(u - t + (k + 0.5) * hv);
  return v + 0.5 * vel;
}

double wave_solution_2d(const ScalarField& f, const ScalarField& h, const Point& u, double t,
                        int res) {
  if (u.dim != 2) throw std::domain_error("wave_solution_2d: u must be 2-dimensional");
  if (!(t > 0.0)) throw std::domain_error("wave_solution_2d: t must be > 0");
  // substitution rho = s sin(chi) removes the inverse square-root singularity:
  // int_{B_s(u)} F(v)/sqrt(s^2-|u-v|^2) dv = s int_0^{2pi} int_0^{pi/2} F(u + s sin(chi) e_th) sin(chi) dchi dth
  auto disk_integral = [&](double s, const ScalarField& F) {
    const double dchi = 0.5 * kPi / res;
    const double dth = 2.0 * kPi / (4 * res);
    double acc = 0.0;
    for (int i = 0; i < res; ++i) {
      const double chi = (i + 0.5) * dchi;
      const double sin_chi = std::sin(chi);
      for (int k = 0; k < 4 * res; ++k) {
        const double th = (k + 0.5) * dth;
        const Point v = pt(u[0] + s * sin_chi * std::cos(th), u[1] + s * sin_chi * std::sin(th));
        acc += dchi * dth * sin_chi * F(v);
      }
    }
    return s * acc;
  };
  const double hs = t / res;
  double src = 0.0;
  for (int i = 0; i < res; ++i) {
    const double s = (i + 0.5) * hs;
    src += hs * disk_integral(s, [&](const Point& v) { return f(with_time(v, t - s)); });
  }
  return (src + disk_integral(t, h)) / (2.0 * kPi);
}

double wave_solution_3d(const ScalarField& f, const ScalarField& h, const Point& u, double t,
                        int res) {
  if (u.dim != 3) throw std::domain_error("wave_solution_3d: u must be 3-dimensional");
  if (!(t > 0.0)) throw std::domain_error("wave_solution_3d: t must be > 0");
  // equal-area sphere grid: uniform in cos(theta) x uniform in phi
  const int nc = res, np = 2 * res;
  const double dc = 2.0 / nc, dp = 2.0 * kPi / np;
  auto sphere_mean = [&](double radius, const ScalarField& F) {
    double acc = 0.0;
    for (int i = 0; i < nc; ++i) {
      const double c = -1.0 + (i + 0.5) * dc;
      const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
      for (int k = 0; k < np; ++k) {
        const double phi = (k + 0.5) * dp;
        const Point v = pt(u[0] + radius * sn * std::cos(phi), u[1] + radius * sn * std::sin(phi),
                           u[2] + radius * c);
        acc += dc * dp * F(v);
      }
    }
    return acc;  // integral over the unit sphere of directions
  };
  // (1/4pi) int_{B_t(u)} f(v, t-|u-v|)/|u-v| dv = (1/4pi) int_0^t rho int_{S^2} f(u+rho w, t-rho) dw drho
  const double dr = t / res;
  double src = 0.0;
  for (int i = 0; i < res; ++i) {
    const double rho = (i + 0.5) * dr;
    src += dr * rho * sphere_mean(rho, [&](const Point& v) { return f(with_time(v, t - rho)); });
  }
  const double vel = t * sphere_mean(t, h);  // (1/4pi t) * t^2 * int_{S^2} h
  return (src + vel) / (4.0 * kPi);
}

namespace {

double weighted_support_integral(const QuadratureGrid& grid, const ScalarField& tau, double t0,
                                 int time_axis) {
  // int (t0 - s)^+ tau(v, s) over the spacetime support, time slices in (0, t0)
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double s = grid.nodes[k][time_axis];
    if (s <= 0.0 || s >= t0) continue;
    acc += grid.weights[k] * (t0 - s) * tau(grid.nodes[k]);
  }
  return acc;
}

double plain_integral(const QuadratureGrid& grid, const ScalarField& tau) {
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) acc += grid.weights[k] * tau(grid.nodes[k]);
  return acc;
}

}  // namespace

WaveError wave_fixed_time_error_1d(double t0, const QuadratureGrid& m1, const ScalarField& tau1,
                                   const QuadratureGrid& m2, const ScalarField& tau2,
                                   const QuadratureGrid& m3, const ScalarField& tau3) {
  if (!(t0 > 0.0)) throw std::invalid_argument("wave_fixed_time_error_1d: t0 must be > 0");
  WaveError e;
  e.source_term = weighted_support_integral(m1, tau1, t0, 1);
  e.initial_term = plain_integral(m2, tau2);
  e.velocity_term = t0 * plain_integral(m3, tau3);
  e.value = e.source_term + e.initial_term + e.velocity_term;
  return e;
}

WaveError wave_fixed_time_error(int d, double t0, const QuadratureGrid& m1,
                                const ScalarField& tau1, const QuadratureGrid& m2,
                                const ScalarField& tau2) {
  if (d != 2 && d != 3)
    throw std::invalid_argument("wave_fixed_time_error: d must be 2 or 3 (use the 1d overload)");
  if (!(t0 > 0.0)) throw std::invalid_argument("wave_fixed_time_error: t0 must be > 0");
  WaveError e;
  e.source_term = weighted_support_integral(m1, tau1, t0, d);
  e.velocity_term = t0 * plain_integral(m2, tau2);
  e.value = e.source_term + e.velocity_term;
  return e;
}

double wave_recover(int d, const std::vector<RecoveryMethod>& methods,
                    const std::vector<std::vector<double>>& data, const Point& u, double t,
                    int res) {
  const std::size_t want = d == 1 ? 3 : 2;
  if (d < 1 || d > 3) throw std::invalid_argument("wave_recover: d must be 1, 2 or 3");
  if (methods.size() != want || data.size() != want)
    throw std::invalid_argument("wave_recover: need " + std::to_string(want) +
                                " methods/data vectors for d = " + std::to_string(d));
  const RecoveryMethod& fm = methods[0];
  ScalarField lf = [&](const Point& p) { return fm.recover(data[0], p); };
  if (d == 1) {
    const RecoveryMethod& gm = methods[1];
    const RecoveryMethod& hm = methods[2];
    auto lg = [&](double v) { return gm.recover(data[1], pt(v)); };
    auto lh = [&](double v) { return hm.recover(data[2], pt(v)); };
    return dalembert_solution(lf, lg, lh, u[0], t, res);
  }
  const RecoveryMethod& hm = methods[1];
  ScalarField lh = [&](const Point& p) { return hm.recover(data[1], p); };
  return d == 2 ? wave_solution_2d(lf, lh, u, t, res) : wave_solution_3d(lf, lh, u, t, res);
}

}  // namespace optrec
