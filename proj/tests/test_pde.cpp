#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "optrec/errors.hpp"
#include "optrec/pde.hpp"

using namespace optrec;
namespace {
constexpr double kPi = std::numbers::pi;

RecoveryMethod tilde_on(const Domain& dom, std::vector<Point> qs, std::vector<double> es) {
  InfoSpec info;
  info.points = std::move(qs);
  info.errors = std::move(es);
  return RecoveryMethod(dom, ModulusSpec::power(1.0, 1.0), std::move(info), Variant::Tilde);
}
}  // namespace

// ---------------------------------------------------------------- Poisson --

TEST_CASE("poisson disk: printed closed form for unit majorants") {
  const auto one = [](const Point&) { return 1.0; };
  const auto e = poisson_disk_error(1.0, pt(0, 0), one, one, 400, /*crosscheck=*/false);
  // (1/2)(pi/2) + (1/2)(2 pi) = 5 pi / 4
  CHECK(e.printed_value == doctest::Approx(5.0 * kPi / 4.0).epsilon(1e-5));
  CHECK(e.interior_printed == doctest::Approx(kPi / 4.0).epsilon(1e-5));
  CHECK(e.boundary_printed == doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("poisson disk: zero majorants give zero") {
  const auto zero = [](const Point&) { return 0.0; };
  const auto e = poisson_disk_error(1.0, pt(0, 0), zero, zero, 12);
  CHECK(e.printed_value == 0.0);
  CHECK(e.quadrature_value == 0.0);
}

TEST_CASE("poisson disk: boundary-only majorant") {
  const auto zero = [](const Point&) { return 0.0; };
  const double c = 0.7, r = 1.3;
  const auto e = poisson_disk_error(r, pt(0.2, -0.1), zero, [&](const Point&) { return c; }, 16,
                                    /*crosscheck=*/false);
  CHECK(e.printed_value == doctest::Approx(c * r * kPi * r).epsilon(1e-9));  // (r/2) c 2 pi r
}

TEST_CASE("poisson disk: quadrature cross-check approaches the dimensional constants") {
  // the Green column integral solves -Lap u = 1 with zero trace:
  // u(s) = (r^2-|s|^2)/4 in the plane, so the interior cross-check for tau1=1
  // tends to pi/8 (not the printed pi/4); the boundary term matches r/2 exactly.
  const auto one = [](const Point&) { return 1.0; };
  const auto e = poisson_disk_error(1.0, pt(0, 0), one, one, 32);
  CHECK(e.interior_quadrature == doctest::Approx(kPi / 8.0).epsilon(2e-2));
  CHECK(e.boundary_quadrature == doctest::Approx(kPi).epsilon(2e-2));
}

TEST_CASE("disk green function basics") {
  // vanishes on the boundary, positive inside, symmetric-ish under swap
  const double g_bnd = disk_green(1.0, pt(0, 0), pt(1.0, 0.0), pt(0.3, 0.2));
  CHECK(g_bnd == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(disk_green(1.0, pt(0, 0), pt(0.2, 0.1), pt(0.4, -0.3)) > 0.0);
  const double a = disk_green(1.0, pt(0, 0), pt(0.2, 0.1), pt(0.4, -0.3));
  const double b = disk_green(1.0, pt(0, 0), pt(0.4, -0.3), pt(0.2, 0.1));
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("poisson kernel is a probability density over the circle") {
  const Domain circle = Domain::circle(pt(0, 0), 1.0);
  const auto g = circle.build_grid(4000);
  for (const Point& t : {pt(0.0, 0.0), pt(0.5, 0.2), pt(-0.7, 0.1)}) {
    double mass = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
      mass += g.weights[k] * disk_poisson_kernel(1.0, pt(0, 0), t, g.nodes[k]);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("poisson solve: harmonic extension of a linear boundary function") {
  // f == 0, g(x,y) = x: the solution of the Laplace problem is x itself
  const auto zero = [](const Point&) { return 0.0; };
  const auto gx = [](const Point& p) { return p[0]; };
  const double v = poisson_disk_solution(1.0, pt(0, 0), zero, gx, pt(0.3, 0.4), 64);
  CHECK(v == doctest::Approx(0.3).epsilon(2e-2));
}

// ------------------------------------------------------------------- Heat --

TEST_CASE("heat kernel mass is one (radial quadrature, d = 1,2,3)") {
  const double t = 0.37;
  for (int d : {1, 2, 3}) {
    const double sigma = std::sqrt(2.0 * t);
    const double R = 12.0 * sigma;
    const int n = 200000;
    const double h = R / n;
    double mass = 0.0;
    Point u0;
    u0.dim = d;
    for (int i = 0; i < n; ++i) {
      const double rho = (i + 0.5) * h;
      Point v;
      v.dim = d;
      v[0] = rho;
      const double k2 = heat_kernel_initial(d, with_time(u0, t), v);
      const double surf = d == 1 ? 2.0 : (d == 2 ? 2.0 * kPi * rho : 4.0 * kPi * rho * rho);
      mass += h * surf * k2;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("heat kernel values") {
  // peak value 1 when 4 pi t == 1
  const double t = 1.0 / (4.0 * kPi);
  CHECK(heat_kernel_initial(1, pt(0.3, t), pt(0.3)) == doctest::Approx(1.0).epsilon(1e-12));
  // indicator: source kernel vanishes outside 0 < s < t
  CHECK(heat_kernel_source(1, pt(0.0, 1.0), pt(0.0, 1.5)) == 0.0);
  CHECK(heat_kernel_source(1, pt(0.0, 1.0), pt(0.0, 1.0)) == 0.0);
  CHECK(heat_kernel_source(1, pt(0.0, 1.0), pt(0.0, -0.2)) == 0.0);
  CHECK(heat_kernel_source(1, pt(0.0, 1.0), pt(0.0, 0.5)) > 0.0);
  CHECK_THROWS_AS(heat_kernel_initial(1, pt(0.0, 0.0), pt(0.0)), std::domain_error);
}

TEST_CASE("heat fixed-time error is the plain sum of majorant integrals") {
  const Domain m1 = Domain::spacetime_box({-1.0}, {1.0}, 0.1, 0.9);
  const Domain m2 = Domain::interval(-1.0, 1.0);
  const auto f = tilde_on(m1, {pt(0.0, 0.5)}, {0.0});
  const auto g = tilde_on(m2, {pt(0.0)}, {0.0});
  const int res = 120;
  const auto e = heat_optimal_error(HeatCase::FixedTime, 1, 2.0, pt(0.0), f, g, res);
  double s1 = 0.0, s2 = 0.0;
  const auto g1 = m1.build_grid(res), g2 = m2.build_grid(res);
  for (std::size_t k = 0; k < g1.size(); ++k) s1 += g1.weights[k] * f.tau_tilde(g1.nodes[k]);
  for (std::size_t k = 0; k < g2.size(); ++k) s2 += g2.weights[k] * g.tau_tilde(g2.nodes[k]);
  CHECK(e.value == doctest::Approx(s1 + s2).epsilon(1e-9));
  CHECK(e.source_term == doctest::Approx(s1).epsilon(1e-9));
}

TEST_CASE("heat fixed-time error cuts the source at the output time") {
  const Domain m1 = Domain::spacetime_box({-1.0}, {1.0}, 0.1, 0.9);
  const Domain m2 = Domain::interval(-1.0, 1.0);
  const auto f = tilde_on(m1, {pt(0.0, 0.5)}, {0.0});
  const auto g = tilde_on(m2, {pt(0.0)}, {0.0});
  const auto full = heat_optimal_error(HeatCase::FixedTime, 1, 2.0, pt(0.0), f, g, 90);
  const auto cut = heat_optimal_error(HeatCase::FixedTime, 1, 0.5, pt(0.0), f, g, 90);
  CHECK(cut.source_term < full.source_term);
  CHECK(cut.initial_term == doctest::Approx(full.initial_term));
}

TEST_CASE("heat ray weight matches the substitution oracle (d = 3)") {
  // oracle: int_0^inf K2 dt = R^{2-d}/(4 pi^{d/2}) * int_0^inf e^{-w} w^{d/2-2} dw,
  // evaluated by quadrature after w = y^2
  for (double R : {0.5, 1.0, 2.0}) {
    const int n = 200000;
    const double ymax = 7.0, h = ymax / n;
    double gam = 0.0;  // int e^{-w} w^{-1/2} dw = 2 int e^{-y^2} dy
    for (int i = 0; i < n; ++i) {
      const double y = (i + 0.5) * h;
      gam += 2.0 * h * std::exp(-y * y);
    }
    const double oracle = gam / (4.0 * std::pow(kPi, 1.5) * R);
    CHECK(heat_ray_weight(3, R) == doctest::Approx(oracle).epsilon(1e-6));
  }
  CHECK_THROWS_AS(heat_ray_weight(2, 1.0), std::invalid_argument);
}

TEST_CASE("heat ray case: printed constant is 4^d times the oracle value") {
  const Domain m1 = Domain::spacetime_box({-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}, 0.1, 0.9);
  const Domain m2 = Domain::box({-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5});
  const auto f = tilde_on(m1, {Point{0.0, 0.0, 0.0, 0.5}}, {0.0});
  const auto g = tilde_on(m2, {pt(0.0, 0.0, 0.0)}, {0.0});
  const auto e = heat_optimal_error(HeatCase::FixedPointRay, 3, 0.0, pt(3.0, 0.0, 0.0), f, g, 10);
  CHECK(e.value > 0.0);
  CHECK(e.printed_constant_value == doctest::Approx(64.0 * e.value).epsilon(1e-12));
  CHECK_THROWS_AS(heat_optimal_error(HeatCase::FixedPointRay, 2, 0.0, pt(3.0, 0.0), f, g, 8),
                  std::invalid_argument);
}

TEST_CASE("heat single-point error weighs majorants by the kernels") {
  const Domain m1 = Domain::spacetime_box({-1.0}, {1.0}, 0.05, 0.45);
  const Domain m2 = Domain::interval(-1.0, 1.0);
  const auto f = tilde_on(m1, {pt(0.0, 0.2)}, {0.0});
  const auto g = tilde_on(m2, {pt(0.0)}, {0.0});
  const double t0 = 1.0;
  const auto e = heat_optimal_error(HeatCase::SinglePoint, 1, t0, pt(0.25), f, g, 150);
  const auto g1 = m1.build_grid(150), g2 = m2.build_grid(150);
  double s1 = 0.0, s2 = 0.0;
  const Point out = pt(0.25, t0);
  for (std::size_t k = 0; k < g1.size(); ++k)
    s1 += g1.weights[k] * heat_kernel_source(1, out, g1.nodes[k]) * f.tau_tilde(g1.nodes[k]);
  for (std::size_t k = 0; k < g2.size(); ++k)
    s2 += g2.weights[k] * heat_kernel_initial(1, out, g2.nodes[k]) * g.tau_tilde(g2.nodes[k]);
  CHECK(e.value == doctest::Approx(s1 + s2).epsilon(1e-9));
}

TEST_CASE("heat errors demand the tilde variant") {
  const Domain m1 = Domain::spacetime_box({-1.0}, {1.0}, 0.1, 0.9);
  const Domain m2 = Domain::interval(-1.0, 1.0);
  InfoSpec i1, i2;
  i1.points = {pt(0.0, 0.5)};
  i1.errors = {0.0};
  i2.points = {pt(0.0)};
  i2.errors = {0.0};
  const RecoveryMethod plain1(m1, ModulusSpec::power(1.0, 1.0), i1, Variant::Plain);
  const RecoveryMethod tilde2(m2, ModulusSpec::power(1.0, 1.0), i2, Variant::Tilde);
  CHECK_THROWS_AS(heat_optimal_error(HeatCase::FixedTime, 1, 1.0, pt(0.0), plain1, tilde2, 20),
                  PreconditionError);
}

// ------------------------------------------------------------------- Wave --

TEST_CASE("wave d=1 fixed-time error: unit source majorant on the unit square") {
  const Domain m1 = Domain::spacetime_box({0.0}, {1.0}, 0.0, 1.0);
  const Domain m2 = Domain::interval(0.0, 1.0);
  const auto g1 = m1.build_grid(600);
  const auto g2 = m2.build_grid(600);
  const auto one = [](const Point&) { return 1.0; };
  const auto zero = [](const Point&) { return 0.0; };
  const auto e = wave_fixed_time_error_1d(1.0, g1, one, g2, zero, g2, zero);
  // int_0^1 s int_0^1 1 dv ds = 1/2
  CHECK(e.source_term == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(e.value == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("wave d=1 fixed-time error: three-term linear combination") {
  const Domain m1 = Domain::spacetime_box({0.0}, {1.0}, 0.0, 1.0);
  const Domain m2 = Domain::interval(0.0, 1.0);
  const auto g1 = m1.build_grid(100);
  const auto g2 = m2.build_grid(400);
  const auto zero = [](const Point&) { return 0.0; };
  const auto quarter = [](const Point&) { return 0.25; };  // integral over [0,1] is 0.25
  const auto e = wave_fixed_time_error_1d(2.0, g1, zero, g2, quarter, g2, quarter);
  CHECK(e.initial_term == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(e.velocity_term == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e.value == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("wave d=2,3 fixed-time error") {
  const auto zero = [](const Point&) { return 0.0; };
  const auto one = [](const Point&) { return 1.0; };
  const Domain m1 = Domain::spacetime_box({0.0, 0.0}, {1.0, 1.0}, 0.0, 1.0);
  const Domain m2 = Domain::box({0.0, 0.0}, {1.0, 1.0});
  const auto e2 = wave_fixed_time_error(2, 1.0, m1.build_grid(60), one, m2.build_grid(60), zero);
  CHECK(e2.source_term == doctest::Approx(0.5).epsilon(1e-4));
  const auto e3 = wave_fixed_time_error(3, 2.0, m1.build_grid(4), zero, m2.build_grid(64), one);
  CHECK(e3.velocity_term == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("d'Alembert formula on polynomial data satisfies the equation") {
  // f == 3, g = u^2, h = u: all quadratures are exact for the midpoint rule,
  // x(u,t) = 3 t^2 / 2 + (g(u-t)+g(u+t))/2 + 2ut/2 ... check the PDE residual
  const auto f = [](const Point&) { return 3.0; };
  const auto g = [](double u) { return u * u; };
  const auto h = [](double u) { return u; };
  auto x = [&](double u, double t) { return dalembert_solution(f, g, h, u, t, 64); };
  const double fd = 1e-3;
  for (double u : {-0.4, 0.2}) {
    for (double t : {0.5, 1.1}) {
      const double xtt = (x(u, t + fd) - 2.0 * x(u, t) + x(u, t - fd)) / (fd * fd);
      const double xuu = (x(u + fd, t) - 2.0 * x(u, t) + x(u - fd, t)) / (fd * fd);
      CHECK(xtt - xuu == doctest::Approx(3.0).epsilon(1e-5));
    }
  }
  // initial data are honored in the limit t -> 0
  CHECK(x(0.3, 1e-7) == doctest::Approx(0.09).epsilon(1e-5));
}

TEST_CASE("d'Alembert with smooth data: residual shrinks at second order") {
  const auto f = [](const Point& p) { return std::sin(p[0]) + p[1]; };
  const auto g = [](double u) { return std::cos(u); };
  const auto h = [](double u) { return std::sin(u); };
  auto residual = [&](int res) {
    auto x = [&](double u, double t) { return dalembert_solution(f, g, h, u, t, res); };
    const double fd = 0.05;
    const double u = 0.3, t = 0.8;
    const double xtt = (x(u, t + fd) - 2.0 * x(u, t) + x(u, t - fd)) / (fd * fd);
    const double xuu = (x(u + fd, t) - 2.0 * x(u, t) + x(u - fd, t)) / (fd * fd);
    return std::fabs(xtt - xuu - f(pt(u, t)));
  };
  // dominated by the fd stencil truncation once the quadrature is fine enough
  CHECK(residual(512) < 5e-3);
}

TEST_CASE("wave recovered solution: constant velocity datum spreads linearly") {
  // f == 0 data, g datum c over a single cell, h == 0: x(u,t0) = c wherever
  // both u-t0 and u+t0 land in the cell of the only sample point
  const double c = 2.5;
  const Domain m1 = Domain::spacetime_box({-4.0}, {4.0}, 0.0, 2.0);
  const Domain m2 = Domain::interval(-4.0, 4.0);
  InfoSpec i1, i2;
  i1.points = {pt(0.0, 1.0)};
  i1.errors = {0.0};
  i2.points = {pt(0.0)};
  i2.errors = {0.0};
  const ModulusSpec w = ModulusSpec::power(1.0, 1.0);
  const std::vector<RecoveryMethod> methods = {
      RecoveryMethod(m1, w, i1, Variant::Plain), RecoveryMethod(m2, w, i2, Variant::Plain),
      RecoveryMethod(m2, w, i2, Variant::Plain)};
  const std::vector<std::vector<double>> data = {{0.0}, {c}, {0.0}};
  CHECK(wave_recover(1, methods, data, pt(0.1), 0.5, 64) == doctest::Approx(c).epsilon(1e-12));
}

TEST_CASE("wave 3d solution: constant velocity over a large support") {
  // h == c on a ball larger than the light cone: x(u,t) = c t
  const auto zero = [](const Point&) { return 0.0; };
  const double c = 1.5;
  const auto h = [&](const Point&) { return c; };
  const double v = wave_solution_3d(zero, h, pt(0.0, 0.0, 0.0), 0.7, 48);
  CHECK(v == doctest::Approx(c * 0.7).epsilon(1e-6));
}

TEST_CASE("wave 2d solution: constant velocity over a large support") {
  // h == c everywhere: x(u,t) = c t
  const auto zero = [](const Point&) { return 0.0; };
  const double c = 0.8;
  const auto h = [&](const Point&) { return c; };
  const double v = wave_solution_2d(zero, h, pt(0.0, 0.0), 1.3, 48);
  CHECK(v == doctest::Approx(c * 1.3).epsilon(1e-4));
}
