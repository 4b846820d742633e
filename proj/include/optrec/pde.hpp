#pragma once

#include <functional>
#include <vector>

#include "optrec/operators.hpp"
#include "optrec/recovery.hpp"

namespace optrec {

// ---------------------------------------------------------------- Poisson --
// Dirichlet problem on the plane disk of radius r centered at c.

// Green's function of the disk (d = 2), via the reflected source.
double disk_green(double r, const Point& center, const Point& t, const Point& s);
// Poisson kernel (r^2 - |t-c|^2) / (2 pi r |t-s|^2), t inside, s on the circle.
double disk_poisson_kernel(double r, const Point& center, const Point& t, const Point& s);

struct PoissonDiskError {
  double interior_printed = 0, boundary_printed = 0, printed_value = 0;
  double interior_quadrature = 0, boundary_quadrature = 0, quadrature_value = 0;
};

// L1 optimal error, two routes:
//   printed closed form   (1/2) int (r^2-|s-c|^2) tau1 + (r/2) int tau2
//   quadrature cross-check through the explicit Green's function / Poisson
//   kernel column integrals (O(nodes^2); skippable via crosscheck = false).
PoissonDiskError poisson_disk_error(double r, const Point& center, const ScalarField& tau1,
                                    const ScalarField& tau2, int res, bool crosscheck = true);

// int G(t,s) f(s) ds + int P(t,s) g(s) dsigma(s) at an interior point t.
double poisson_disk_solution(double r, const Point& center, const ScalarField& f,
                             const ScalarField& g, const Point& t, int res);

// ------------------------------------------------------------------- Heat --
// Cauchy problem kernels; spacetime points are (u_1..u_d, t).

// Source kernel, zero unless 0 < s < t (indicator, not an error).
double heat_kernel_source(int d, const Point& out_ut, const Point& in_vs);
// Initial-data kernel; requires t > 0.
double heat_kernel_initial(int d, const Point& out_ut, const Point& in_v);

// int_0^inf of the initial-data kernel in time at distance R:
// Gamma(d/2-1) / (4 pi^{d/2} R^{d-2}); defined for d >= 3.
double heat_ray_weight(int d, double R);
// The corresponding printed constant 4^{d-1} Gamma(d/2-1) / pi^{d/2} R^{2-d}.
double heat_ray_weight_printed(int d, double R);

enum class HeatCase { FixedTime, FixedPointRay, SinglePoint };

struct HeatError {
  double value = 0;          // with the ray constant from heat_ray_weight
  double source_term = 0, initial_term = 0;
  double printed_constant_value = 0;  // ray case with the printed constant; == value otherwise
};

// L1 optimal error for the three output manifolds. Both methods must use the
// tilde variant (PreconditionError otherwise); f on a spacetime box, g on a
// spatial box/interval of matching dimension. FixedPointRay needs d >= 3.
HeatError heat_optimal_error(HeatCase hcase, int d, double t0, const Point& u0,
                             const RecoveryMethod& f_method, const RecoveryMethod& g_method,
                             int res);

// ------------------------------------------------------------------- Wave --

// d = 1 solution formula: f source, g initial form, h initial velocity.
double dalembert_solution(const ScalarField& f, const std::function<double(double)>& g,
                          const std::function<double(double)>& h, double u, double t, int res);
// d = 2 (g == 0): disk integrals with the inverse square-root weight.
double wave_solution_2d(const ScalarField& f, const ScalarField& h, const Point& u, double t,
                        int res);
// d = 3 (g == 0): Kirchhoff ball/sphere integrals.
double wave_solution_3d(const ScalarField& f, const ScalarField& h, const Point& u, double t,
                        int res);

struct WaveError {
  double value = 0;
  double source_term = 0;    // int (t0 - s)^+ tau1 over the spacetime support
  double initial_term = 0;   // d = 1 only: int tau2
  double velocity_term = 0;  // t0 int tau_h
};

// Fixed-time L1 error, d = 1 (three classes).
WaveError wave_fixed_time_error_1d(double t0, const QuadratureGrid& m1, const ScalarField& tau1,
                                   const QuadratureGrid& m2, const ScalarField& tau2,
                                   const QuadratureGrid& m3, const ScalarField& tau3);
// Fixed-time L1 error, d = 2 or 3 (source + velocity classes).
WaveError wave_fixed_time_error(int d, double t0, const QuadratureGrid& m1,
                                const ScalarField& tau1, const QuadratureGrid& m2,
                                const ScalarField& tau2);

// Recovered solution: the respective formula applied to the piecewise-constant
// recoveries. methods/data: d=1 -> {f,g,h}; d=2,3 -> {f,h}.
double wave_recover(int d, const std::vector<RecoveryMethod>& methods,
                    const std::vector<std::vector<double>>& data, const Point& u, double t,
                    int res);

}  // namespace optrec
