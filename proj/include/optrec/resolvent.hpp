#pragma once

#include <functional>
#include <vector>

#include "optrec/recovery.hpp"

namespace optrec {

using Kernel2D = std::function<double(double t, double s)>;

// Resolvent kernel Gamma = sum of iterated kernels, tabulated on a uniform
// tensor grid over [a,b]^2 with bilinear interpolation between nodes.
// Volterra tables are causal: Gamma(t,s) = 0 for s > t.
struct ResolventTable {
  enum class Kind { Volterra, Fredholm };
  Kind kind = Kind::Volterra;
  double a = 0.0, b = 1.0;
  int n = 0;                    // grid nodes per axis, endpoints included
  std::vector<double> values;   // Gamma(t_i, s_j), row-major
  int truncation_order = 0;
  double tail_estimate = 0.0;

  double node(int i) const { return a + (b - a) * i / (n - 1); }
  double step() const { return (b - a) / (n - 1); }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i * n + j)]; }
  double operator()(double t, double s) const;  // bilinear
};

// Gamma via k_m(t,s) = int_s^t k(t,u) k_{m-1}(u,s) du, truncated when the sup
// of the last term drops below tol. Throws NumericalError if max_order is hit.
ResolventTable volterra_resolvent(const Kernel2D& k, double a, double b, int grid_nodes,
                                  double tol, int max_order = 64);

// Gamma via k_m(t,s) = int_a^b k_{m-1}(t,u) k(u,s) du; requires the
// double square integral of k over [a,b]^2 to be < 1 (PreconditionError
// otherwise, naming the computed value). Geometric-rate truncation.
ResolventTable fredholm_resolvent(const Kernel2D& k, double a, double b, int grid_nodes,
                                  double tol, int max_order = 512);

// f(t) + int Gamma(t,s) f(s) ds, the integral over [a,t] (Volterra) or [a,b].
double solve_second_kind(const ResolventTable& table, const std::function<double(double)>& f,
                         double t);

// Closed-form L1 optimal error: int_a^b (1 + int Gamma(t,s) dt) tau(s) ds,
// the inner integral over [s,b] (Volterra) or [a,b].
double resolvent_l1_optimal_error(const ResolventTable& table, const RecoveryMethod& method);

}  // namespace optrec
