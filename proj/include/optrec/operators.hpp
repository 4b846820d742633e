#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "optrec/domain.hpp"
#include "optrec/recovery.hpp"

namespace optrec {

using KernelFn = std::function<double(const Point& out, const Point& in)>;
using ScalarField = std::function<double(const Point&)>;

// Monotone norm on R^l combining per-component output norms.
struct PsiNorm {
  enum class Kind { L1, L2, LInf, WeightedL1 };
  Kind kind = Kind::L1;
  std::vector<double> weights;  // WeightedL1 only; positive

  static PsiNorm l1() { return {Kind::L1, {}}; }
  static PsiNorm l2() { return {Kind::L2, {}}; }
  static PsiNorm linf() { return {Kind::LInf, {}}; }
  static PsiNorm weighted_l1(std::vector<double> w);
  std::string describe() const;
};

double psi_norm(std::span<const double> v, const PsiNorm& psi);

enum class YNorm { L1, Sup };

// Output manifold N with measure nu, represented by a quadrature grid.
// Slice kinds: the full domain, a fixed-time hyperplane, a fixed-space ray,
// or a single point (weight-1 node).
struct OutputSpace {
  enum class Kind { Full, FixedTime, FixedPointRay, SinglePoint };
  Kind kind = Kind::Full;
  QuadratureGrid grid;

  static OutputSpace full(const Domain& dom, int resolution);
  static OutputSpace from_grid(QuadratureGrid g, Kind kind = Kind::Full);
  static OutputSpace single_point(const Point& p);
  // Nodes (v, t0) over a spatial domain grid; weights are the spatial weights.
  static OutputSpace fixed_time(const Domain& spatial, double t0, int resolution);
  // Nodes (u0, t), t in [t_begin, t_end] midpoints.
  static OutputSpace fixed_point_ray(const Point& u0, double t_begin, double t_end, int resolution);
};

// One block of the operator matrix: optionally the identity summand plus an
// integral operator with nonnegative kernel K(s,t). Both absent = zero block.
struct OperatorEntry {
  bool has_identity = false;
  KernelFn kernel;               // empty for pure identity / zero blocks
  ScalarField column_integral;   // optional analytic C(t) = integral of K(y,t) over N
  bool is_zero() const { return !has_identity && !kernel; }
};

// l x m operator matrix with a sign matrix sigma (one sign per column).
struct OperatorMatrix {
  int rows = 1, cols = 1;
  std::vector<OperatorEntry> entries;      // row-major, rows*cols
  std::vector<int> signs;                  // per column, +1/-1
  std::vector<QuadratureGrid> input_grids; // per column, quadrature on M'_j
  std::vector<OutputSpace> outputs;        // per row

  OperatorEntry& at(int i, int j) { return entries[static_cast<std::size_t>(i * cols + j)]; }
  const OperatorEntry& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i * cols + j)];
  }
  void validate() const;
};

// Quadrature application of one entry: identity part + sum_k w_k K(s,t_k) x(t_k).
// Throws NumericalError on non-finite kernel values (with the node location).
double apply_entry(const OperatorEntry& entry, const QuadratureGrid& input_grid,
                   const ScalarField& x, const Point& s);

// Phi z = A sigma L z evaluated at s, one data vector per column.
std::vector<double> recovered_solution(const OperatorMatrix& mat,
                                       const std::vector<RecoveryMethod>& methods,
                                       const std::vector<std::vector<double>>& data,
                                       const Point& s);

struct ErrorReport {
  double value = 0.0;           // units of the Y norm
  std::string method;           // variant summary per column
  std::string norm;             // Y / psi description
  int resolution = 0;           // total input quadrature nodes
  double est_quad_err = 0.0;    // coarse-resample estimate
};

// || A phi ||_psi with phi_j the majorant of column j's method. For Y = L1
// uses the iterated-integral form int phi_j(t) int K(y,t) dnu(y) dmu(t);
// for Y = sup, the max over output nodes. Independent of the signs.
// Throws PreconditionError on a negative kernel sample.
ErrorReport optimal_error(const OperatorMatrix& mat, const std::vector<RecoveryMethod>& methods,
                          YNorm y, const PsiNorm& psi);

// Direct route for Y = L1: int_N | sum_j (A_ij phi_j)(y) | dnu(y) per row,
// combined by psi. Cross-check for the iterated form above.
double optimal_error_direct_l1(const OperatorMatrix& mat,
                               const std::vector<RecoveryMethod>& methods, const PsiNorm& psi);

// 1x1 identity problem on the method's own domain/grid.
OperatorMatrix identity_problem(const QuadratureGrid& grid);

}  // namespace optrec
