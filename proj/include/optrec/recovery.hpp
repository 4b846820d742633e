#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "optrec/domain.hpp"
#include "optrec/modulus.hpp"
#include "optrec/point.hpp"

namespace optrec {

// Sample points Q = {q_1..q_n} in M' and per-point error bounds e in R^n_+.
struct InfoSpec {
  std::vector<Point> points;
  std::vector<double> errors;
  int size() const { return static_cast<int>(points.size()); }
};

enum class Variant { Plain, Tilde };

// The optimal piecewise-constant recovery method for the class H^w (plain)
// or the boundary-vanishing class (tilde): majorant tau / tau_tilde,
// generalized Voronoi cells, and the recovery operator L / L~.
//
// Cell indices are 1..n; the tilde variant additionally uses 0 for the
// boundary-dominated zero cell. Exact and near (<= 1e-12) ties resolve to
// the smallest index.
class RecoveryMethod {
public:
  RecoveryMethod(Domain domain, ModulusSpec modulus, InfoSpec info, Variant variant);

  const Domain& domain() const { return domain_; }
  const ModulusSpec& modulus() const { return modulus_; }
  const InfoSpec& info() const { return info_; }
  Variant variant() const { return variant_; }
  int n_points() const { return info_.size(); }

  // min_j (e_j + w(rho(t, q_j))) on M'; 0 off M'.
  double tau(const Point& t) const;
  // min(tau(t), w(rho(t, boundary))) on M'; 0 off M'.
  double tau_tilde(const Point& t) const;
  // tau or tau_tilde according to the variant.
  double majorant(const Point& t) const;

  // Cell index of t in M' (throws std::domain_error off M').
  int assign_cell(const Point& t) const;

  // (L z)(t) resp. (L~ z)(t): z_j on cell j, 0 on the zero cell and off M'.
  double recover(std::span<const double> z, const Point& t) const;

  static constexpr double kTieTol = 1e-12;

private:
  Domain domain_;
  ModulusSpec modulus_;
  InfoSpec info_;
  Variant variant_;
};

// max over nodes of |x(t) - (L z)(t)| - majorant(t); <= ~0 for feasible x.
double pointwise_bound_check(const RecoveryMethod& method, std::span<const Point> nodes,
                             std::span<const double> x_values, std::span<const double> z);

// CSV emitters (single header row, full double round-trip formatting).
void write_tau_profile(const RecoveryMethod& method, const QuadratureGrid& grid, std::ostream& os);
void write_partition_map(const RecoveryMethod& method, const QuadratureGrid& grid, std::ostream& os);

}  // namespace optrec
