#pragma once

#include <string>
#include <utility>
#include <vector>

namespace optrec {

enum class ModulusKind { Power, CappedLinear, PiecewiseLinearConcave, Table };

// A modulus of continuity: nonnegative, nondecreasing, subadditive, w(0) = 0.
// Four parameterizations:
//   power                     w(t) = c * t^alpha,  c > 0, alpha in (0, 1]
//   capped-linear             w(t) = min(c * t, cap)
//   piecewise-linear-concave  linear interpolation through knots (t_i, w_i)
//   table                     sampled values, linear interpolation (axioms not
//                             guaranteed by construction; see validate_modulus)
// Knot-based kinds hold their last value beyond the final knot.
struct ModulusSpec {
  ModulusKind kind = ModulusKind::Power;
  double coeff = 1.0;
  double exponent = 1.0;
  double cap = 1.0;
  std::vector<std::pair<double, double>> knots;  // sorted by t; starts at (0, 0)

  static ModulusSpec power(double c, double alpha);
  static ModulusSpec capped_linear(double c, double cap);
  static ModulusSpec piecewise_linear_concave(std::vector<std::pair<double, double>> knots);
  static ModulusSpec table(std::vector<std::pair<double, double>> samples);

  std::string describe() const;
};

// w(t); throws std::domain_error for t < 0. w(0) == 0 exactly.
double eval_modulus(const ModulusSpec& m, double t);

struct AxiomViolation {
  std::string axiom;  // "zero", "monotone", "subadditive"
  double t1 = 0, t2 = 0;
  double lhs = 0, rhs = 0;
};

struct ModulusValidationReport {
  std::vector<AxiomViolation> violations;  // capped; see total
  int total_violations = 0;
  bool ok() const { return total_violations == 0; }
};

// Sampled axiom check on a uniform grid over [0, t_max] (grid_size >= 2 points).
// Tolerance for all comparisons is 1e-12.
ModulusValidationReport validate_modulus(const ModulusSpec& m, int grid_size, double t_max);

}  // namespace optrec
