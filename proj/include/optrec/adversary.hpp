#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "optrec/operators.hpp"
#include "optrec/recovery.hpp"

namespace optrec {

// Brute-force feasible envelope of the data-consistent subclass
// {x in H^w : |x(q_j) - z_j| <= e_j}:
//   upper(t) = min_j (z_j + e_j + w(rho(t,q_j)))
//   lower(t) = max_j (z_j - e_j - w(rho(t,q_j)))
struct FeasibleEnvelope {
  std::vector<Point> nodes;
  std::vector<double> upper, lower;
  std::vector<double> data;
};

// Throws InconsistentData when lower > upper somewhere (no feasible x).
FeasibleEnvelope envelope(const RecoveryMethod& method, std::span<const double> z,
                          std::span<const Point> nodes);

// A random feasible function sampled at `nodes`: a rough random candidate is
// smoothed by one McShane pass (min_s y(s) + w(rho(t,s))) and clamped to the
// envelope; tilde methods additionally clamp to +-w(rho(t, boundary)).
// Deterministic per seed.
std::vector<double> sample_feasible(const RecoveryMethod& method, std::span<const double> z,
                                    std::span<const Point> nodes, std::uint64_t seed);

struct VerifyRow {
  int trial = 0;           // -1 for one-off clauses
  std::string clause;      // "upper-bound", "sharpness", "rival:<name>"
  double value = 0, bound = 0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool all_pass = true;
  double optimal_value = 0;
};

// Empirical check of the optimality claims:
//  (a) every sampled feasible pair has method error <= optimal + tol;
//  (b) the witness pair (sigma phi, 0) attains the optimal error within tol;
//  (c) fixed rival methods (piecewise-linear interpolation for 1-D columns,
//      nearest-sample) have worst-case sampled error >= optimal - tol.
// Identity entries require the row output grid to coincide with the column
// input grid. Each trial derives its own generator from (seed, trial).
VerifyReport verify_optimality(const OperatorMatrix& mat,
                               const std::vector<RecoveryMethod>& methods, YNorm y,
                               const PsiNorm& psi, int trials, std::uint64_t seed,
                               double tol = 1e-6);

// Discrete pointwise-minimax value at z = 0: int (upper - lower)/2 dmu on the
// resolution grid; equals the L1 norm of tau up to quadrature error.
double grid_minimax_oracle(const RecoveryMethod& method, int resolution);

void write_verify_report(const VerifyReport& report, std::ostream& os);

}  // namespace optrec
