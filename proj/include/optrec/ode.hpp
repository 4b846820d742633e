#pragma once

#include <vector>

#include "optrec/matexp.hpp"
#include "optrec/operators.hpp"
#include "optrec/recovery.hpp"

namespace optrec {

// Initial value problem x' = S x + q on [a,b], x(a) = p, with the initial
// vector known within componentwise bounds p_err and each component of q
// known at sample points with error (one plain recovery method per component).
struct OdeProblem {
  Mat S;
  double a = 0.0, b = 1.0;
  std::vector<double> p;       // measured initial vector
  std::vector<double> p_err;   // componentwise bounds on the initial vector
  std::vector<RecoveryMethod> q_methods;  // size d, plain, on the interval [a,b]

  void validate() const;  // shapes, interval domains, plain variant, Metzler S
};

// Throws PreconditionError naming the offending entry if S is not
// essentially non-negative.
void require_metzler(const Mat& S);

// Recovered solution at time t:
//   e^{S(t-a)} p + int_a^t e^{S(u-a)} (L q-data)(u) du     (midpoint, res cells)
std::vector<double> ode_recover(const OdeProblem& prob,
                                const std::vector<std::vector<double>>& q_data, double t, int res);

struct OdeErrorResult {
  ErrorReport report;
  std::vector<double> component_norms;  // per-component Y norms before psi
};

// Optimal error || B e + C tau ||_psi: component i over t in [a,b] is
//   sum_j k_ij(t) e_j + sum_j int_a^t k_ij(u) tau_j(u) du,
// with k_ij(u) the entries of e^{S(u-a)}; Y in {L1, sup} over [a,b].
OdeErrorResult ode_optimal_error(const OdeProblem& prob, YNorm y, const PsiNorm& psi, int res);

}  // namespace optrec
