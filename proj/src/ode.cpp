#include "optrec/ode.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "optrec/errors.hpp"

namespace optrec {

void require_metzler(const Mat& S) {
  int i = 0, j = 0;
  if (!essentially_nonnegative(S, &i, &j))
    throw PreconditionError("S is not essentially non-negative: entry (" + std::to_string(i + 1) +
                            "," + std::to_string(j + 1) + ") = " + std::to_string(S(i, j)) +
                            " < 0");
}

void OdeProblem::validate() const {
  const int d = S.n;
  if (d < 1) throw std::invalid_argument("OdeProblem: empty system");
  if (!(a < b)) throw std::invalid_argument("OdeProblem: need a < b");
  if (static_cast<int>(p.size()) != d || static_cast<int>(p_err.size()) != d)
    throw std::invalid_argument("OdeProblem: p / p_err must have d components");
  for (double e : p_err)
    if (!(e >= 0.0)) throw std::invalid_argument("OdeProblem: p_err must be >= 0");
  if (static_cast<int>(q_methods.size()) != d)
    throw std::invalid_argument("OdeProblem: need one recovery method per component");
  for (const auto& m : q_methods) {
    if (m.domain().kind() != DomainKind::Interval || m.domain().dim() != 1)
      throw std::invalid_argument("OdeProblem: q methods must live on the interval [a,b]");
    if (std::fabs(m.domain().lo(0) - a) > 1e-12 || std::fabs(m.domain().hi(0) - b) > 1e-12)
      throw std::invalid_argument("OdeProblem: q method interval does not match [a,b]");
    if (m.variant() != Variant::Plain)
      throw std::invalid_argument("OdeProblem: q methods must use the plain variant");
  }
  require_metzler(S);
}

std::vector<double> ode_recover(const OdeProblem& prob,
                                const std::vector<std::vector<double>>& q_data, double t,
                                int res) {
  prob.validate();
  const int d = prob.S.n;
  if (static_cast<int>(q_data.size()) != d)
    throw std::invalid_argument("ode_recover: need one data vector per component");
  if (t < prob.a - 1e-12 || t > prob.b + 1e-12)
    throw std::domain_error("ode_recover: t outside [a,b]");

  std::vector<double> x = matrix_exponential(prob.S, t - prob.a) * prob.p;

  const double h = (t - prob.a) / res;
  if (h > 0.0) {
    for (int k = 0; k < res; ++k) {
      const double u = prob.a + (k + 0.5) * h;
      const Mat E = matrix_exponential(prob.S, u - prob.a);
      std::vector<double> lq(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        lq[static_cast<std::size_t>(i)] =
            prob.q_methods[static_cast<std::size_t>(i)].recover(q_data[static_cast<std::size_t>(i)], pt(u));
      const std::vector<double> v = E * lq;
      for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] += h * v[static_cast<std::size_t>(i)];
    }
  }
  return x;
}

OdeErrorResult ode_optimal_error(const OdeProblem& prob, YNorm y, const PsiNorm& psi, int res) {
  prob.validate();
  const int d = prob.S.n;
  if (res < 2) throw ConfigError("ode_optimal_error: resolution must be >= 2");

  // endpoint grid u_0..u_res over [a,b]
  const double h = (prob.b - prob.a) / res;
  const auto nodes = static_cast<std::size_t>(res + 1);

  // k_ij(u) and tau_j(u) at every node
  std::vector<Mat> exps(nodes);
  std::vector<std::vector<double>> tau(nodes, std::vector<double>(static_cast<std::size_t>(d)));
  for (std::size_t l = 0; l < nodes; ++l) {
    const double u = prob.a + h * static_cast<double>(l);
    exps[l] = matrix_exponential(prob.S, u - prob.a);
    for (int j = 0; j < d; ++j)
      tau[l][static_cast<std::size_t>(j)] = prob.q_methods[static_cast<std::size_t>(j)].tau(pt(u));
  }

  // component value y_i(u_l) = sum_j k_ij(u_l) e_j + cumulative integral of k_ij tau_j
  std::vector<std::vector<double>> comp(static_cast<std::size_t>(d),
                                        std::vector<double>(nodes, 0.0));
  std::vector<double> running(static_cast<std::size_t>(d), 0.0);
  std::vector<double> integrand_prev(static_cast<std::size_t>(d), 0.0);
  for (std::size_t l = 0; l < nodes; ++l) {
    for (int i = 0; i < d; ++i) {
      double g = 0.0;  // sum_j k_ij(u_l) tau_j(u_l)
      double bpart = 0.0;
      for (int j = 0; j < d; ++j) {
        g += exps[l](i, j) * tau[l][static_cast<std::size_t>(j)];
        bpart += exps[l](i, j) * prob.p_err[static_cast<std::size_t>(j)];
      }
      if (l > 0)
        running[static_cast<std::size_t>(i)] +=
            0.5 * h * (integrand_prev[static_cast<std::size_t>(i)] + g);
      comp[static_cast<std::size_t>(i)][l] = bpart + running[static_cast<std::size_t>(i)];
      integrand_prev[static_cast<std::size_t>(i)] = g;
    }
  }

  OdeErrorResult result;
  result.component_norms.resize(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const auto& ci = comp[static_cast<std::size_t>(i)];
    double v = 0.0;
    if (y == YNorm::L1) {
      for (std::size_t l = 0; l + 1 < nodes; ++l) v += 0.5 * h * (ci[l] + ci[l + 1]);
    } else {
      for (double x : ci) v = std::max(v, std::fabs(x));
    }
    result.component_norms[static_cast<std::size_t>(i)] = v;
  }
  result.report.value = psi_norm(result.component_norms, psi);
  result.report.method = "ode/plain";
  result.report.norm = std::string(y == YNorm::L1 ? "L1" : "sup") + "/" + psi.describe();
  result.report.resolution = res;

  // coarse estimate: reuse every other node (trapezoid at step 2h)
  {
    std::vector<double> coarse(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) {
      const auto& ci = comp[static_cast<std::size_t>(i)];
      double v = 0.0;
      if (y == YNorm::L1) {
        for (std::size_t l = 0; l + 2 < nodes; l += 2) v += h * (ci[l] + ci[l + 2]);
      } else {
        for (std::size_t l = 0; l < nodes; l += 2) v = std::max(v, std::fabs(ci[l]));
      }
      coarse[static_cast<std::size_t>(i)] = v;
    }
    result.report.est_quad_err = std::fabs(result.report.value - psi_norm(coarse, psi));
  }
  return result;
}

}  // namespace optrec
