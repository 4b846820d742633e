#include "optrec/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "optrec/csv.hpp"
#include "optrec/errors.hpp"

namespace optrec {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

FeasibleEnvelope envelope(const RecoveryMethod& method, std::span<const double> z,
                          std::span<const Point> nodes) {
  const InfoSpec& info = method.info();
  if (static_cast<int>(z.size()) != info.size())
    throw std::invalid_argument("envelope: data vector size mismatch");

  FeasibleEnvelope env;
  env.nodes.assign(nodes.begin(), nodes.end());
  env.data.assign(z.begin(), z.end());
  env.upper.resize(nodes.size());
  env.lower.resize(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double up = std::numeric_limits<double>::infinity();
    double lo = -up;
    for (int j = 0; j < info.size(); ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double w =
          eval_modulus(method.modulus(), method.domain().distance(nodes[k], info.points[ju]));
      up = std::min(up, z[ju] + info.errors[ju] + w);
      lo = std::max(lo, z[ju] - info.errors[ju] - w);
    }
    if (lo > up + 1e-12)
      throw InconsistentData("envelope: no feasible function (lower " + std::to_string(lo) +
                             " > upper " + std::to_string(up) + " at a node)");
    env.upper[k] = up;
    env.lower[k] = lo;
  }
  return env;
}

std::vector<double> sample_feasible(const RecoveryMethod& method, std::span<const double> z,
                                    std::span<const Point> nodes, std::uint64_t seed) {
  const FeasibleEnvelope env = envelope(method, z, nodes);
  const InfoSpec& info = method.info();
  const int n = info.size();
  std::mt19937_64 rng(splitmix64(seed));

  // sub-envelope masks, never empty
  std::vector<char> in_up(static_cast<std::size_t>(n)), in_lo(static_cast<std::size_t>(n));
  int cu = 0, cl = 0;
  for (int j = 0; j < n; ++j) {
    in_up[static_cast<std::size_t>(j)] = u01(rng) < 0.5;
    in_lo[static_cast<std::size_t>(j)] = u01(rng) < 0.5;
    cu += in_up[static_cast<std::size_t>(j)];
    cl += in_lo[static_cast<std::size_t>(j)];
  }
  if (cu == 0) in_up[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n))] = 1;
  if (cl == 0) in_lo[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n))] = 1;
  const double lambda = u01(rng);

  // rough candidate: convex mix of sub-envelopes plus jitter
  double scale = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    scale = std::max(scale, env.upper[k] - env.lower[k]);
  std::vector<double> y(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double up = std::numeric_limits<double>::infinity();
    double lo = -up;
    for (int j = 0; j < n; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const double w =
          eval_modulus(method.modulus(), method.domain().distance(nodes[k], info.points[ju]));
      if (in_up[ju]) up = std::min(up, z[ju] + info.errors[ju] + w);
      if (in_lo[ju]) lo = std::max(lo, z[ju] - info.errors[ju] - w);
    }
    y[k] = lambda * up + (1.0 - lambda) * lo + 0.25 * scale * (2.0 * u01(rng) - 1.0);
  }

  // one McShane smoothing pass: x1(t) = min_s (y(s) + w(rho(t,s)))
  std::vector<double> x(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < nodes.size(); ++s) {
      const double w = eval_modulus(method.modulus(), method.domain().distance(nodes[k], nodes[s]));
      best = std::min(best, y[s] + w);
    }
    x[k] = best;
  }

  // clamp into the envelope (and, for tilde classes, toward the boundary)
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double up = env.upper[k], lo = env.lower[k];
    if (method.variant() == Variant::Tilde) {
      const double bd = method.domain().boundary_distance(nodes[k]);
      if (std::isfinite(bd)) {
        const double cap = eval_modulus(method.modulus(), bd);
        up = std::min(up, cap);
        lo = std::max(lo, -cap);
      }
    }
    x[k] = std::max(lo, std::min(x[k], up));
  }
  return x;
}

namespace {

// || A sigma d ||_{Y,psi} for per-column deviations d_j given on the column's
// input grid nodes. Identity entries read the deviation at output node index.
double method_error_from_deviations(const OperatorMatrix& mat,
                                    const std::vector<std::vector<double>>& dev, YNorm y,
                                    const PsiNorm& psi) {
  std::vector<double> rows(static_cast<std::size_t>(mat.rows), 0.0);
  for (int i = 0; i < mat.rows; ++i) {
    const OutputSpace& out = mat.outputs[static_cast<std::size_t>(i)];
    double acc = 0.0, best = 0.0;
    for (std::size_t q = 0; q < out.grid.size(); ++q) {
      double r = 0.0;
      for (int j = 0; j < mat.cols; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const OperatorEntry& e = mat.at(i, j);
        if (e.is_zero()) continue;
        double v = 0.0;
        if (e.has_identity) {
          if (out.grid.size() != mat.input_grids[ju].size())
            throw std::invalid_argument(
                "verify_optimality: identity entries need matching input/output grids");
          v += dev[ju][q];
        }
        if (e.kernel) {
          const QuadratureGrid& in = mat.input_grids[ju];
          for (std::size_t k = 0; k < in.size(); ++k)
            v += in.weights[k] * e.kernel(out.grid.nodes[q], in.nodes[k]) * dev[ju][k];
        }
        r += mat.signs[ju] * v;
      }
      acc += out.grid.weights[q] * std::fabs(r);
      best = std::max(best, std::fabs(r));
    }
    rows[static_cast<std::size_t>(i)] = (y == YNorm::L1) ? acc : best;
  }
  return psi_norm(rows, psi);
}

// piecewise-linear interpolation through (q_j, z_j), 1-D columns only
std::vector<double> rival_linear_interp(const RecoveryMethod& m, std::span<const double> z,
                                        std::span<const Point> nodes) {
  const int n = m.n_points();
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return m.info().points[static_cast<std::size_t>(a)][0] <
           m.info().points[static_cast<std::size_t>(b)][0];
  });
  std::vector<double> qs(static_cast<std::size_t>(n)), zs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    qs[static_cast<std::size_t>(j)] = m.info().points[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])][0];
    zs[static_cast<std::size_t>(j)] = z[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
  }
  std::vector<double> out(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double t = nodes[k][0];
    if (t <= qs.front()) {
      out[k] = zs.front();
    } else if (t >= qs.back()) {
      out[k] = zs.back();
    } else {
      auto it = std::upper_bound(qs.begin(), qs.end(), t);
      const auto hi = static_cast<std::size_t>(it - qs.begin());
      const double lam = (t - qs[hi - 1]) / (qs[hi] - qs[hi - 1]);
      out[k] = zs[hi - 1] + lam * (zs[hi] - zs[hi - 1]);
    }
  }
  return out;
}

// datum of the nearest sample point, no error widening
std::vector<double> rival_nearest(const RecoveryMethod& m, std::span<const double> z,
                                  std::span<const Point> nodes) {
  std::vector<double> out(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int j = 0; j < m.n_points(); ++j) {
      const double d = m.domain().distance(nodes[k], m.info().points[static_cast<std::size_t>(j)]);
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    out[k] = z[static_cast<std::size_t>(arg)];
  }
  return out;
}

}  // namespace

VerifyReport verify_optimality(const OperatorMatrix& mat,
                               const std::vector<RecoveryMethod>& methods, YNorm y,
                               const PsiNorm& psi, int trials, std::uint64_t seed, double tol) {
  mat.validate();
  if (static_cast<int>(methods.size()) != mat.cols)
    throw std::invalid_argument("verify_optimality: need one method per column");

  VerifyReport report;
  const double optimal = optimal_error(mat, methods, y, psi).value;
  report.optimal_value = optimal;

  auto push = [&](VerifyRow row) {
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  };

  // clause (b): the witness pair x = sigma phi, z = 0 attains the bound
  {
    std::vector<std::vector<double>> dev(static_cast<std::size_t>(mat.cols));
    for (int j = 0; j < mat.cols; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const QuadratureGrid& in = mat.input_grids[ju];
      dev[ju].resize(in.size());
      for (std::size_t k = 0; k < in.size(); ++k)
        dev[ju][k] = mat.signs[ju] * methods[ju].majorant(in.nodes[k]);
    }
    const double attained = method_error_from_deviations(mat, dev, y, psi);
    const double sharp_tol = 1e-9 * std::max(1.0, optimal);
    push({-1, "sharpness", attained, optimal, std::fabs(attained - optimal) <= sharp_tol});
  }

  const bool rival_linear_ok = [&] {
    for (const auto& m : methods)
      if (m.domain().dim() != 1) return false;
    return true;
  }();
  double worst_linear = 0.0, worst_nearest = 0.0;

  // witness pair for the rivals: z = 0 maps to the zero function under both,
  // so their error at (sigma phi, 0) already equals the optimal value
  worst_linear = worst_nearest = optimal;

  // clause (a): sampled feasible pairs stay below the bound
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<std::vector<double>> dev(static_cast<std::size_t>(mat.cols));
    std::vector<std::vector<double>> dev_lin(static_cast<std::size_t>(mat.cols));
    std::vector<std::vector<double>> dev_near(static_cast<std::size_t>(mat.cols));
    for (int j = 0; j < mat.cols; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const RecoveryMethod& m = methods[ju];
      const QuadratureGrid& in = mat.input_grids[ju];
      const int n = m.n_points();

      // nodes: grid followed by the sample points (to read x0 at q_j)
      std::vector<Point> nodes(in.nodes);
      for (int p = 0; p < n; ++p) nodes.push_back(m.info().points[static_cast<std::size_t>(p)]);

      const std::uint64_t s0 = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial) * 3 + 1));
      const std::uint64_t sj = splitmix64(s0 ^ splitmix64(static_cast<std::uint64_t>(j) + 17));
      std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
      const std::vector<double> x0 = sample_feasible(m, zero, nodes, sj);

      std::mt19937_64 rng(splitmix64(sj ^ 0xabcdefULL));
      std::vector<double> z(static_cast<std::size_t>(n));
      for (int p = 0; p < n; ++p)
        z[static_cast<std::size_t>(p)] = x0[in.size() + static_cast<std::size_t>(p)] +
                                         (2.0 * u01(rng) - 1.0) * m.info().errors[static_cast<std::size_t>(p)];

      const std::vector<double> x = sample_feasible(m, z, nodes, splitmix64(sj + 99));
      dev[ju].resize(in.size());
      for (std::size_t k = 0; k < in.size(); ++k) dev[ju][k] = x[k] - m.recover(z, in.nodes[k]);

      const std::vector<double> near = rival_nearest(m, z, std::span<const Point>(in.nodes));
      dev_near[ju].resize(in.size());
      for (std::size_t k = 0; k < in.size(); ++k) dev_near[ju][k] = x[k] - near[k];
      if (rival_linear_ok) {
        const std::vector<double> lin = rival_linear_interp(m, z, std::span<const Point>(in.nodes));
        dev_lin[ju].resize(in.size());
        for (std::size_t k = 0; k < in.size(); ++k) dev_lin[ju][k] = x[k] - lin[k];
      }
    }
    const double err = method_error_from_deviations(mat, dev, y, psi);
    push({trial, "upper-bound", err, optimal + tol, err <= optimal + tol});
    worst_nearest = std::max(worst_nearest, method_error_from_deviations(mat, dev_near, y, psi));
    if (rival_linear_ok)
      worst_linear = std::max(worst_linear, method_error_from_deviations(mat, dev_lin, y, psi));
  }

  // clause (c): rivals cannot beat the bound
  push({-1, "rival:nearest", worst_nearest, optimal - tol, worst_nearest >= optimal - tol});
  if (rival_linear_ok)
    push({-1, "rival:linear", worst_linear, optimal - tol, worst_linear >= optimal - tol});

  return report;
}

double grid_minimax_oracle(const RecoveryMethod& method, int resolution) {
  const QuadratureGrid grid = method.domain().build_grid(resolution);
  const std::vector<double> zero(static_cast<std::size_t>(method.n_points()), 0.0);
  const FeasibleEnvelope env = envelope(method, zero, std::span<const Point>(grid.nodes));
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k)
    acc += grid.weights[k] * 0.5 * (env.upper[k] - env.lower[k]);
  return acc;
}

void write_verify_report(const VerifyReport& report, std::ostream& os) {
  os << "trial,clause,value,bound,pass\n";
  for (const VerifyRow& r : report.rows) {
    os << r.trial << "," << r.clause << "," << csv_double(r.value) << "," << csv_double(r.bound)
       << "," << (r.pass ? 1 : 0) << "\n";
  }
}

}  // namespace optrec
