#include "optrec/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "optrec/errors.hpp"

namespace optrec {

namespace {

constexpr double kKernelNegTol = 1e-12;

std::string point_str(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.dim; ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

double checked_kernel(const KernelFn& k, const Point& s, const Point& t) {
  const double v = k(s, t);
  if (!std::isfinite(v))
    throw NumericalError("kernel value is not finite at output " + point_str(s) + ", input " +
                         point_str(t));
  return v;
}

double positive_kernel(const KernelFn& k, const Point& s, const Point& t) {
  const double v = checked_kernel(k, s, t);
  if (v < -kKernelNegTol)
    throw PreconditionError("kernel positivity violated: K" + point_str(s) + point_str(t) + " = " +
                            std::to_string(v));
  return v;
}

std::string variants_str(const std::vector<RecoveryMethod>& methods) {
  std::string s;
  for (const auto& m : methods) {
    if (!s.empty()) s += "+";
    s += (m.variant() == Variant::Plain) ? "plain" : "tilde";
  }
  return s;
}

}  // namespace

PsiNorm PsiNorm::weighted_l1(std::vector<double> w) {
  if (w.empty()) throw std::invalid_argument("weighted_l1: empty weight vector");
  for (double x : w)
    if (!(x > 0.0)) throw std::invalid_argument("weighted_l1: weights must be > 0");
  return {Kind::WeightedL1, std::move(w)};
}

std::string PsiNorm::describe() const {
  switch (kind) {
    case Kind::L1: return "l1";
    case Kind::L2: return "l2";
    case Kind::LInf: return "linf";
    case Kind::WeightedL1: return "weighted-l1";
  }
  return "?";
}

double psi_norm(std::span<const double> v, const PsiNorm& psi) {
  switch (psi.kind) {
    case PsiNorm::Kind::L1: {
      double s = 0.0;
      for (double x : v) s += std::fabs(x);
      return s;
    }
    case PsiNorm::Kind::L2: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case PsiNorm::Kind::LInf: {
      double s = 0.0;
      for (double x : v) s = std::max(s, std::fabs(x));
      return s;
    }
    case PsiNorm::Kind::WeightedL1: {
      if (psi.weights.size() != v.size())
        throw std::invalid_argument("weighted-l1: weight/vector size mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += psi.weights[i] * std::fabs(v[i]);
      return s;
    }
  }
  return 0.0;
}

OutputSpace OutputSpace::full(const Domain& dom, int resolution) {
  return {Kind::Full, dom.build_grid(resolution)};
}

OutputSpace OutputSpace::from_grid(QuadratureGrid g, Kind kind) { return {kind, std::move(g)}; }

OutputSpace OutputSpace::single_point(const Point& p) {
  QuadratureGrid g;
  g.nodes.push_back(p);
  g.weights.push_back(1.0);
  return {Kind::SinglePoint, std::move(g)};
}

OutputSpace OutputSpace::fixed_time(const Domain& spatial, double t0, int resolution) {
  QuadratureGrid g = spatial.build_grid(resolution);
  for (Point& p : g.nodes) p = with_time(p, t0);
  return {Kind::FixedTime, std::move(g)};
}

OutputSpace OutputSpace::fixed_point_ray(const Point& u0, double t_begin, double t_end,
                                         int resolution) {
  if (!(t_begin < t_end)) throw std::invalid_argument("fixed_point_ray: need t_begin < t_end");
  QuadratureGrid g;
  const double h = (t_end - t_begin) / resolution;
  for (int i = 0; i < resolution; ++i) {
    g.nodes.push_back(with_time(u0, t_begin + (i + 0.5) * h));
    g.weights.push_back(h);
  }
  return {Kind::FixedPointRay, std::move(g)};
}

void OperatorMatrix::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("OperatorMatrix: empty shape");
  if (entries.size() != static_cast<std::size_t>(rows * cols))
    throw std::invalid_argument("OperatorMatrix: entry count mismatch");
  if (static_cast<int>(signs.size()) != cols)
    throw std::invalid_argument("OperatorMatrix: need one sign per column");
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("OperatorMatrix: signs must be +1/-1");
  if (static_cast<int>(input_grids.size()) != cols)
    throw std::invalid_argument("OperatorMatrix: need one input grid per column");
  if (static_cast<int>(outputs.size()) != rows)
    throw std::invalid_argument("OperatorMatrix: need one output space per row");
}

double apply_entry(const OperatorEntry& entry, const QuadratureGrid& input_grid,
                   const ScalarField& x, const Point& s) {
  double acc = entry.has_identity ? x(s) : 0.0;
  if (entry.kernel) {
    for (std::size_t k = 0; k < input_grid.size(); ++k) {
      acc += input_grid.weights[k] * checked_kernel(entry.kernel, s, input_grid.nodes[k]) *
             x(input_grid.nodes[k]);
    }
  }
  return acc;
}

std::vector<double> recovered_solution(const OperatorMatrix& mat,
                                       const std::vector<RecoveryMethod>& methods,
                                       const std::vector<std::vector<double>>& data,
                                       const Point& s) {
  mat.validate();
  if (static_cast<int>(methods.size()) != mat.cols || static_cast<int>(data.size()) != mat.cols)
    throw std::invalid_argument("recovered_solution: need one method and one data vector per column");
  std::vector<double> out(static_cast<std::size_t>(mat.rows), 0.0);
  for (int j = 0; j < mat.cols; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const RecoveryMethod& m = methods[ju];
    const std::vector<double>& z = data[ju];
    ScalarField lz = [&m, &z](const Point& t) { return m.recover(z, t); };
    for (int i = 0; i < mat.rows; ++i) {
      const OperatorEntry& e = mat.at(i, j);
      if (e.is_zero()) continue;
      out[static_cast<std::size_t>(i)] +=
          mat.signs[ju] * apply_entry(e, mat.input_grids[ju], lz, s);
    }
  }
  return out;
}

namespace {

// Row norm of A phi for one row, via the iterated form (Y = L1) or a node max
// (Y = sup). Positivity of kernels is enforced here. The `stride` parameter
// subsamples input nodes (stride 2 with doubled weights) for the coarse
// quadrature-error estimate.
double row_value(const OperatorMatrix& mat, const std::vector<RecoveryMethod>& methods, int row,
                 YNorm y, int stride) {
  const OutputSpace& out = mat.outputs[static_cast<std::size_t>(row)];
  if (y == YNorm::L1) {
    double total = 0.0;
    for (int j = 0; j < mat.cols; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const OperatorEntry& e = mat.at(row, j);
      if (e.is_zero()) continue;
      const RecoveryMethod& m = methods[ju];
      if (e.has_identity) {
        for (std::size_t k = 0; k < out.grid.size(); k += static_cast<std::size_t>(stride))
          total += stride * out.grid.weights[k] * m.majorant(out.grid.nodes[k]);
      }
      if (e.kernel) {
        const QuadratureGrid& in = mat.input_grids[ju];
        for (std::size_t k = 0; k < in.size(); k += static_cast<std::size_t>(stride)) {
          const double phi = m.majorant(in.nodes[k]);
          double ck;
          if (e.column_integral) {
            ck = e.column_integral(in.nodes[k]);
          } else {
            ck = 0.0;
            for (std::size_t q = 0; q < out.grid.size(); ++q)
              ck += out.grid.weights[q] * positive_kernel(e.kernel, out.grid.nodes[q], in.nodes[k]);
          }
          total += stride * in.weights[k] * phi * ck;
        }
      }
    }
    return total;
  }
  // sup norm over the output grid
  double best = 0.0;
  for (std::size_t q = 0; q < out.grid.size(); ++q) {
    const Point& yq = out.grid.nodes[q];
    double v = 0.0;
    for (int j = 0; j < mat.cols; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      const OperatorEntry& e = mat.at(row, j);
      if (e.is_zero()) continue;
      const RecoveryMethod& m = methods[ju];
      if (e.has_identity) v += m.majorant(yq);
      if (e.kernel) {
        const QuadratureGrid& in = mat.input_grids[ju];
        for (std::size_t k = 0; k < in.size(); k += static_cast<std::size_t>(stride))
          v += stride * in.weights[k] * positive_kernel(e.kernel, yq, in.nodes[k]) *
               m.majorant(in.nodes[k]);
      }
    }
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

ErrorReport optimal_error(const OperatorMatrix& mat, const std::vector<RecoveryMethod>& methods,
                          YNorm y, const PsiNorm& psi) {
  mat.validate();
  if (static_cast<int>(methods.size()) != mat.cols)
    throw std::invalid_argument("optimal_error: need one method per column");

  std::vector<double> rows(static_cast<std::size_t>(mat.rows));
  std::vector<double> rows_coarse(static_cast<std::size_t>(mat.rows));
  for (int i = 0; i < mat.rows; ++i) {
    rows[static_cast<std::size_t>(i)] = row_value(mat, methods, i, y, 1);
    rows_coarse[static_cast<std::size_t>(i)] = row_value(mat, methods, i, y, 2);
  }

  ErrorReport rep;
  rep.value = psi_norm(rows, psi);
  rep.est_quad_err = std::fabs(rep.value - psi_norm(rows_coarse, psi));
  rep.method = variants_str(methods);
  rep.norm = std::string(y == YNorm::L1 ? "L1" : "sup") + "/" + psi.describe();
  int nodes = 0;
  for (const auto& g : mat.input_grids) nodes += static_cast<int>(g.size());
  rep.resolution = nodes;
  return rep;
}

double optimal_error_direct_l1(const OperatorMatrix& mat,
                               const std::vector<RecoveryMethod>& methods, const PsiNorm& psi) {
  mat.validate();
  std::vector<double> rows(static_cast<std::size_t>(mat.rows), 0.0);
  for (int i = 0; i < mat.rows; ++i) {
    const OutputSpace& out = mat.outputs[static_cast<std::size_t>(i)];
    double total = 0.0;
    for (std::size_t q = 0; q < out.grid.size(); ++q) {
      const Point& yq = out.grid.nodes[q];
      double v = 0.0;
      for (int j = 0; j < mat.cols; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const OperatorEntry& e = mat.at(i, j);
        if (e.is_zero()) continue;
        const RecoveryMethod& m = methods[ju];
        ScalarField phi = [&m](const Point& t) { return m.majorant(t); };
        v += apply_entry(e, mat.input_grids[ju], phi, yq);
      }
      total += out.grid.weights[q] * std::fabs(v);
    }
    rows[static_cast<std::size_t>(i)] = total;
  }
  return psi_norm(rows, psi);
}

OperatorMatrix identity_problem(const QuadratureGrid& grid) {
  OperatorMatrix mat;
  mat.rows = mat.cols = 1;
  mat.entries.resize(1);
  mat.entries[0].has_identity = true;
  mat.signs = {1};
  mat.input_grids = {grid};
  mat.outputs = {OutputSpace::from_grid(grid)};
  return mat;
}

}  // namespace optrec
