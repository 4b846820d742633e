#include "optrec/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "optrec/errors.hpp"

namespace optrec {

namespace {

// Composite Simpson over consecutive uniform nodes; odd segment counts use a
// 3/8 rule on the last three segments, a single segment falls back to the
// trapezoid.
double simpson_nodes(std::span<const double> v, double h) {
  const std::size_t m = v.size();
  if (m < 2) return 0.0;
  const std::size_t segs = m - 1;
  if (segs == 1) return 0.5 * h * (v[0] + v[1]);
  std::size_t simpson_end = segs;  // node index where the plain Simpson part stops
  double extra = 0.0;
  if (segs % 2 == 1) {
    if (segs >= 3) {
      simpson_end = segs - 3;
      extra = 3.0 * h / 8.0 *
              (v[simpson_end] + 3.0 * v[simpson_end + 1] + 3.0 * v[simpson_end + 2] + v[segs]);
    }
  }
  double s = 0.0;
  if (simpson_end >= 2) {
    s = v[0] + v[simpson_end];
    for (std::size_t i = 1; i < simpson_end; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * v[i];
    s *= h / 3.0;
  }
  return s + extra;
}

double table_sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

double ResolventTable::operator()(double t, double s) const {
  if (kind == Kind::Volterra && s > t) return 0.0;
  const double h = step();
  auto clampi = [&](double x) {
    int i = static_cast<int>(std::floor((x - a) / h));
    return std::clamp(i, 0, n - 2);
  };
  const int i = clampi(t), j = clampi(s);
  const double lt = (t - node(i)) / h, ls = (s - node(j)) / h;
  const double v00 = at(i, j), v01 = at(i, j + 1), v10 = at(i + 1, j), v11 = at(i + 1, j + 1);
  return (1 - lt) * ((1 - ls) * v00 + ls * v01) + lt * ((1 - ls) * v10 + ls * v11);
}

ResolventTable volterra_resolvent(const Kernel2D& k, double a, double b, int grid_nodes,
                                  double tol, int max_order) {
  if (!(a < b)) throw std::invalid_argument("volterra_resolvent: need a < b");
  if (grid_nodes < 3) throw ConfigError("volterra_resolvent: need at least 3 grid nodes");
  if (!(tol > 0.0)) throw std::invalid_argument("volterra_resolvent: tol must be > 0");

  const int n = grid_nodes;
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const double h = (b - a) / (n - 1);
  auto node = [&](int i) { return a + h * i; };

  std::vector<double> gamma(nn, 0.0), prev(nn, 0.0), next(nn, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = k(node(i), node(j));
      if (!std::isfinite(v))
        throw NumericalError("volterra_resolvent: kernel not finite at (" +
                             std::to_string(node(i)) + "," + std::to_string(node(j)) + ")");
      prev[static_cast<std::size_t>(i * n + j)] = v;
      gamma[static_cast<std::size_t>(i * n + j)] = v;
    }

  double prev_sup = table_sup(prev);
  std::vector<double> integrand(static_cast<std::size_t>(n));
  ResolventTable table;
  table.kind = ResolventTable::Kind::Volterra;
  table.a = a;
  table.b = b;
  table.n = n;
  table.truncation_order = 1;

  for (int order = 2; order <= max_order; ++order) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        // int_{s_j}^{t_i} k(t_i, u) k_{m-1}(u, s_j) du over nodes j..i
        const int len = i - j + 1;
        for (int l = 0; l < len; ++l)
          integrand[static_cast<std::size_t>(l)] =
              k(node(i), node(j + l)) * prev[static_cast<std::size_t>((j + l) * n + j)];
        next[static_cast<std::size_t>(i * n + j)] =
            simpson_nodes(std::span<const double>(integrand.data(), static_cast<std::size_t>(len)), h);
      }
    }
    const double sup = table_sup(next);
    for (std::size_t idx = 0; idx < nn; ++idx) gamma[idx] += next[idx];
    table.truncation_order = order;
    if (sup < tol) {
      const double ratio = prev_sup > 0.0 ? std::min(0.9, sup / prev_sup) : 0.0;
      table.tail_estimate = sup * ratio / (1.0 - ratio);
      table.values = std::move(gamma);
      return table;
    }
    prev.swap(next);
    prev_sup = sup;
  }
  throw NumericalError("volterra_resolvent: series did not converge within " +
                       std::to_string(max_order) + " orders (last term sup = " +
                       std::to_string(prev_sup) + ")");
}

ResolventTable fredholm_resolvent(const Kernel2D& k, double a, double b, int grid_nodes,
                                  double tol, int max_order) {
  if (!(a < b)) throw std::invalid_argument("fredholm_resolvent: need a < b");
  if (grid_nodes < 3) throw ConfigError("fredholm_resolvent: need at least 3 grid nodes");
  if (!(tol > 0.0)) throw std::invalid_argument("fredholm_resolvent: tol must be > 0");

  const int n = grid_nodes;
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const double h = (b - a) / (n - 1);
  auto node = [&](int i) { return a + h * i; };
  std::vector<double> w(static_cast<std::size_t>(n), h);  // trapezoid weights
  w.front() = w.back() = 0.5 * h;

  std::vector<double> k1(nn);
  double sq = 0.0;  // double square integral of k
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = k(node(i), node(j));
      if (!std::isfinite(v))
        throw NumericalError("fredholm_resolvent: kernel not finite at (" +
                             std::to_string(node(i)) + "," + std::to_string(node(j)) + ")");
      k1[static_cast<std::size_t>(i * n + j)] = v;
      sq += w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] * v * v;
    }
  if (sq >= 1.0 - 1e-12)
    throw PreconditionError(
        "fredholm_resolvent: square-integrability premise violated, the double integral of k^2 "
        "over the square is " + std::to_string(sq) + " (must be < 1)");

  std::vector<double> gamma = k1, prev = k1, next(nn, 0.0);
  double prev_sup = table_sup(prev);
  ResolventTable table;
  table.kind = ResolventTable::Kind::Fredholm;
  table.a = a;
  table.b = b;
  table.n = n;
  table.truncation_order = 1;

  for (int order = 2; order <= max_order; ++order) {
    // k_m = k_{m-1} . W . k
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += prev[static_cast<std::size_t>(i * n + l)] * w[static_cast<std::size_t>(l)] *
               k1[static_cast<std::size_t>(l * n + j)];
        next[static_cast<std::size_t>(i * n + j)] = s;
      }
    const double sup = table_sup(next);
    for (std::size_t idx = 0; idx < nn; ++idx) gamma[idx] += next[idx];
    table.truncation_order = order;
    const double q = prev_sup > 0.0 ? sup / prev_sup : 0.0;
    if (q < 1.0) {
      const double tail = sup * q / (1.0 - q);
      if (tail < tol || sup == 0.0) {
        table.tail_estimate = tail;
        table.values = std::move(gamma);
        return table;
      }
    }
    prev.swap(next);
    prev_sup = sup;
  }
  throw NumericalError("fredholm_resolvent: series did not converge within " +
                       std::to_string(max_order) + " orders");
}

double solve_second_kind(const ResolventTable& table, const std::function<double(double)>& f,
                         double t) {
  const int n = table.n;
  const double h = table.step();
  double upper = table.b;
  if (table.kind == ResolventTable::Kind::Volterra) {
    if (t < table.a - 1e-12 || t > table.b + 1e-12)
      throw std::domain_error("solve_second_kind: t outside [a,b]");
    upper = t;
  }
  // integrate Gamma(t,s) f(s) over [a, upper]: full grid segments + remainder
  const int full = std::clamp(static_cast<int>(std::floor((upper - table.a) / h)), 0, n - 1);
  std::vector<double> g(static_cast<std::size_t>(full + 1));
  for (int l = 0; l <= full; ++l) g[static_cast<std::size_t>(l)] = table(t, table.node(l)) * f(table.node(l));
  double integral = simpson_nodes(g, h);
  const double rest = upper - table.node(full);
  if (rest > 1e-14) {
    const double ga = table(t, table.node(full)) * f(table.node(full));
    const double gb = table(t, upper) * f(upper);
    integral += 0.5 * rest * (ga + gb);
  }
  return f(t) + integral;
}

double resolvent_l1_optimal_error(const ResolventTable& table, const RecoveryMethod& method) {
  const int n = table.n;
  const double h = table.step();
  std::vector<double> outer(static_cast<std::size_t>(n));
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int start = table.kind == ResolventTable::Kind::Volterra ? j : 0;
    const int len = n - start;
    for (int i = start; i < n; ++i) col[static_cast<std::size_t>(i - start)] = table.at(i, j);
    const double inner =
        simpson_nodes(std::span<const double>(col.data(), static_cast<std::size_t>(len)), h);
    outer[static_cast<std::size_t>(j)] = (1.0 + inner) * method.majorant(pt(table.node(j)));
  }
  return simpson_nodes(outer, h);
}

}  // namespace optrec
