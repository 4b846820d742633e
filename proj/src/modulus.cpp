#include "optrec/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace optrec {

namespace {

constexpr double kAxiomTol = 1e-12;

void check_knots(std::vector<std::pair<double, double>>& knots) {
  if (knots.empty()) throw std::invalid_argument("modulus: knot list is empty");
  std::sort(knots.begin(), knots.end());
  if (knots.front().first < 0.0) throw std::invalid_argument("modulus: knot abscissa < 0");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (knots[i].first <= knots[i - 1].first)
      throw std::invalid_argument("modulus: knot abscissas must be strictly increasing");
  }
  for (const auto& [t, w] : knots) {
    if (w < 0.0) throw std::invalid_argument("modulus: negative knot value");
  }
  if (knots.front().first > 0.0) {
    knots.insert(knots.begin(), {0.0, 0.0});
  } else if (knots.front().second != 0.0) {
    throw std::invalid_argument("modulus: w(0) must be 0");
  }
}

double interp_knots(const std::vector<std::pair<double, double>>& knots, double t) {
  if (t >= knots.back().first) return knots.back().second;  // constant extension
  auto it = std::upper_bound(knots.begin(), knots.end(), std::make_pair(t, 1e300));
  // it points past the segment containing t; knots.front().first == 0 <= t
  const auto& [t1, w1] = *it;
  const auto& [t0, w0] = *(it - 1);
  const double lam = (t - t0) / (t1 - t0);
  return w0 + lam * (w1 - w0);
}

}  // namespace

ModulusSpec ModulusSpec::power(double c, double alpha) {
  if (!(c > 0.0)) throw std::invalid_argument("power modulus: c must be > 0");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("power modulus: alpha must be in (0, 1]");
  ModulusSpec m;
  m.kind = ModulusKind::Power;
  m.coeff = c;
  m.exponent = alpha;
  return m;
}

ModulusSpec ModulusSpec::capped_linear(double c, double cap) {
  if (!(c > 0.0)) throw std::invalid_argument("capped-linear modulus: c must be > 0");
  if (!(cap > 0.0)) throw std::invalid_argument("capped-linear modulus: cap must be > 0");
  ModulusSpec m;
  m.kind = ModulusKind::CappedLinear;
  m.coeff = c;
  m.cap = cap;
  return m;
}

ModulusSpec ModulusSpec::piecewise_linear_concave(std::vector<std::pair<double, double>> knots) {
  check_knots(knots);
  ModulusSpec m;
  m.kind = ModulusKind::PiecewiseLinearConcave;
  m.knots = std::move(knots);
  return m;
}

ModulusSpec ModulusSpec::table(std::vector<std::pair<double, double>> samples) {
  check_knots(samples);
  ModulusSpec m;
  m.kind = ModulusKind::Table;
  m.knots = std::move(samples);
  return m;
}

std::string ModulusSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ModulusKind::Power:
      os << "power(c=" << coeff << ",alpha=" << exponent << ")";
      break;
    case ModulusKind::CappedLinear:
      os << "capped-linear(c=" << coeff << ",cap=" << cap << ")";
      break;
    case ModulusKind::PiecewiseLinearConcave:
      os << "piecewise-linear-concave(" << knots.size() << " knots)";
      break;
    case ModulusKind::Table:
      os << "table(" << knots.size() << " samples)";
      break;
  }
  return os.str();
}

double eval_modulus(const ModulusSpec& m, double t) {
  if (t < 0.0) throw std::domain_error("eval_modulus: t < 0");
  if (t == 0.0) return 0.0;
  switch (m.kind) {
    case ModulusKind::Power:
      return m.coeff * std::pow(t, m.exponent);
    case ModulusKind::CappedLinear:
      return std::min(m.coeff * t, m.cap);
    case ModulusKind::PiecewiseLinearConcave:
    case ModulusKind::Table:
      return interp_knots(m.knots, t);
  }
  return 0.0;  // unreachable
}

ModulusValidationReport validate_modulus(const ModulusSpec& m, int grid_size, double t_max) {
  if (grid_size < 2) throw std::invalid_argument("validate_modulus: grid_size must be >= 2");
  if (!(t_max > 0.0)) throw std::invalid_argument("validate_modulus: t_max must be > 0");

  ModulusValidationReport report;
  constexpr std::size_t kMaxStored = 64;
  auto record = [&](AxiomViolation v) {
    ++report.total_violations;
    if (report.violations.size() < kMaxStored) report.violations.push_back(std::move(v));
  };

  std::vector<double> ts(static_cast<std::size_t>(grid_size));
  std::vector<double> ws(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    ts[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / (grid_size - 1);
    ws[static_cast<std::size_t>(i)] = eval_modulus(m, ts[static_cast<std::size_t>(i)]);
  }

  if (ws[0] != 0.0) record({"zero", 0.0, 0.0, ws[0], 0.0});

  for (int i = 0; i + 1 < grid_size; ++i) {
    const auto a = static_cast<std::size_t>(i);
    if (ws[a + 1] + kAxiomTol < ws[a])
      record({"monotone", ts[a], ts[a + 1], ws[a], ws[a + 1]});
  }

  for (int i = 0; i < grid_size; ++i) {
    for (int j = i; j < grid_size; ++j) {
      const auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
      const double sum = eval_modulus(m, ts[a] + ts[b]);
      if (sum > ws[a] + ws[b] + kAxiomTol)
        record({"subadditive", ts[a], ts[b], sum, ws[a] + ws[b]});
    }
  }
  return report;
}

}  // namespace optrec
