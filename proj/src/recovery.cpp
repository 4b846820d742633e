#include "optrec/recovery.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "optrec/csv.hpp"

namespace optrec {

RecoveryMethod::RecoveryMethod(Domain domain, ModulusSpec modulus, InfoSpec info, Variant variant)
    : domain_(std::move(domain)), modulus_(std::move(modulus)), info_(std::move(info)),
      variant_(variant) {
  if (info_.size() < 1) throw std::invalid_argument("RecoveryMethod: need at least one point");
  if (info_.points.size() != info_.errors.size())
    throw std::invalid_argument("RecoveryMethod: points/errors size mismatch");
  for (int j = 0; j < info_.size(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    if (info_.points[ju].dim != domain_.dim())
      throw std::invalid_argument("RecoveryMethod: point dimension mismatch");
    if (!domain_.contains(info_.points[ju]))
      throw std::invalid_argument("RecoveryMethod: q_" + std::to_string(j + 1) +
                                  " lies outside the domain");
    if (!(info_.errors[ju] >= 0.0))
      throw std::invalid_argument("RecoveryMethod: error bounds must be >= 0");
  }
}

double RecoveryMethod::tau(const Point& t) const {
  if (!domain_.contains(t)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < info_.size(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const double v = info_.errors[ju] + eval_modulus(modulus_, domain_.distance(t, info_.points[ju]));
    best = std::min(best, v);
  }
  return best;
}

double RecoveryMethod::tau_tilde(const Point& t) const {
  if (!domain_.contains(t)) return 0.0;
  const double base = tau(t);
  const double bd = domain_.boundary_distance(t);
  if (!std::isfinite(bd)) return base;  // empty boundary (circle)
  return std::min(base, eval_modulus(modulus_, bd));
}

double RecoveryMethod::majorant(const Point& t) const {
  return variant_ == Variant::Plain ? tau(t) : tau_tilde(t);
}

int RecoveryMethod::assign_cell(const Point& t) const {
  if (!domain_.contains(t)) throw std::domain_error("assign_cell: point outside the domain");
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> vals(static_cast<std::size_t>(info_.size()));
  for (int j = 0; j < info_.size(); ++j) {
    const auto ju = static_cast<std::size_t>(j);
    vals[ju] = info_.errors[ju] + eval_modulus(modulus_, domain_.distance(t, info_.points[ju]));
    best = std::min(best, vals[ju]);
  }
  if (variant_ == Variant::Tilde) {
    const double bd = domain_.boundary_distance(t);
    if (std::isfinite(bd) && eval_modulus(modulus_, bd) <= best + kTieTol) return 0;
  }
  for (int j = 0; j < info_.size(); ++j) {
    if (vals[static_cast<std::size_t>(j)] <= best + kTieTol) return j + 1;
  }
  return info_.size();  // unreachable
}

double RecoveryMethod::recover(std::span<const double> z, const Point& t) const {
  if (static_cast<int>(z.size()) != info_.size())
    throw std::invalid_argument("recover: data vector size mismatch");
  if (!domain_.contains(t)) return 0.0;
  const int cell = assign_cell(t);
  return cell == 0 ? 0.0 : z[static_cast<std::size_t>(cell - 1)];
}

double pointwise_bound_check(const RecoveryMethod& method, std::span<const Point> nodes,
                             std::span<const double> x_values, std::span<const double> z) {
  if (nodes.size() != x_values.size())
    throw std::invalid_argument("pointwise_bound_check: nodes/values size mismatch");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double dev = std::fabs(x_values[i] - method.recover(z, nodes[i]));
    worst = std::max(worst, dev - method.majorant(nodes[i]));
  }
  return worst;
}

void write_tau_profile(const RecoveryMethod& method, const QuadratureGrid& grid, std::ostream& os) {
  const int d = method.domain().dim();
  for (int a = 0; a < d; ++a) os << method.domain().coord_name(a) << ",";
  os << "tau\n";
  for (const Point& p : grid.nodes) {
    for (int a = 0; a < d; ++a) os << csv_double(p[a]) << ",";
    os << csv_double(method.majorant(p)) << "\n";
  }
}

void write_partition_map(const RecoveryMethod& method, const QuadratureGrid& grid, std::ostream& os) {
  const int d = method.domain().dim();
  for (int a = 0; a < d; ++a) os << method.domain().coord_name(a) << ",";
  os << "cell_index\n";
  for (const Point& p : grid.nodes) {
    for (int a = 0; a < d; ++a) os << csv_double(p[a]) << ",";
    os << method.assign_cell(p) << "\n";
  }
}

}  // namespace optrec
