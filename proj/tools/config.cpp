#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "optrec/errors.hpp"

namespace optrec::cli {

using nlohmann::json;

namespace {

Point parse_point(const json& j) {
  if (!j.is_array() || j.empty() || j.size() > 4)
    throw ConfigError("point must be an array of 1..4 numbers");
  Point p;
  for (const auto& v : j) p.coord[static_cast<std::size_t>(p.dim++)] = v.get<double>();
  return p;
}

Domain parse_domain(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "interval") {
    const auto b = j.at("bounds");
    return Domain::interval(b.at(0).get<double>(), b.at(1).get<double>());
  }
  if (kind == "box") {
    return Domain::box(j.at("lo").get<std::vector<double>>(),
                       j.at("hi").get<std::vector<double>>());
  }
  if (kind == "disk") return Domain::disk(parse_point(j.at("center")), j.at("radius").get<double>());
  if (kind == "circle")
    return Domain::circle(parse_point(j.at("center")), j.at("radius").get<double>());
  if (kind == "spacetime-box") {
    const auto t = j.at("time");
    return Domain::spacetime_box(j.at("lo").get<std::vector<double>>(),
                                 j.at("hi").get<std::vector<double>>(), t.at(0).get<double>(),
                                 t.at(1).get<double>());
  }
  throw ConfigError("unknown domain kind '" + kind + "'");
}

ModulusSpec parse_modulus(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") return ModulusSpec::power(j.at("c").get<double>(), j.at("alpha").get<double>());
  if (kind == "capped-linear")
    return ModulusSpec::capped_linear(j.at("c").get<double>(), j.at("cap").get<double>());
  auto knots = [&](const char* key) {
    std::vector<std::pair<double, double>> ks;
    for (const auto& k : j.at(key)) ks.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
    return ks;
  };
  if (kind == "piecewise-linear-concave")
    return ModulusSpec::piecewise_linear_concave(knots("knots"));
  if (kind == "table") return ModulusSpec::table(knots("samples"));
  throw ConfigError("unknown modulus kind '" + kind + "'");
}

RecoveryMethod parse_block(const json& j) {
  Domain dom = parse_domain(j.at("domain"));
  ModulusSpec mod = parse_modulus(j.at("modulus"));
  InfoSpec info;
  for (const auto& q : j.at("points")) info.points.push_back(parse_point(q));
  info.errors = j.at("errors").get<std::vector<double>>();
  Variant variant = Variant::Plain;
  if (j.contains("variant")) {
    const std::string v = j.at("variant").get<std::string>();
    if (v == "tilde")
      variant = Variant::Tilde;
    else if (v != "plain")
      throw ConfigError("variant must be 'plain' or 'tilde'");
  }
  return RecoveryMethod(std::move(dom), std::move(mod), std::move(info), variant);
}

Kernel2D parse_kernel(const json& j, std::string& desc) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    const double v = j.at("value").get<double>();
    desc = "constant(" + std::to_string(v) + ")";
    return [v](double, double) { return v; };
  }
  if (kind == "scaled-ts") {
    const double c = j.at("c").get<double>();
    desc = "scaled-ts(" + std::to_string(c) + ")";
    return [c](double t, double s) { return c * t * s; };
  }
  if (kind == "exp-diff") {
    const double c = j.at("c").get<double>();
    const double rate = j.at("rate").get<double>();
    desc = "exp-diff(" + std::to_string(c) + "," + std::to_string(rate) + ")";
    return [c, rate](double t, double s) { return c * std::exp(rate * (t - s)); };
  }
  throw ConfigError("unknown kernel kind '" + kind + "'");
}

PsiNorm parse_psi(const json& norm) {
  const std::string psi = norm.value("psi", "l1");
  if (psi == "l1") return PsiNorm::l1();
  if (psi == "l2") return PsiNorm::l2();
  if (psi == "linf") return PsiNorm::linf();
  if (psi == "weighted-l1")
    return PsiNorm::weighted_l1(norm.at("weights").get<std::vector<double>>());
  throw ConfigError("unknown psi norm '" + psi + "'");
}

void check_arity(const ProblemConfig& cfg) {
  const auto blocks = cfg.methods.size();
  const std::string& p = cfg.problem;
  auto need = [&](std::size_t want, const std::string& why) {
    if (blocks != want)
      throw ConfigError("problem '" + p + "' needs " + std::to_string(want) + " block(s) (" + why +
                        "), got " + std::to_string(blocks));
  };
  if (p == "identity" || p == "volterra" || p == "fredholm") {
    need(1, "one unknown function");
    if (p != "identity" && cfg.methods[0].domain().kind() != DomainKind::Interval)
      throw ConfigError(p + ": the block domain must be an interval");
  } else if (p == "ode") {
    if (cfg.S.n < 1) throw ConfigError("ode: missing S matrix");
    need(static_cast<std::size_t>(cfg.S.n), "one q component per system row");
    if (static_cast<int>(cfg.p.size()) != cfg.S.n ||
        static_cast<int>(cfg.p_errors.size()) != cfg.S.n)
      throw ConfigError("ode: p / p_errors must have d entries");
  } else if (p == "poisson-disk") {
    need(2, "interior source and boundary trace");
    if (cfg.methods[0].domain().kind() != DomainKind::Disk ||
        cfg.methods[1].domain().kind() != DomainKind::Circle)
      throw ConfigError("poisson-disk: blocks must live on a disk and its circle");
  } else if (p == "heat") {
    if ((cfg.heat_case == "ray" || cfg.heat_case == "point") && cfg.u0.dim != cfg.d)
      throw ConfigError("heat: the '" + cfg.heat_case + "' case needs a d-dimensional u0");
    need(2, "source on a spacetime box and initial data");
    if (cfg.methods[0].domain().kind() != DomainKind::SpacetimeBox)
      throw ConfigError("heat: the source block must live on a spacetime box");
    if (cfg.methods[0].domain().space_dim() != cfg.d ||
        cfg.methods[1].domain().space_dim() != cfg.d)
      throw ConfigError("heat: block dimensions must match d");
  } else if (p == "wave") {
    if (cfg.d == 1)
      need(3, "source, initial form, initial velocity");
    else if (cfg.d == 2 || cfg.d == 3)
      need(2, "source and initial velocity");
    else
      throw ConfigError("wave: d must be 1, 2 or 3");
    if (cfg.methods[0].domain().kind() != DomainKind::SpacetimeBox)
      throw ConfigError("wave: the source block must live on a spacetime box");
  } else {
    throw ConfigError("unknown problem kind '" + p + "'");
  }
}

}  // namespace

int ProblemConfig::n_total() const {
  int n = 0;
  for (const auto& m : methods) n += m.n_points();
  return n;
}

double ProblemConfig::e_min() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& m : methods)
    for (double e : m.info().errors) v = std::min(v, e);
  return v;
}

double ProblemConfig::e_max() const {
  double v = 0.0;
  for (const auto& m : methods)
    for (double e : m.info().errors) v = std::max(v, e);
  return v;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }

  try {
    ProblemConfig cfg;
    cfg.problem = j.at("problem").get<std::string>();
    cfg.resolution = j.value("resolution", 256);
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.trials = j.value("trials", 100);
    cfg.data_path = j.value("data", std::string{});
    if (j.contains("norm")) {
      const auto& norm = j.at("norm");
      const std::string y = norm.value("Y", "l1");
      if (y == "l1")
        cfg.y = YNorm::L1;
      else if (y == "sup")
        cfg.y = YNorm::Sup;
      else
        throw ConfigError("norm.Y must be 'l1' or 'sup'");
      cfg.psi = parse_psi(norm);
    }
    for (const auto& b : j.at("blocks")) cfg.methods.push_back(parse_block(b));

    if (j.contains("kernel")) cfg.kernel = parse_kernel(j.at("kernel"), cfg.kernel_desc);
    cfg.tolerance = j.value("tolerance", 1e-10);
    if (j.contains("S")) {
      const auto& rows = j.at("S");
      cfg.S = Mat(static_cast<int>(rows.size()));
      for (int i = 0; i < cfg.S.n; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != cfg.S.n) throw ConfigError("S must be square");
        for (int k = 0; k < cfg.S.n; ++k) cfg.S(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
      }
    }
    if (j.contains("p")) cfg.p = j.at("p").get<std::vector<double>>();
    if (j.contains("p_errors")) cfg.p_errors = j.at("p_errors").get<std::vector<double>>();
    if (j.contains("r")) cfg.radius = j.at("r").get<double>();
    if (j.contains("center")) cfg.center = parse_point(j.at("center"));
    cfg.d = j.value("d", 1);
    if (j.contains("t0")) cfg.t0 = j.at("t0").get<double>();
    if (j.contains("u0")) cfg.u0 = parse_point(j.at("u0"));
    cfg.heat_case = j.value("case", std::string{"fixed-time"});
    if (j.contains("output")) {
      const auto& o = j.at("output");
      OutputSlice slice;
      slice.kind = o.value("slice", std::string{"fixed-time"});
      slice.t0 = o.value("t0", cfg.t0);
      slice.t_end = o.value("t_end", 2.0 * slice.t0);
      if (o.contains("u0")) slice.u0 = parse_point(o.at("u0"));
      if (o.contains("lo")) slice.lo = o.at("lo").get<std::vector<double>>();
      if (o.contains("hi")) slice.hi = o.at("hi").get<std::vector<double>>();
      slice.resolution = o.value("resolution", 128);
      cfg.output = slice;
    }

    check_arity(cfg);

    if (cfg.problem == "volterra" || cfg.problem == "fredholm") {
      if (!cfg.kernel) throw ConfigError(cfg.problem + ": missing kernel block");
    }
    if (cfg.problem == "poisson-disk") {
      const Domain& disk = cfg.methods[0].domain();
      if (j.contains("r") && std::fabs(cfg.radius - disk.radius()) > 1e-12)
        throw ConfigError("poisson-disk: r does not match the disk block radius");
      if (j.contains("center") && euclidean(cfg.center, disk.center()) > 1e-12)
        throw ConfigError("poisson-disk: center does not match the disk block center");
      cfg.radius = disk.radius();
      cfg.center = disk.center();
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError("config error: " + std::string(e.what()));
  }
}

std::vector<std::vector<double>> load_measurements(const std::string& path,
                                                   const std::vector<RecoveryMethod>& methods) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open measurement file '" + path + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("index,z", 0) != 0)
    throw ConfigError("measurement file must start with the header 'index,z'");
  std::vector<double> flat;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string idx, val;
    if (!std::getline(row, idx, ',') || !std::getline(row, val, ','))
      throw ConfigError("bad measurement row: '" + line + "'");
    const auto want = static_cast<std::size_t>(std::stol(idx));
    if (want != flat.size())
      throw ConfigError("measurement indices must be contiguous from 0 (got " + idx + ")");
    flat.push_back(std::stod(val));
  }
  std::vector<std::vector<double>> out;
  std::size_t pos = 0;
  for (const auto& m : methods) {
    const auto n = static_cast<std::size_t>(m.n_points());
    if (pos + n > flat.size()) throw ConfigError("measurement file has too few rows");
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                     flat.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
  }
  if (pos != flat.size()) throw ConfigError("measurement file has extra rows");
  return out;
}

}  // namespace optrec::cli
