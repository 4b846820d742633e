// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "optrec/adversary.hpp"
#include "optrec/errors.hpp"
#include "optrec/matexp.hpp"
#include "optrec/ode.hpp"
#include "optrec/operators.hpp"
#include "optrec/pde.hpp"
#include "optrec/recovery.hpp"
#include "optrec/resolvent.hpp"

using namespace optrec;
namespace fs = std::filesystem;
namespace {

constexpr double kPi = std::numbers::pi;

struct Check {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      note = msg;
    }
  }
};

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ModulusSpec random_modulus(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0:
      return ModulusSpec::power(0.5 + 1.5 * u01(rng), 0.3 + 0.7 * u01(rng));
    case 1:
      return ModulusSpec::capped_linear(0.5 + 1.5 * u01(rng), 0.2 + 0.8 * u01(rng));
    default: {
      // concave piecewise-linear ramp with decreasing segment slopes
      std::vector<std::pair<double, double>> knots = {{0.0, 0.0}};
      double t = 0.0, w = 0.0, slope = 1.0 + u01(rng);
      for (int i = 0; i < 3; ++i) {
        const double dt = 0.3 + 0.4 * u01(rng);
        t += dt;
        w += slope * dt;
        knots.push_back({t, w});
        slope *= 0.4 + 0.5 * u01(rng);
      }
      return ModulusSpec::piecewise_linear_concave(knots);
    }
  }
}

RecoveryMethod random_method(const Domain& dom, std::mt19937_64& rng, Variant variant) {
  const int n = 1 + static_cast<int>(rng() % 6);
  InfoSpec info;
  for (int j = 0; j < n; ++j) {
    if (dom.kind() == DomainKind::Interval) {
      info.points.push_back(pt(dom.lo(0) + u01(rng) * (dom.hi(0) - dom.lo(0))));
    } else {
      const double rho = dom.radius() * std::sqrt(u01(rng));
      const double th = 2.0 * kPi * u01(rng);
      info.points.push_back(
          pt(dom.center()[0] + rho * std::cos(th), dom.center()[1] + rho * std::sin(th)));
    }
    info.errors.push_back(rng() % 2 ? 0.3 * u01(rng) : 0.0);
  }
  return RecoveryMethod(dom, random_modulus(rng), info, variant);
}

RecoveryMethod midpoint_method(int n, double e) {
  InfoSpec info;
  for (int i = 0; i < n; ++i) {
    info.points.push_back(pt((i + 0.5) / n));
    info.errors.push_back(e);
  }
  return RecoveryMethod(Domain::interval(0, 1), ModulusSpec::power(1.0, 1.0), info,
                        Variant::Plain);
}

// ---------------------------------------------------------------- criteria

// 1: tau lies in the class and is information-feasible
bool c01_majorant_class(std::string& note) {
  Check c;
  std::mt19937_64 rng(101);
  const Domain interval = Domain::interval(0, 1);
  const Domain disk = Domain::disk(pt(0, 0), 1.0);
  for (const Domain& dom : {interval, disk}) {
    const auto grid = dom.build_grid(dom.kind() == DomainKind::Interval ? 200 : 7);
    for (int inst = 0; inst < 20; ++inst) {
      const auto m = random_method(dom, rng, Variant::Plain);
      std::vector<double> tau(grid.size());
      for (std::size_t k = 0; k < grid.size(); ++k) tau[k] = m.tau(grid.nodes[k]);
      for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t k = i + 1; k < grid.size(); ++k) {
          const double w = eval_modulus(m.modulus(), dom.distance(grid.nodes[i], grid.nodes[k]));
          c.require(std::fabs(tau[i] - tau[k]) <= w + 1e-12, "pairwise bound violated");
        }
      for (int j = 0; j < m.n_points(); ++j)
        c.require(m.tau(m.info().points[static_cast<std::size_t>(j)]) <=
                      m.info().errors[static_cast<std::size_t>(j)] + 1e-12,
                  "tau(q_j) > e_j");
    }
  }
  note = c.note;
  return c.ok;
}

// 2: |x - Lz| <= tau + 1e-9 for seeded feasible pairs
bool c02_pointwise_bound(std::string& note) {
  Check c;
  std::mt19937_64 rng(202);
  std::vector<RecoveryMethod> instances;
  instances.push_back(midpoint_method(3, 0.05));
  for (int i = 0; i < 2; ++i)
    instances.push_back(random_method(Domain::interval(0, 1), rng, Variant::Plain));
  instances.push_back(random_method(Domain::disk(pt(0, 0), 1.0), rng, Variant::Plain));
  for (const auto& m : instances) {
    const auto grid =
        m.domain().build_grid(m.domain().kind() == DomainKind::Interval ? 200 : 7);
    std::vector<Point> nodes = grid.nodes;
    for (const auto& q : m.info().points) nodes.push_back(q);
    const std::vector<double> zero(static_cast<std::size_t>(m.n_points()), 0.0);
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto x0 = sample_feasible(m, zero, nodes, seed);
      std::vector<double> z(static_cast<std::size_t>(m.n_points()));
      std::mt19937_64 zrng(seed * 7919);
      for (int j = 0; j < m.n_points(); ++j)
        z[static_cast<std::size_t>(j)] = x0[grid.size() + static_cast<std::size_t>(j)] +
                                         (2.0 * u01(zrng) - 1.0) *
                                             m.info().errors[static_cast<std::size_t>(j)];
      const auto x = sample_feasible(m, z, nodes, seed + 5000);
      const double worst = pointwise_bound_check(m, nodes, x, z);
      c.require(worst <= 1e-9, "recovery bound exceeded by " + std::to_string(worst));
    }
  }
  note = c.note;
  return c.ok;
}

// 3: the witness pair attains the optimal error
bool c03_sharpness(std::string& note) {
  Check c;
  std::mt19937_64 rng(303);
  for (int inst = 0; inst < 5; ++inst) {
    const auto m = random_method(Domain::interval(0, 1), rng, Variant::Plain);
    const auto grid = m.domain().build_grid(997);
    const auto mat = identity_problem(grid);
    const double optimal = optimal_error(mat, {m}, YNorm::L1, PsiNorm::l1()).value;
    // witness: x = sigma phi, z = 0  =>  error = int |phi|
    double witness = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k)
      witness += grid.weights[k] * std::fabs(-1.0 * m.tau(grid.nodes[k]));  // sigma = -1
    c.require(std::fabs(witness - optimal) <= 1e-9 * std::max(1.0, optimal),
              "witness misses the bound");
  }
  note = c.note;
  return c.ok;
}

// 4: identity closed form 1/(4n) and the exact e-shift
bool c04_identity_closed_form(std::string& note) {
  Check c;
  const auto grid = Domain::interval(0, 1).build_grid(1001);
  const auto mat = identity_problem(grid);
  for (int n : {1, 2, 4, 8}) {
    const double base = optimal_error(mat, {midpoint_method(n, 0.0)}, YNorm::L1, PsiNorm::l1()).value;
    c.require(std::fabs(base - 0.25 / n) <= 1e-3,
              "1/(4n) missed for n=" + std::to_string(n));
    const double eps = 0.07;
    const double shifted =
        optimal_error(mat, {midpoint_method(n, eps)}, YNorm::L1, PsiNorm::l1()).value;
    c.require(std::fabs((shifted - base) - eps) <= 1e-9, "e-shift not exact");
    // grid-minimax oracle agreement on the same grid
    const double oracle = grid_minimax_oracle(midpoint_method(n, 0.0), 1001);
    const double oracle_shift = grid_minimax_oracle(midpoint_method(n, eps), 1001);
    c.require(std::fabs(oracle - base) <= 1e-9, "oracle disagrees with the error value");
    c.require(std::fabs((oracle_shift - oracle) - eps) <= 1e-9, "oracle e-shift not exact");
  }
  note = c.note;
  return c.ok;
}

// 5: resolvent oracles
bool c05_resolvents(std::string& note) {
  Check c;
  const auto volt = volterra_resolvent([](double, double) { return 1.0; }, 0.0, 1.0, 201, 1e-10);
  c.require(std::fabs(volt(1.0, 0.0) - std::exp(1.0)) <= 1e-6, "volterra Gamma(1,0) != e");
  const auto fred = fredholm_resolvent([](double, double) { return 0.5; }, 0.0, 1.0, 101, 1e-9);
  for (double t : {0.0, 0.5, 1.0})
    for (double s : {0.25, 0.75})
      c.require(std::fabs(fred(t, s) - 1.0) <= 1e-8, "fredholm Gamma != 1");
  bool rejected = false;
  std::string msg;
  try {
    fredholm_resolvent([](double, double) { return 1.0; }, 0.0, 1.0, 101, 1e-9);
  } catch (const PreconditionError& e) {
    rejected = true;
    msg = e.what();
  }
  c.require(rejected && msg.find("square-integrability") != std::string::npos,
            "k == 1 not rejected with the premise named");
  note = c.note;
  return c.ok;
}

// 6: matrix exponential positivity / semigroup / Metzler gate
bool c06_matrix_exponential(std::string& note) {
  Check c;
  std::mt19937_64 rng(606);
  for (int rep = 0; rep < 50; ++rep) {
    Mat s(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s(i, j) = (i == j) ? 2.0 * u01(rng) - 1.0 : u01(rng);
    for (double h : {0.1, 1.0}) {
      const Mat e = matrix_exponential(s, h);
      for (double v : e.a) c.require(v >= -1e-12, "negative entry in exp(S h)");
    }
    const Mat lhs = matrix_exponential(s, 0.4) * matrix_exponential(s, 0.6);
    const Mat rhs = matrix_exponential(s, 1.0);
    double diff = 0.0;
    for (std::size_t i = 0; i < lhs.a.size(); ++i)
      diff = std::max(diff, std::fabs(lhs.a[i] - rhs.a[i]));
    c.require(diff <= 1e-9, "semigroup identity violated");
  }
  // non-Metzler system rejected
  OdeProblem prob;
  prob.S = Mat(2);
  prob.S(0, 1) = -1.0;
  prob.S(1, 0) = 1.0;
  prob.p = {0.0, 0.0};
  prob.p_err = {0.0, 0.0};
  InfoSpec info;
  info.points = {pt(0.5)};
  info.errors = {0.0};
  for (int i = 0; i < 2; ++i)
    prob.q_methods.emplace_back(Domain::interval(0, 1), ModulusSpec::power(1.0, 1.0), info,
                                Variant::Plain);
  bool rejected = false;
  try {
    ode_recover(prob, {{0.0}, {0.0}}, 0.5, 50);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  c.require(rejected, "non-Metzler S accepted");
  note = c.note;
  return c.ok;
}

// 7: heat kernel mass, case-1 formula, case-2 constant
bool c07_heat(std::string& note) {
  Check c;
  const double t = 0.42;
  for (int d : {1, 2, 3}) {
    const double R = 12.0 * std::sqrt(2.0 * t);
    const int n = 200000;
    const double h = R / n;
    double mass = 0.0;
    Point u0;
    u0.dim = d;
    for (int i = 0; i < n; ++i) {
      const double rho = (i + 0.5) * h;
      Point v;
      v.dim = d;
      v[0] = rho;
      const double k2 = heat_kernel_initial(d, with_time(u0, t), v);
      const double surf = d == 1 ? 2.0 : (d == 2 ? 2.0 * kPi * rho : 4.0 * kPi * rho * rho);
      mass += h * surf * k2;
    }
    c.require(std::fabs(mass - 1.0) <= 1e-6, "kernel mass off for d=" + std::to_string(d));
  }
  {
    const Domain m1 = Domain::spacetime_box({-1.0}, {1.0}, 0.05, 0.8);
    const Domain m2 = Domain::interval(-1.0, 1.0);
    InfoSpec i1, i2;
    i1.points = {pt(0.1, 0.3), pt(-0.4, 0.6)};
    i1.errors = {0.0, 0.05};
    i2.points = {pt(0.2)};
    i2.errors = {0.1};
    const RecoveryMethod f(m1, ModulusSpec::power(1.0, 0.8), i1, Variant::Tilde);
    const RecoveryMethod g(m2, ModulusSpec::capped_linear(1.0, 0.6), i2, Variant::Tilde);
    const int res = 150;
    const auto e = heat_optimal_error(HeatCase::FixedTime, 1, 2.0, pt(0.0), f, g, res);
    const auto g1 = m1.build_grid(res);
    const auto g2 = m2.build_grid(res);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < g1.size(); ++k) s1 += g1.weights[k] * f.tau_tilde(g1.nodes[k]);
    for (std::size_t k = 0; k < g2.size(); ++k) s2 += g2.weights[k] * g.tau_tilde(g2.nodes[k]);
    c.require(std::fabs(e.value - (s1 + s2)) <= 1e-6, "case-1 error != majorant integrals");
  }
  for (double R : {0.5, 1.0, 2.0}) {
    // substitution oracle: int_0^inf K2 dt = R^{-1}/(4 pi^{3/2}) int e^{-w} w^{-1/2} dw
    const int n = 400000;
    const double ymax = 7.5, h = ymax / n;
    double gam = 0.0;
    for (int i = 0; i < n; ++i) {
      const double y = (i + 0.5) * h;
      gam += 2.0 * h * std::exp(-y * y);
    }
    const double oracle = gam / (4.0 * std::pow(kPi, 1.5) * R);
    c.require(std::fabs(heat_ray_weight(3, R) - oracle) <= 1e-6 * oracle,
              "ray constant misses the substitution oracle at R=" + std::to_string(R));
  }
  note = c.note;
  return c.ok;
}

// 8: wave d=1 fixed-time error formula
bool c08_wave(std::string& note) {
  Check c;
  const Domain m1 = Domain::spacetime_box({0.0}, {1.0}, 0.0, 1.0);
  const Domain m2 = Domain::interval(0.0, 1.0);
  const auto g1 = m1.build_grid(500);
  const auto g2 = m2.build_grid(500);
  const auto one = [](const Point&) { return 1.0; };
  const auto zero = [](const Point&) { return 0.0; };
  const auto first = wave_fixed_time_error_1d(1.0, g1, one, g2, zero, g2, zero);
  c.require(std::fabs(first.source_term - 0.5) <= 1e-4, "unit-source first term != 0.5");
  const auto quarter = [](const Point&) { return 0.25; };
  const auto combo = wave_fixed_time_error_1d(2.0, g1, zero, g2, quarter, g2, quarter);
  c.require(std::fabs(combo.value - 0.75) <= 1e-12, "three-term combination != 0.75");
  note = c.note;
  return c.ok;
}

// 9: poisson disk cross-check self-consistency (Richardson) + recorded ratio
bool c09_poisson(std::string& note) {
  Check c;
  const auto one = [](const Point&) { return 1.0; };
  const double e1 = poisson_disk_error(1.0, pt(0, 0), one, one, 8).quadrature_value;
  const double e2 = poisson_disk_error(1.0, pt(0, 0), one, one, 16).quadrature_value;
  const auto fine = poisson_disk_error(1.0, pt(0, 0), one, one, 32);
  const double e4 = fine.quadrature_value;
  const double ratio = (e1 - e2) / (e2 - e4);
  c.require(std::isfinite(ratio) && ratio >= 1.4 && ratio <= 4.8,
            "refinement ratio " + std::to_string(ratio) + " outside the first-order band");
  std::ostringstream os;
  os << "refinement ratio " << ratio << "; printed/oracle value ratio "
     << fine.printed_value / e4 << " (interior " << fine.interior_printed / fine.interior_quadrature
     << ", boundary " << fine.boundary_printed / fine.boundary_quadrature << ")";
  note = os.str();
  return c.ok;
}

// 10: iterated-integral route matches direct L1 quadrature
bool c10_fubini(std::string& note) {
  Check c;
  std::mt19937_64 rng(1010);
  const auto m = midpoint_method(2, 0.03);
  const auto grid = m.domain().build_grid(301);
  for (int rep = 0; rep < 10; ++rep) {
    const double a = u01(rng), b = u01(rng), d = u01(rng), al = 3.0 * u01(rng);
    KernelFn k = [=](const Point& s, const Point& t) {
      const double co = std::cos(al * s[0] + 2.0 * t[0]);
      return 0.05 + a + b * s[0] * t[0] + d * co * co;
    };
    OperatorMatrix mat;
    mat.rows = mat.cols = 1;
    mat.entries.resize(1);
    mat.entries[0].kernel = k;
    mat.signs = {1};
    mat.input_grids = {grid};
    mat.outputs = {OutputSpace::from_grid(grid)};
    const double fub = optimal_error(mat, {m}, YNorm::L1, PsiNorm::l1()).value;
    const double direct = optimal_error_direct_l1(mat, {m}, PsiNorm::l1());
    c.require(std::fabs(fub - direct) <= 1e-6 * std::max(1.0, std::fabs(direct)),
              "routes disagree by " + std::to_string(fub - direct));
  }
  note = c.note;
  return c.ok;
}

// 11: the optimal error is identical for all sign matrices
bool c11_sigma_invariance(std::string& note) {
  Check c;
  const auto m1 = midpoint_method(1, 0.0);
  const auto m2 = midpoint_method(2, 0.05);
  const auto grid = Domain::interval(0, 1).build_grid(401);
  OperatorMatrix mat;
  mat.rows = mat.cols = 2;
  mat.entries.resize(4);
  mat.at(0, 0).has_identity = true;
  mat.at(0, 1).kernel = [](const Point& s, const Point& t) { return 1.0 + s[0] + t[0]; };
  mat.at(1, 0).kernel = [](const Point& s, const Point& t) { return 0.5 + s[0] * t[0]; };
  mat.at(1, 1).has_identity = true;
  mat.input_grids = {grid, grid};
  mat.outputs = {OutputSpace::from_grid(grid), OutputSpace::from_grid(grid)};
  std::vector<double> values;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      mat.signs = {s1, s2};
      values.push_back(optimal_error(mat, {m1, m2}, YNorm::L1, PsiNorm::l1()).value);
    }
  for (double v : values)
    c.require(v == values.front(), "sign matrices changed the value");  // bit-for-bit
  note = c.note;
  return c.ok;
}

// 12: repeated CLI verify runs produce byte-identical CSVs
bool c12_cli_determinism(std::string& note) {
  const char* cli = std::getenv("OPTREC_CLI");
  if (!cli || !*cli) {
    note = "OPTREC_CLI not set (run through ctest)";
    return false;
  }
  const fs::path dir = fs::temp_directory_path() / "optrec_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "identity.json";
  {
    std::ofstream out(cfg);
    out << R"({
  "problem": "identity",
  "resolution": 200,
  "seed": 42,
  "trials": 40,
  "norm": {"Y": "l1", "psi": "l1"},
  "blocks": [{
    "domain": {"kind": "interval", "bounds": [0, 1]},
    "modulus": {"kind": "power", "c": 1.0, "alpha": 1.0},
    "points": [[0.25], [0.75]],
    "errors": [0.0, 0.05],
    "variant": "plain"
  }]
})";
  }
  auto run = [&](const std::string& out_dir) {
    const std::string cmd = std::string("\"") + cli + "\" verify --config " + cfg.string() +
                            " --out " + (dir / out_dir).string() + " > /dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  if (!run("a") || !run("b")) {
    note = "CLI verify run failed";
    return false;
  }
  auto slurp = [&](const std::string& out_dir) {
    std::ifstream in(dir / out_dir / "verify.csv", std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp("a"), b = slurp("b");
  const bool ok = !a.empty() && a == b;
  note = ok ? "byte-identical (" + std::to_string(a.size()) + " bytes)" : "outputs differ";
  fs::remove_all(dir);
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    bool (*run)(std::string&);
  };
  const std::vector<Criterion> criteria = {
      {1, "majorant class membership", c01_majorant_class},
      {2, "pointwise recovery bound", c02_pointwise_bound},
      {3, "sharpness of the witness pair", c03_sharpness},
      {4, "identity closed form 1/(4n) and e-shift", c04_identity_closed_form},
      {5, "resolvent oracles and the square-integrability gate", c05_resolvents},
      {6, "matrix exponential positivity and Metzler gate", c06_matrix_exponential},
      {7, "heat kernel mass, case-1 sum, ray constant", c07_heat},
      {8, "wave d=1 fixed-time error formula", c08_wave},
      {9, "poisson disk cross-check consistency", c09_poisson},
      {10, "iterated-integral vs direct L1 route", c10_fubini},
      {11, "sign-matrix invariance (bit-for-bit)", c11_sigma_invariance},
      {12, "CLI determinism (byte-identical verify)", c12_cli_determinism},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = crit.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[criterion %02d] %-52s %s%s%s\n", crit.id, crit.name, ok ? "PASS" : "FAIL",
                detail.empty() ? "" : " -- ", detail.c_str());
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
