#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "optrec/adversary.hpp"
#include "optrec/csv.hpp"
#include "optrec/errors.hpp"
#include "optrec/ode.hpp"

namespace fs = std::filesystem;
using namespace optrec;
using cli::OutputSlice;
using cli::ProblemConfig;

namespace {

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + (dir / name).string() + "'");
  return out;
}

void write_error_csv(const fs::path& dir, const ProblemConfig& cfg, const ErrorReport& rep) {
  auto out = open_out(dir, "error.csv");
  out << "problem,n,e_summary,Y,psi,value,est_quad_err\n";
  out << cfg.problem << "," << cfg.n_total() << "," << "emin=" << csv_double(cfg.e_min())
      << " emax=" << csv_double(cfg.e_max()) << "," << (cfg.y == YNorm::L1 ? "l1" : "sup") << ","
      << cfg.psi.describe() << "," << csv_double(rep.value) << "," << csv_double(rep.est_quad_err)
      << "\n";
  std::cout << "optimal error: " << csv_double(rep.value) << " (" << rep.norm << ", est quad err "
            << csv_double(rep.est_quad_err) << ")\n";
}

ResolventTable build_resolvent(const ProblemConfig& cfg, int nodes) {
  const Domain& dom = cfg.methods[0].domain();
  const double a = dom.lo(0), b = dom.hi(0);
  return cfg.problem == "volterra"
             ? volterra_resolvent(cfg.kernel, a, b, nodes, cfg.tolerance)
             : fredholm_resolvent(cfg.kernel, a, b, nodes, cfg.tolerance);
}

KernelFn resolvent_kernel(const ResolventTable& table) {
  const bool causal = table.kind == ResolventTable::Kind::Volterra;
  return [&table, causal](const Point& s, const Point& t) {
    return causal && t[0] > s[0] ? 0.0 : table(s[0], t[0]);
  };
}

OperatorMatrix resolvent_matrix(const ResolventTable& table, const QuadratureGrid& grid) {
  OperatorMatrix mat;
  mat.rows = mat.cols = 1;
  mat.entries.resize(1);
  mat.entries[0].has_identity = true;
  mat.entries[0].kernel = resolvent_kernel(table);
  mat.signs = {1};
  mat.input_grids = {grid};
  mat.outputs = {OutputSpace::from_grid(grid)};
  return mat;
}

// Green / Poisson kernel operator matrix over the disk; the log singularity
// on the diagonal carries vanishing mass, so coincident nodes contribute 0.
OperatorMatrix poisson_matrix(const ProblemConfig& cfg, int res) {
  const double r = cfg.radius;
  const Point c = cfg.center;
  const QuadratureGrid disk_grid = cfg.methods[0].domain().build_grid(res);
  const QuadratureGrid circle_grid = cfg.methods[1].domain().build_grid(8 * res);
  OperatorMatrix mat;
  mat.rows = 1;
  mat.cols = 2;
  mat.entries.resize(2);
  mat.entries[0].kernel = [r, c](const Point& t, const Point& s) {
    return euclidean(t, s) < 1e-14 ? 0.0 : disk_green(r, c, t, s);
  };
  mat.entries[1].kernel = [r, c](const Point& t, const Point& s) {
    return disk_poisson_kernel(r, c, t, s);
  };
  mat.signs = {1, 1};
  mat.input_grids = {disk_grid, circle_grid};
  mat.outputs = {OutputSpace::from_grid(disk_grid)};
  return mat;
}

OdeProblem ode_problem(const ProblemConfig& cfg) {
  OdeProblem prob;
  prob.S = cfg.S;
  prob.a = cfg.methods[0].domain().lo(0);
  prob.b = cfg.methods[0].domain().hi(0);
  prob.p = cfg.p;
  prob.p_err = cfg.p_errors;
  prob.q_methods = cfg.methods;
  return prob;
}

HeatCase parse_heat_case(const std::string& s) {
  if (s == "fixed-time") return HeatCase::FixedTime;
  if (s == "ray") return HeatCase::FixedPointRay;
  if (s == "point") return HeatCase::SinglePoint;
  throw ConfigError("heat case must be fixed-time, ray or point");
}

// ----------------------------------------------------------------- commands

void cmd_validate(const ProblemConfig& cfg, const fs::path& out_dir) {
  auto out = open_out(out_dir, "report.csv");
  out << "block,axiom,t1,t2,lhs,rhs\n";
  bool all_ok = true;
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const auto& m = cfg.methods[i];
    const auto report = validate_modulus(m.modulus(), 256, m.domain().diameter());
    for (const auto& v : report.violations)
      out << i << "," << v.axiom << "," << csv_double(v.t1) << "," << csv_double(v.t2) << ","
          << csv_double(v.lhs) << "," << csv_double(v.rhs) << "\n";
    all_ok = all_ok && report.ok();
    std::cout << "block " << i << " (" << m.modulus().describe() << "): "
              << (report.ok() ? "pass" : std::to_string(report.total_violations) + " violations")
              << "\n";
  }
  std::cout << (all_ok ? "all axioms hold on the sampled grid\n"
                       : "violations recorded in report.csv\n");
}

void cmd_tau(const ProblemConfig& cfg, const fs::path& out_dir, bool partition) {
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const auto& m = cfg.methods[i];
    const auto grid = m.domain().build_grid(cfg.resolution);
    const std::string name =
        (partition ? "partition_" : "tau_") + std::to_string(i) + ".csv";
    auto out = open_out(out_dir, name);
    if (partition)
      write_partition_map(m, grid, out);
    else
      write_tau_profile(m, grid, out);
    std::cout << name << ": " << grid.size() << " nodes\n";
  }
}

void cmd_recover(const ProblemConfig& cfg, const fs::path& out_dir, const std::string& data) {
  const auto z = cli::load_measurements(data, cfg.methods);
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) {
    const auto& m = cfg.methods[i];
    const auto grid = m.domain().build_grid(cfg.resolution);
    auto out = open_out(out_dir, "recovered_" + std::to_string(i) + ".csv");
    const int dim = m.domain().dim();
    for (int a = 0; a < dim; ++a) out << m.domain().coord_name(a) << ",";
    out << "value\n";
    for (const auto& p : grid.nodes) {
      for (int a = 0; a < dim; ++a) out << csv_double(p[a]) << ",";
      out << csv_double(m.recover(z[i], p)) << "\n";
    }
  }
  std::cout << "recovered " << cfg.methods.size() << " block(s)\n";
}

ErrorReport heat_error_report(const ProblemConfig& cfg, const fs::path& out_dir, int res) {
  const HeatCase hc = parse_heat_case(cfg.heat_case);
  const auto coarse =
      heat_optimal_error(hc, cfg.d, cfg.t0, cfg.u0, cfg.methods[0], cfg.methods[1], res / 2);
  const auto fine =
      heat_optimal_error(hc, cfg.d, cfg.t0, cfg.u0, cfg.methods[0], cfg.methods[1], res);
  ErrorReport rep;
  rep.value = fine.value;
  rep.est_quad_err = std::fabs(fine.value - coarse.value);
  rep.method = "heat/" + cfg.heat_case;
  rep.norm = "L1/l1";
  rep.resolution = res;
  if (hc == HeatCase::FixedPointRay) {
    auto out = open_out(out_dir, "heat_constants.csv");
    out << "oracle_value,printed_value,ratio\n";
    out << csv_double(fine.value) << "," << csv_double(fine.printed_constant_value) << ","
        << csv_double(fine.printed_constant_value / fine.value) << "\n";
  }
  return rep;
}

ErrorReport wave_error_report(const ProblemConfig& cfg, int res) {
  if (cfg.y != YNorm::L1)
    throw ConfigError("wave: the fixed-time optimal error is an L1 quantity; set norm.Y = l1");
  auto tau_of = [](const RecoveryMethod& m) {
    return [&m](const Point& p) { return m.majorant(p); };
  };
  auto value_at = [&](int n) {
    const auto g1 = cfg.methods[0].domain().build_grid(n);
    if (cfg.d == 1) {
      const auto g2 = cfg.methods[1].domain().build_grid(n);
      const auto g3 = cfg.methods[2].domain().build_grid(n);
      return wave_fixed_time_error_1d(cfg.t0, g1, tau_of(cfg.methods[0]), g2,
                                      tau_of(cfg.methods[1]), g3, tau_of(cfg.methods[2]))
          .value;
    }
    const auto g2 = cfg.methods[1].domain().build_grid(n);
    return wave_fixed_time_error(cfg.d, cfg.t0, g1, tau_of(cfg.methods[0]), g2,
                                 tau_of(cfg.methods[1]))
        .value;
  };
  ErrorReport rep;
  rep.value = value_at(res);
  rep.est_quad_err = std::fabs(rep.value - value_at(res / 2));
  rep.method = "wave/d=" + std::to_string(cfg.d);
  rep.norm = "L1/l1";
  rep.resolution = res;
  return rep;
}

void cmd_error(const ProblemConfig& cfg, const fs::path& out_dir) {
  const int res = cfg.resolution;
  ErrorReport rep;
  if (cfg.problem == "identity") {
    const auto grid = cfg.methods[0].domain().build_grid(res);
    rep = optimal_error(identity_problem(grid), cfg.methods, cfg.y, cfg.psi);
  } else if (cfg.problem == "volterra" || cfg.problem == "fredholm") {
    const auto table = build_resolvent(cfg, std::max(3, res));
    if (cfg.y == YNorm::L1) {
      rep.value = resolvent_l1_optimal_error(table, cfg.methods[0]);
      const auto coarse = build_resolvent(cfg, std::max(3, res / 2));
      rep.est_quad_err = std::fabs(rep.value - resolvent_l1_optimal_error(coarse, cfg.methods[0]));
      rep.norm = "L1/l1";
      rep.resolution = res;
    } else {
      const auto grid = cfg.methods[0].domain().build_grid(res);
      rep = optimal_error(resolvent_matrix(table, grid), cfg.methods, cfg.y, cfg.psi);
    }
  } else if (cfg.problem == "ode") {
    rep = ode_optimal_error(ode_problem(cfg), cfg.y, cfg.psi, res).report;
  } else if (cfg.problem == "poisson-disk") {
    const auto& m1 = cfg.methods[0];
    const auto& m2 = cfg.methods[1];
    const auto e = poisson_disk_error(
        cfg.radius, cfg.center, [&m1](const Point& p) { return m1.majorant(p); },
        [&m2](const Point& p) { return m2.majorant(p); }, res);
    rep.value = e.printed_value;
    rep.est_quad_err = std::fabs(e.printed_value - e.quadrature_value);
    rep.norm = "L1/l1";
    rep.resolution = res;
    auto out = open_out(out_dir, "poisson_crosscheck.csv");
    out << "printed_value,quadrature_value,interior_printed,interior_quadrature,"
           "boundary_printed,boundary_quadrature\n";
    out << csv_double(e.printed_value) << "," << csv_double(e.quadrature_value) << ","
        << csv_double(e.interior_printed) << "," << csv_double(e.interior_quadrature) << ","
        << csv_double(e.boundary_printed) << "," << csv_double(e.boundary_quadrature) << "\n";
  } else if (cfg.problem == "heat") {
    rep = heat_error_report(cfg, out_dir, res);
  } else if (cfg.problem == "wave") {
    rep = wave_error_report(cfg, res);
  }
  write_error_csv(out_dir, cfg, rep);
}

void cmd_verify(const ProblemConfig& cfg, const fs::path& out_dir, int trials,
                std::uint64_t seed) {
  OperatorMatrix mat;
  std::optional<ResolventTable> table;  // keep alive for the kernel lambdas
  if (cfg.problem == "identity") {
    mat = identity_problem(cfg.methods[0].domain().build_grid(cfg.resolution));
  } else if (cfg.problem == "volterra" || cfg.problem == "fredholm") {
    table = build_resolvent(cfg, std::max(3, cfg.resolution));
    mat = resolvent_matrix(*table, cfg.methods[0].domain().build_grid(cfg.resolution));
  } else if (cfg.problem == "poisson-disk") {
    mat = poisson_matrix(cfg, cfg.resolution);
  } else {
    throw ConfigError("verify supports identity, volterra, fredholm and poisson-disk problems");
  }
  const auto report = verify_optimality(mat, cfg.methods, cfg.y, cfg.psi, trials, seed);
  auto out = open_out(out_dir, "verify.csv");
  write_verify_report(report, out);
  std::cout << "optimal error " << csv_double(report.optimal_value) << ", " << report.rows.size()
            << " clauses, " << (report.all_pass ? "all pass" : "FAILURES RECORDED") << "\n";
}

void write_solution_header(std::ofstream& out, const std::vector<std::string>& coords) {
  for (const auto& c : coords) out << c << ",";
  out << "value\n";
}

void cmd_solve(const ProblemConfig& cfg, const fs::path& out_dir, const std::string& data) {
  const int res = cfg.resolution;
  if (cfg.problem == "identity")
    throw ConfigError("solve applies to equation problems; use `recover` for the identity");
  const auto z = cli::load_measurements(data, cfg.methods);

  if (cfg.problem == "volterra" || cfg.problem == "fredholm") {
    const auto table = build_resolvent(cfg, std::max(3, res));
    const auto& m = cfg.methods[0];
    auto lz = [&](double t) { return m.recover(z[0], pt(t)); };
    const auto grid = m.domain().build_grid(res);
    auto out = open_out(out_dir, "solution.csv");
    write_solution_header(out, {"t"});
    for (const auto& p : grid.nodes)
      out << csv_double(p[0]) << "," << csv_double(solve_second_kind(table, lz, p[0])) << "\n";
    ErrorReport rep;
    rep.value = resolvent_l1_optimal_error(table, m);
    const auto coarse = build_resolvent(cfg, std::max(3, res / 2));
    rep.est_quad_err = std::fabs(rep.value - resolvent_l1_optimal_error(coarse, m));
    rep.norm = "L1/l1";
    rep.resolution = res;
    write_error_csv(out_dir, cfg, rep);
    return;
  }
  if (cfg.problem == "ode") {
    const auto prob = ode_problem(cfg);
    const auto grid = cfg.methods[0].domain().build_grid(res);
    auto out = open_out(out_dir, "solution.csv");
    out << "t";
    for (int i = 0; i < prob.S.n; ++i) out << ",x" << (i + 1);
    out << "\n";
    for (const auto& p : grid.nodes) {
      const auto x = ode_recover(prob, z, p[0], res);
      out << csv_double(p[0]);
      for (double v : x) out << "," << csv_double(v);
      out << "\n";
    }
    write_error_csv(out_dir, cfg, ode_optimal_error(prob, cfg.y, cfg.psi, res).report);
    return;
  }
  if (cfg.problem == "poisson-disk") {
    const auto& m1 = cfg.methods[0];
    const auto& m2 = cfg.methods[1];
    auto lf = [&](const Point& p) { return m1.recover(z[0], p); };
    auto lg = [&](const Point& p) { return m2.recover(z[1], p); };
    const auto grid = cfg.methods[0].domain().build_grid(res);
    auto out = open_out(out_dir, "solution.csv");
    write_solution_header(out, {"x", "y"});
    for (const auto& p : grid.nodes) {
      out << csv_double(p[0]) << "," << csv_double(p[1]) << ","
          << csv_double(poisson_disk_solution(cfg.radius, cfg.center, lf, lg, p, res)) << "\n";
    }
    cmd_error(cfg, out_dir);
    return;
  }
  if (cfg.problem == "heat") {
    if (!cfg.output) throw ConfigError("heat solve needs an output block (slice window)");
    const OutputSlice& slice = *cfg.output;
    const auto& fm = cfg.methods[0];
    const auto& gm = cfg.methods[1];
    const auto g1 = fm.domain().build_grid(res);
    const auto g2 = gm.domain().build_grid(res);
    auto value_at = [&](const Point& ut) {
      double v = 0.0;
      for (std::size_t k = 0; k < g1.size(); ++k)
        v += g1.weights[k] * heat_kernel_source(cfg.d, ut, g1.nodes[k]) *
             fm.recover(z[0], g1.nodes[k]);
      for (std::size_t k = 0; k < g2.size(); ++k)
        v += g2.weights[k] * heat_kernel_initial(cfg.d, ut, g2.nodes[k]) *
             gm.recover(z[1], g2.nodes[k]);
      return v;
    };
    auto out = open_out(out_dir, "solution.csv");
    if (slice.kind == "fixed-time") {
      if (slice.lo.empty() || slice.lo.size() != slice.hi.size() ||
          static_cast<int>(slice.lo.size()) != cfg.d)
        throw ConfigError("heat solve: output lo/hi must give a d-dimensional window");
      const Domain window = Domain::box(slice.lo, slice.hi);
      const auto wgrid = window.build_grid(slice.resolution);
      std::vector<std::string> coords;
      for (int a = 0; a < cfg.d; ++a) coords.push_back(window.coord_name(a));
      write_solution_header(out, coords);
      for (const auto& p : wgrid.nodes) {
        for (int a = 0; a < cfg.d; ++a) out << csv_double(p[a]) << ",";
        out << csv_double(value_at(with_time(p, slice.t0))) << "\n";
      }
    } else if (slice.kind == "ray") {
      write_solution_header(out, {"t"});
      const double h = slice.t_end / slice.resolution;
      for (int i = 0; i < slice.resolution; ++i) {
        const double t = (i + 0.5) * h;
        out << csv_double(t) << "," << csv_double(value_at(with_time(slice.u0, t))) << "\n";
      }
    } else if (slice.kind == "point") {
      write_solution_header(out, {"t"});
      out << csv_double(slice.t0) << "," << csv_double(value_at(with_time(slice.u0, slice.t0)))
          << "\n";
    } else {
      throw ConfigError("heat solve: output slice must be fixed-time, ray or point");
    }
    write_error_csv(out_dir, cfg, heat_error_report(cfg, out_dir, res));
    return;
  }
  if (cfg.problem == "wave") {
    if (!cfg.output) throw ConfigError("wave solve needs an output block (slice window)");
    const OutputSlice& slice = *cfg.output;
    auto out = open_out(out_dir, "solution.csv");
    if (slice.kind == "fixed-time") {
      if (slice.lo.empty() || slice.lo.size() != slice.hi.size() ||
          static_cast<int>(slice.lo.size()) != cfg.d)
        throw ConfigError("wave solve: output lo/hi must give a d-dimensional window");
      const Domain window = Domain::box(slice.lo, slice.hi);
      const auto wgrid = window.build_grid(slice.resolution);
      std::vector<std::string> coords;
      for (int a = 0; a < cfg.d; ++a) coords.push_back(window.coord_name(a));
      write_solution_header(out, coords);
      for (const auto& p : wgrid.nodes) {
        for (int a = 0; a < cfg.d; ++a) out << csv_double(p[a]) << ",";
        out << csv_double(wave_recover(cfg.d, cfg.methods, z, p, slice.t0, res)) << "\n";
      }
    } else if (slice.kind == "point") {
      write_solution_header(out, {"t"});
      out << csv_double(slice.t0) << ","
          << csv_double(wave_recover(cfg.d, cfg.methods, z, slice.u0, slice.t0, res)) << "\n";
    } else {
      throw ConfigError("wave solve: output slice must be fixed-time or point");
    }
    write_error_csv(out_dir, cfg, wave_error_report(cfg, res));
    return;
  }
  throw ConfigError("solve: unsupported problem kind '" + cfg.problem + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optrec: optimal recovery of positive integral operators from pointwise data"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", data_path;
  int grid_override = 0;
  std::int64_t seed_override = -1;
  int trials_override = -1;

  auto add_common = [&](CLI::App* sub, bool with_data) {
    sub->add_option("--config", config_path, "problem configuration (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (default: .)");
    sub->add_option("--grid", grid_override, "override the quadrature resolution");
    sub->add_option("--seed", seed_override, "override the RNG seed");
    sub->add_option("--trials", trials_override, "override the adversary trial count");
    if (with_data) sub->add_option("--data", data_path, "measurement CSV (columns index,z)");
  };

  CLI::App* validate = app.add_subcommand("validate", "check the modulus axioms on a grid");
  CLI::App* tau = app.add_subcommand("tau", "emit the majorant profile CSV per block");
  CLI::App* partition = app.add_subcommand("partition", "emit the cell-index map CSV per block");
  CLI::App* recover = app.add_subcommand("recover", "piecewise-constant recovery from data");
  CLI::App* error = app.add_subcommand("error", "compute the optimal recovery error");
  CLI::App* verify = app.add_subcommand("verify", "adversarial optimality check");
  CLI::App* solve = app.add_subcommand("solve", "recover the equation solution from data");
  for (CLI::App* sub : {validate, tau, partition, error, verify}) add_common(sub, false);
  for (CLI::App* sub : {recover, solve}) add_common(sub, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // bad invocation is a configuration error
  }

  try {
    ProblemConfig cfg = cli::load_config(config_path);
    if (grid_override > 0) cfg.resolution = grid_override;
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (trials_override >= 0) cfg.trials = trials_override;
    if (!data_path.empty()) cfg.data_path = data_path;

    const fs::path out(out_dir);
    if (app.got_subcommand(validate)) cmd_validate(cfg, out);
    if (app.got_subcommand(tau)) cmd_tau(cfg, out, false);
    if (app.got_subcommand(partition)) cmd_tau(cfg, out, true);
    if (app.got_subcommand(recover)) {
      if (cfg.data_path.empty()) throw ConfigError("recover needs --data or a config `data` key");
      cmd_recover(cfg, out, cfg.data_path);
    }
    if (app.got_subcommand(error)) cmd_error(cfg, out);
    if (app.got_subcommand(verify)) cmd_verify(cfg, out, cfg.trials, cfg.seed);
    if (app.got_subcommand(solve)) {
      if (cfg.data_path.empty()) throw ConfigError("solve needs --data or a config `data` key");
      cmd_solve(cfg, out, cfg.data_path);
    }
    return 0;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
