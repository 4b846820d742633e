#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "optrec/matexp.hpp"
#include "optrec/operators.hpp"
#include "optrec/pde.hpp"
#include "optrec/recovery.hpp"
#include "optrec/resolvent.hpp"

namespace optrec::cli {

// Output slice requested by `solve` (heat / wave).
struct OutputSlice {
  std::string kind = "fixed-time";  // fixed-time | ray | point | full
  double t0 = 1.0;
  double t_end = 2.0;               // ray upper limit
  Point u0;
  std::vector<double> lo, hi;       // spatial window for fixed-time slices
  int resolution = 128;
};

// One fully parsed run description.
struct ProblemConfig {
  std::string problem;  // identity | volterra | fredholm | ode | poisson-disk | heat | wave
  int resolution = 256;
  std::uint64_t seed = 1;
  int trials = 100;
  YNorm y = YNorm::L1;
  PsiNorm psi = PsiNorm::l1();
  std::vector<RecoveryMethod> methods;  // one per block, in config order
  std::string data_path;                // measurement CSV for recover/solve

  // volterra / fredholm
  Kernel2D kernel;
  std::string kernel_desc;
  double tolerance = 1e-10;

  // ode
  Mat S;
  std::vector<double> p, p_errors;

  // poisson-disk
  double radius = 1.0;
  Point center = pt(0.0, 0.0);

  // heat / wave
  int d = 1;
  double t0 = 1.0;
  Point u0;
  std::string heat_case = "fixed-time";  // fixed-time | ray | point
  std::optional<OutputSlice> output;

  int n_total() const;
  double e_min() const;
  double e_max() const;
};

// Parses and validates the JSON config; throws ConfigError with a readable
// message on any structural problem (wrong block arity, bad kinds, ...).
ProblemConfig load_config(const std::string& path);

// Measurement CSV (header "index,z"), concatenated across blocks; sizes are
// checked against the methods' point counts.
std::vector<std::vector<double>> load_measurements(const std::string& path,
                                                   const std::vector<RecoveryMethod>& methods);

}  // namespace optrec::cli
