#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "csb/sweep.hpp"

namespace csb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Parameter grids of the published figures; max_n bounds the fig5 diagonal.
SweepSpec preset(const std::string &name, int max_n = 200);

// "A:B" -> A, A+1, ..., B.
std::vector<int> parse_int_range(const std::string &text);
// "A:B:STEP" -> A, A+STEP, ..., B (inclusive within rounding).
std::vector<double> parse_ratio_range(const std::string &text);

struct SelfcheckOptions {
  int max_spins = 10;
  std::vector<double> deltas{0.0};
  int times_per_config = 5;
  // Test hook: perturbs the subspace populations so the check must fail.
  bool inject_fault = false;
};

struct SelfcheckReport {
  int configs = 0;
  double max_population_gap = 0.0;
  double max_leakage = 0.0;
  double max_off_diagonal = 0.0;
  double max_analytic_gap = 0.0;
  bool passed = false;
};

SelfcheckReport run_selfcheck(const SelfcheckOptions &options);

} // namespace csb::cli
