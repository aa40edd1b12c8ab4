#pragma once

#include <functional>
#include <string>
#include <vector>

namespace axm::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against their tolerances
  double seconds = 0.0;
};

struct Options {
  unsigned threads = 1;
};

/// Acceptance checks, numbered as listed in the README.
CheckResult beta_threshold(const Options& o = {});
CheckResult operator_oracle(const Options& o = {});
CheckResult assembly_equivalence(const Options& o = {});
CheckResult positive_definite(const Options& o = {});
CheckResult smooth_convergence(const Options& o = {});
CheckResult basis_homogeneity(const Options& o = {});
CheckResult singular_only_solve(const Options& o = {});
CheckResult bordered_vs_orthogonal(const Options& o = {});
CheckResult fourier_round_trip(const Options& o = {});
CheckResult conjugate_symmetry(const Options& o = {});
CheckResult singular_dimensions(const Options& o = {});

/// Supplementary property checks.
CheckResult cg_monotone_residual(const Options& o = {});
CheckResult basis_seminorm_growth(const Options& o = {});

struct Check {
  int id;
  const char* name;
  CheckResult (*run)(const Options&);
};
const std::vector<Check>& all_checks();

/// Runs every check (or those whose id is listed), reporting each result as it completes.
std::vector<CheckResult> run_all(const Options& o, const std::function<void(const CheckResult&)>& on_result,
                                 const std::vector<int>& only = {});

}  // namespace axm::verify
