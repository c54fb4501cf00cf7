#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace g2surf {

/// How a bound reacts to a tolerance scale factor.
enum class BoundKind {
  discretization,  // FD / quadrature error: multiplied by the scale
  rounding,        // exact identity evaluated in floating point: fixed
  fixed,           // lower bounds, counts, booleans, runtimes
};

struct Measurement {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<", ">" or "=="
  BoundKind kind = BoundKind::fixed;
  bool pass = false;
};

struct CriterionInfo {
  int id = 0;
  std::string title;
  double time_limit = 0.0;  // seconds
};

struct CriterionResult {
  CriterionInfo info;
  std::vector<Measurement> measurements;
  double seconds = 0.0;
  bool pass = false;
  std::string error;  // non-empty when the criterion threw
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  double tol_scale = 1.0;  // applied to discretization bounds
};

const std::vector<CriterionInfo>& acceptance_criteria();

CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}, const std::vector<int>& ids = {});

/// One line per criterion: "[PASS] 3 title (1.23 s)" followed by indented
/// measurements.
std::string format_result(const CriterionResult& r, bool verbose = true);

}  // namespace g2surf
