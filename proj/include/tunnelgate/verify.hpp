#pragma once

#include <string>
#include <vector>

#include "tunnelgate/oracle.hpp"

namespace tunnelgate {

struct SuiteResult {
  std::string name;
  bool passed;
  double statistic;    // suite-dependent: max relative error, worst ratio, ...
  std::string detail;
};

struct VerifyOptions {
  /// Fault injection: scales the h1 term before the division so the
  /// cross-check provably detects a broken evaluator (negative control).
  bool corrupt_h1 = false;
};

/// Deterministic grid spanning both branches and the degenerate case,
/// qa in [1e-3, 1] and kL in [0.1, 50]; >= 200 systems.
std::vector<BarrierSystem> agreement_grid();

/// Deterministic grid of L = 0 systems (the two barriers merge into a
/// single one of twice the width); >= 50 systems.
std::vector<BarrierSystem> merged_barrier_grid();

SuiteResult suite_free_flight(const VerifyOptions& options = {});
SuiteResult suite_grid_agreement(const VerifyOptions& options = {});
SuiteResult suite_merged_barriers(const VerifyOptions& options = {});
SuiteResult suite_richardson_convergence();
SuiteResult suite_thresholds();

std::vector<SuiteResult> run_verification(const VerifyOptions& options = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace tunnelgate
