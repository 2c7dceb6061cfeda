#include "tunnelgate/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "tunnelgate/analysis.hpp"

namespace tunnelgate {

namespace {

BarrierSystem make_system(double energy, double offset, double qa_target,
                          double kl_target) {
  BarrierSystem sys;
  sys.mass = 1.0;
  sys.energy = energy;
  sys.potential = energy + offset;
  const double q = std::sqrt((1.0 - offset) * (1.0 + offset));
  const double k = std::sqrt((energy - 1.0) * (energy + 1.0));
  sys.width = qa_target / q;
  sys.gap = kl_target / k;
  return sys;
}

double exact_tau(const BarrierSystem& sys, bool corrupt_h1) {
  const Kinematics kin = derive_kinematics(sys);
  PhaseTimeTerms terms = phase_time_terms(kin, sys);
  if (corrupt_h1) {
    terms.h1 *= 1.01;
  }
  return phase_time_from_terms(sys, kin, terms);
}

std::string format_detail(const char* fmt, double value) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

}  // namespace

std::vector<BarrierSystem> agreement_grid() {
  const double energies[] = {1.5, 2.5, 5.0, 20.0};
  const double offsets[] = {-0.95, -0.6, -0.2, 0.0, 0.2, 0.6, 0.95};
  const double qa_targets[] = {1e-3, 0.05, 1.0};
  const double kl_targets[] = {0.1, 5.0, 50.0};
  std::vector<BarrierSystem> grid;
  for (double e : energies) {
    for (double off : offsets) {
      for (double qa : qa_targets) {
        for (double kl : kl_targets) {
          grid.push_back(make_system(e, off, qa, kl));
        }
      }
    }
  }
  return grid;
}

std::vector<BarrierSystem> merged_barrier_grid() {
  const double energies[] = {1.5, 2.5, 5.0, 10.0, 20.0};
  const double offsets[] = {-0.9, -0.5, -0.1, 0.0, 0.1, 0.5, 0.9};
  const double qa_targets[] = {0.01, 0.5};
  std::vector<BarrierSystem> grid;
  for (double e : energies) {
    for (double off : offsets) {
      for (double qa : qa_targets) {
        grid.push_back(make_system(e, off, qa, 0.0));
      }
    }
  }
  return grid;
}

SuiteResult suite_free_flight(const VerifyOptions& options) {
  const double energies[] = {1.2, std::sqrt(2.0), 5.0, 20.0};
  const double offsets[] = {-0.5, 0.0, 0.5};
  // The phase is smooth at zero width, so the step balancing truncation
  // against roundoff sits far coarser than the default; 3e-4 keeps the
  // oracle within ~5e-13 of L/V_g across the whole energy range.
  const DifferentiationPlan plan{3e-4, DiffScheme::Richardson4};
  double worst = 0.0;
  for (double e : energies) {
    for (double off : offsets) {
      BarrierSystem sys;
      sys.mass = 1.0;
      sys.energy = e;
      sys.potential = e + off;
      sys.width = 0.0;
      sys.gap = 10.0;
      const Kinematics kin = derive_kinematics(sys);
      const double reference = sys.gap / kin.group_velocity;
      const double tau_closed = exact_tau(sys, options.corrupt_h1);
      const double tau_oracle = phase_time_numeric(sys, plan).value;
      worst = std::max(worst, std::abs(tau_closed - reference) / reference);
      worst = std::max(worst, std::abs(tau_oracle - reference) / reference);
    }
  }
  return {"free-flight", worst <= 1e-12, worst,
          format_detail("max_rel_err=%.3e tol=1e-12", worst)};
}

SuiteResult suite_grid_agreement(const VerifyOptions& options) {
  const DifferentiationPlan plan{1e-7, DiffScheme::Richardson4};
  double worst_tau = 0.0;
  double worst_flux = 0.0;
  for (const BarrierSystem& sys : agreement_grid()) {
    const double reference = phase_time_numeric(sys, plan).value;
    const double closed = exact_tau(sys, options.corrupt_h1);
    worst_tau =
        std::max(worst_tau, std::abs(closed - reference) / std::abs(reference));
    worst_flux = std::max(worst_flux, std::abs(scatter(sys).flux_residual));
  }
  const bool ok = worst_tau <= 1e-6 && worst_flux <= 1e-10;
  return {"grid-agreement", ok, worst_tau,
          format_detail("max_rel_err=%.3e ", worst_tau) +
              format_detail("max_flux_residual=%.3e", worst_flux)};
}

SuiteResult suite_merged_barriers(const VerifyOptions& options) {
  const DifferentiationPlan plan{1e-7, DiffScheme::Richardson4};
  double worst = 0.0;
  for (const BarrierSystem& sys : merged_barrier_grid()) {
    const double reference = phase_time_numeric(sys, plan).value;
    const double closed = exact_tau(sys, options.corrupt_h1);
    worst = std::max(worst, std::abs(closed - reference) / std::abs(reference));
  }
  return {"merged-barriers", worst <= 1e-6, worst,
          format_detail("max_rel_err=%.3e tol=1e-6", worst)};
}

SuiteResult suite_richardson_convergence() {
  // The gap between the two schemes is the second-order truncation term of
  // the central difference; halving the step must shrink it ~4x.
  const double energies[] = {2.5, 5.0};
  const double offsets[] = {-0.5, 0.3, 0.0};
  const double kl_targets[] = {0.5, 3.0};
  double worst_ratio_low = std::numeric_limits<double>::infinity();
  double worst_ratio_high = 0.0;
  bool ok = true;
  for (double e : energies) {
    for (double off : offsets) {
      for (double kl : kl_targets) {
        const BarrierSystem sys = make_system(e, off, 0.2, kl);
        const auto gap_at = [&](double step) {
          const double c2 =
              phase_time_numeric(sys, {step, DiffScheme::Central2}).value;
          const double r4 =
              phase_time_numeric(sys, {step, DiffScheme::Richardson4}).value;
          return std::abs(c2 - r4);
        };
        const double ratio = gap_at(1e-3) / gap_at(5e-4);
        worst_ratio_low = std::min(worst_ratio_low, ratio);
        worst_ratio_high = std::max(worst_ratio_high, ratio);
        ok = ok && ratio >= 3.0 && ratio <= 5.0;
      }
    }
  }
  return {"richardson-convergence", ok, worst_ratio_high,
          format_detail("gap_ratio_min=%.3f ", worst_ratio_low) +
              format_detail("gap_ratio_max=%.3f expected~4", worst_ratio_high)};
}

SuiteResult suite_thresholds() {
  const double beta_a = critical_beta(SolutionBranch::A);
  const double beta_b = critical_beta(SolutionBranch::B);
  const double beta_gain = gain_threshold_beta();
  const double residual_b = beta_b * beta_b * beta_b + 2.0 * beta_b - 2.0;
  const bool ok = std::round(beta_a * 1e4) == 8633.0 &&
                  std::round(beta_b * 1e4) == 7709.0 &&
                  std::abs(beta_gain - 0.82) < 0.005 &&
                  std::abs(residual_b) <= 1e-11;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "beta_a=%.6f beta_b=%.6f beta_gain=%.6f root_residual=%.1e",
                beta_a, beta_b, beta_gain, residual_b);
  return {"thresholds", ok, beta_a, buf};
}

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
  std::vector<SuiteResult> results;
  results.push_back(suite_free_flight(options));
  results.push_back(suite_grid_agreement(options));
  results.push_back(suite_merged_barriers(options));
  results.push_back(suite_richardson_convergence());
  results.push_back(suite_thresholds());
  return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const SuiteResult& r) { return r.passed; });
}

}  // namespace tunnelgate
