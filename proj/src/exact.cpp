#include "tunnelgate/exact.hpp"

#include <cmath>
#include <string>

namespace tunnelgate {

const char* to_string(TimeMethod method) {
  switch (method) {
    case TimeMethod::Exact: return "exact";
    case TimeMethod::BranchA: return "branch-a";
    case TimeMethod::BranchB: return "branch-b";
    case TimeMethod::Oracle: return "oracle";
    case TimeMethod::FreeReference: return "free";
  }
  return "?";
}

namespace {

// expm1-based sinh keeps full relative accuracy deep in the transparent
// limit, where the h1 terms are tiny multiples of sinh(qa).
double sinh_stable(double x) {
  if (std::abs(x) < 1e-4) {
    return 0.5 * (std::expm1(x) - std::expm1(-x));
  }
  return std::sinh(x);
}

}  // namespace

PhaseTimeTerms phase_time_terms(const Kinematics& kin,
                                const BarrierSystem& sys) {
  const double e = sys.energy;
  const double mc2 = sys.mass;
  const double k = kin.k;
  const double q = kin.q;
  const double al = kin.matching_ratio;

  const double k2 = k * k;
  const double q2 = q * q;
  const double ksum = k2 + q2;
  const double al2 = al * al;
  const double op = 1.0 + al2;
  const double om = 1.0 - al2;

  const double qa = q * sys.width;
  const double kl = k * sys.gap;

  const double sh = sinh_stable(qa);
  const double sh2 = sh * sh;            // sinh^2(qa)
  const double sh_2qa = sinh_stable(2.0 * qa);
  const double ch_2qa = std::cosh(2.0 * qa);
  const double sin_kl = std::sin(kl);
  const double sin_2kl = std::sin(2.0 * kl);
  const double cos_2kl = std::cos(2.0 * kl);

  PhaseTimeTerms t;
  t.gamma = 8.0 * al2 * ch_2qa - 4.0 * op * op * sin_kl * sin_kl * sh2;
  t.delta = 4.0 * al * om * sh_2qa + 2.0 * op * op * sin_2kl * sh2;

  const double ev = e - sys.potential;

  // Energy-derivative numerator. Three transcription defects in the source
  // expression are repaired here: (2kl) is read as 2kL, k^2(2qa)E-V_0) as
  // k^2 (2qa)(E - V0), and the unbalanced sinh(2qa)) as sinh(2qa). The
  // independent scattering oracle pins the result to 1e-6 over the full
  // grid, so the reading is not left to trust.
  const double delta_brace =
      2.0 * op *
          (op * e * q2 * (2.0 * kl) * sin_2kl -
           4.0 * al2 * mc2 * ksum * cos_2kl) *
          sh2 -
      4.0 * al2 * mc2 * ksum * (op + (3.0 - al2) * ch_2qa) +
      k2 * (2.0 * qa) * ev *
          (op * op * cos_2kl - (1.0 - 6.0 * al2 + al2 * al2)) * sh_2qa;

  const double gamma_brace =
      -4.0 * al * om * k2 * (2.0 * qa) * ev * ch_2qa +
      2.0 * op *
          (op * e * q2 * (2.0 * kl) * cos_2kl +
           4.0 * al2 * mc2 * ksum * sin_2kl) *
          sh2 +
      (4.0 * al * (1.0 - 3.0 * al2) * mc2 * ksum -
       op * op * k2 * (2.0 * qa) * ev * sin_2kl) *
          sh_2qa;

  t.h1 = t.delta * delta_brace + t.gamma * gamma_brace;
  t.denom = t.gamma * t.gamma + t.delta * t.delta;

  if (t.denom < denominator_epsilon) {
    fail(ErrorCode::SingularDenominator,
         "gamma^2 + delta^2 = " + std::to_string(t.denom) +
             " below the evaluation guard");
  }
  return t;
}

double phase_time_from_terms(const BarrierSystem& sys, const Kinematics& kin,
                             const PhaseTimeTerms& terms) {
  const double k = kin.k;
  const double q = kin.q;
  return sys.gap * sys.energy / k -
         terms.h1 / (k * k * q * q * terms.denom);
}

namespace {

// Deep opaque limit: gamma, delta and h1 grow like e^{2qa} (h1 like
// e^{4qa}) and overflow doubles past 2qa ~ 350, while their ratio stays
// finite. Factoring sigma = e^{-2qa} out of every hyperbolic term cancels
// the scale exactly; the (2qa)-linear pieces of h1 cancel against each
// other in this limit, which is where the phase-time saturation with
// barrier width comes from.
double opaque_phase_time(const BarrierSystem& sys, const Kinematics& kin) {
  const double e = sys.energy;
  const double mc2 = sys.mass;
  const double k = kin.k;
  const double q = kin.q;
  const double al = kin.matching_ratio;

  const double k2 = k * k;
  const double q2 = q * q;
  const double ksum = k2 + q2;
  const double al2 = al * al;
  const double op = 1.0 + al2;
  const double om = 1.0 - al2;

  const double qa = q * sys.width;
  const double kl = k * sys.gap;
  const double ev = e - sys.potential;

  const double sigma = std::exp(-2.0 * qa);
  const double cosh_s = 0.5 * (1.0 + sigma * sigma);   // sigma * cosh(2qa)
  const double sinh_s = 0.5 * (1.0 - sigma * sigma);   // sigma * sinh(2qa)
  const double sh2_s = 0.25 * (1.0 - sigma) * (1.0 - sigma);  // sigma * sinh^2(qa)

  const double sin_kl = std::sin(kl);
  const double sin_2kl = std::sin(2.0 * kl);
  const double cos_2kl = std::cos(2.0 * kl);

  const double gamma_s =
      8.0 * al2 * cosh_s - 4.0 * op * op * sin_kl * sin_kl * sh2_s;
  const double delta_s = 4.0 * al * om * sinh_s + 2.0 * op * op * sin_2kl * sh2_s;

  const double delta_brace_s =
      2.0 * op *
          (op * e * q2 * (2.0 * kl) * sin_2kl -
           4.0 * al2 * mc2 * ksum * cos_2kl) *
          sh2_s -
      4.0 * al2 * mc2 * ksum * (op * sigma + (3.0 - al2) * cosh_s) +
      k2 * (2.0 * qa) * ev *
          (op * op * cos_2kl - (1.0 - 6.0 * al2 + al2 * al2)) * sinh_s;

  const double gamma_brace_s =
      -4.0 * al * om * k2 * (2.0 * qa) * ev * cosh_s +
      2.0 * op *
          (op * e * q2 * (2.0 * kl) * cos_2kl +
           4.0 * al2 * mc2 * ksum * sin_2kl) *
          sh2_s +
      (4.0 * al * (1.0 - 3.0 * al2) * mc2 * ksum -
       op * op * k2 * (2.0 * qa) * ev * sin_2kl) *
          sinh_s;

  const double h1_s = delta_s * delta_brace_s + gamma_s * gamma_brace_s;
  const double denom_s = gamma_s * gamma_s + delta_s * delta_s;
  if (denom_s <= 0.0) {
    fail(ErrorCode::SingularDenominator,
         "rescaled gamma^2 + delta^2 vanished in the opaque limit");
  }
  return sys.gap * e / k - h1_s / (k2 * q2 * denom_s);
}

}  // namespace

TimeResult phase_time_exact(const BarrierSystem& sys) {
  const Kinematics kin = derive_kinematics(sys);
  const double qa = kin.q * sys.width;
  if (2.0 * qa > 250.0) {
    return {opaque_phase_time(sys, kin), TimeMethod::Exact, qa};
  }
  const PhaseTimeTerms terms = phase_time_terms(kin, sys);
  return {phase_time_from_terms(sys, kin, terms), TimeMethod::Exact, qa};
}

TimeResult free_time(const BarrierSystem& sys) {
  const Kinematics kin = derive_kinematics(sys);
  const double path = sys.gap + 2.0 * sys.width;
  return {path / kin.group_velocity, TimeMethod::FreeReference,
          kin.q * sys.width};
}

}  // namespace tunnelgate
