#include "tunnelgate/core.hpp"

#include <cmath>
#include <string>

namespace tunnelgate {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::EnergyBelowRest: return "EnergyBelowRest";
    case ErrorCode::KleinRegime: return "KleinRegime";
    case ErrorCode::Propagating: return "Propagating";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::StencilOutOfRegime: return "StencilOutOfRegime";
    case ErrorCode::NoisyDerivative: return "NoisyDerivative";
    case ErrorCode::WrongBranch: return "WrongBranch";
    case ErrorCode::BranchDegenerate: return "BranchDegenerate";
    case ErrorCode::ZeroPath: return "ZeroPath";
  }
  return "UnknownError";
}

const char* to_string(SolutionBranch branch) {
  switch (branch) {
    case SolutionBranch::A: return "a";
    case SolutionBranch::B: return "b";
    case SolutionBranch::Degenerate: return "degenerate";
  }
  return "?";
}

BarrierSystem make_si_system(double mass_kg, double energy_eV,
                             double potential_eV, double width_m,
                             double gap_m) {
  UnitSystem units = UnitSystem::si(mass_kg);
  BarrierSystem sys;
  sys.mass = 1.0;  // energies are measured in units of this particle's m c^2
  sys.energy = units.energy_to_natural(energy_eV);
  sys.potential = units.energy_to_natural(potential_eV);
  sys.width = units.length_to_natural(width_m);
  sys.gap = units.length_to_natural(gap_m);
  sys.units = units;
  return sys;
}

void validate(const BarrierSystem& sys) {
  if (!std::isfinite(sys.mass) || !std::isfinite(sys.energy) ||
      !std::isfinite(sys.potential) || !std::isfinite(sys.width) ||
      !std::isfinite(sys.gap)) {
    fail(ErrorCode::InvalidInput, "non-finite field in barrier system");
  }
  if (sys.mass <= 0.0) {
    fail(ErrorCode::InvalidInput, "mass must be positive");
  }
  if (sys.width < 0.0 || sys.gap < 0.0) {
    fail(ErrorCode::InvalidInput, "width and gap must be non-negative");
  }
  if (sys.energy <= sys.mass) {
    fail(ErrorCode::EnergyBelowRest,
         "E = " + std::to_string(sys.energy) +
             " does not exceed the rest energy " + std::to_string(sys.mass));
  }
  if (sys.potential >= sys.energy + sys.mass) {
    fail(ErrorCode::KleinRegime,
         "V0 = " + std::to_string(sys.potential) +
             " >= E + mc^2; the barrier is supercritical");
  }
  if (sys.potential <= sys.energy - sys.mass) {
    fail(ErrorCode::Propagating,
         "V0 = " + std::to_string(sys.potential) +
             " <= E - mc^2; the particle propagates over the barrier");
  }
}

Kinematics derive_kinematics(const BarrierSystem& sys) {
  validate(sys);
  const double m = sys.mass;
  const double e = sys.energy;
  const double w = sys.potential - sys.energy;

  // hbar c k = sqrt(E^2 - m^2 c^4), hbar c q = sqrt(m^2 c^4 - (V0 - E)^2),
  // written in factored form to keep accuracy near the regime edges.
  const double k = std::sqrt((e - m) * (e + m));
  const double q = std::sqrt((m - w) * (m + w));

  Kinematics kin;
  kin.k = k;
  kin.q = q;
  kin.phase_velocity = e / k;
  kin.group_velocity = k / e;
  kin.matching_ratio = (k / q) * (e - sys.potential + m) / (e + m);
  kin.branch = sys.potential > e   ? SolutionBranch::A
               : sys.potential < e ? SolutionBranch::B
                                   : SolutionBranch::Degenerate;
  return kin;
}

double validate_transparency(const Kinematics& kin, double width) {
  return kin.q * width;
}

}  // namespace tunnelgate
