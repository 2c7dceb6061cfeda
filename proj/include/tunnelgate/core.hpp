#pragma once

#include "tunnelgate/errors.hpp"
#include "tunnelgate/units.hpp"

namespace tunnelgate {

/// Position of the barrier height relative to the particle energy. Each of
/// the two closed-form transparent-limit expansions is tied to one branch.
enum class SolutionBranch {
  A,           // E < V0 < E + m c^2
  B,           // E - m c^2 < V0 < E
  Degenerate,  // V0 = E
};

const char* to_string(SolutionBranch branch);

/// A two-barrier scattering scenario in natural units (hbar = c = 1): two
/// identical square barriers of height `potential` and width `width`
/// separated by a field-free gap `gap`; the structure occupies
/// [0, width] and [width + gap, 2*width + gap] on the line.
///
/// `units` records how the caller supplied the values; SI inputs are
/// converted once at construction (see make_si_system) so that every
/// computation below runs in natural units.
struct BarrierSystem {
  double mass = 1.0;       // rest energy m c^2
  double energy = 0.0;     // total energy E; must exceed mass
  double potential = 0.0;  // barrier height V0
  double width = 0.0;      // barrier width a >= 0
  double gap = 0.0;        // inter-barrier distance L >= 0
  UnitSystem units = UnitSystem::natural();
};

/// Builds a natural-units BarrierSystem from SI inputs (mass in kg, energies
/// in eV, lengths in meters). Round-trips through UnitSystem stay within
/// 1e-12 relative.
BarrierSystem make_si_system(double mass_kg, double energy_eV,
                             double potential_eV, double width_m,
                             double gap_m);

struct Kinematics {
  double k;               // wave number outside the barriers
  double q;               // evanescent decay constant inside a barrier
  double phase_velocity;  // E / k, always >= 1
  double group_velocity;  // k / E, always < 1; phase * group = 1
  double matching_ratio;  // alpha = (k/q) (E - V0 + m) / (E + m)
  SolutionBranch branch;
};

/// Checks the tunneling-regime invariants. Throws InvalidInput for malformed
/// fields, EnergyBelowRest for E <= m, KleinRegime for V0 >= E + m (a
/// supercritical barrier would pair-produce) and Propagating for
/// V0 <= E - m (the particle passes over the barrier).
void validate(const BarrierSystem& sys);

Kinematics derive_kinematics(const BarrierSystem& sys);

/// Returns qa, the dimensionless evanescent decay across one barrier. Small
/// values mark the transparent regime; callers gate approximation validity
/// on it.
double validate_transparency(const Kinematics& kin, double width);

/// Above this qa the first-order transparent-limit machinery degrades past
/// the ~1e-2 level; callers emit a diagnostic but keep going.
inline constexpr double transparency_warning_threshold = 0.1;

}  // namespace tunnelgate
