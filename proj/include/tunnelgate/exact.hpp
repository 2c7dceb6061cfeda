#pragma once

#include "tunnelgate/core.hpp"

namespace tunnelgate {

enum class TimeMethod { Exact, BranchA, BranchB, Oracle, FreeReference };

const char* to_string(TimeMethod method);

struct TimeResult {
  double value;       // traversal time in natural units
  TimeMethod method;
  double qa;          // transparency diagnostic of the evaluated system
};

/// Building blocks of the closed-form two-barrier phase time. Up to a fixed
/// 8*alpha^2 scale, gamma and delta are the real and imaginary parts of the
/// structure's inverse transmission amplitude (with the free gap phase
/// factored out), and h1 is the numerator of its energy derivative.
///
/// The raw terms grow like e^{2qa} and overflow doubles past 2qa ~ 350;
/// phase_time_exact switches to an internally rescaled evaluation well
/// before that, so the phase time itself stays finite for any qa.
struct PhaseTimeTerms {
  double gamma;
  double delta;
  double h1;
  double denom;  // gamma^2 + delta^2
};

/// Guard for the 1/(gamma^2 + delta^2) division. Transmission resonances are
/// physical and keep the denominator finite; this only catches
/// floating-point blowup next to the supercritical edge where alpha -> 0.
inline constexpr double denominator_epsilon = 1e-30;

PhaseTimeTerms phase_time_terms(const Kinematics& kin,
                                const BarrierSystem& sys);

/// tau = (1/hbar c^2) [ kL E/k^2 - h1 / (k^2 q^2 (gamma^2 + delta^2)) ].
/// Exposed separately so self-tests can evaluate deliberately perturbed
/// terms.
double phase_time_from_terms(const BarrierSystem& sys, const Kinematics& kin,
                             const PhaseTimeTerms& terms);

/// Exact stationary-phase traversal time of the double barrier structure.
TimeResult phase_time_exact(const BarrierSystem& sys);

/// (L + 2a) / V_g: a free particle covering the same path.
TimeResult free_time(const BarrierSystem& sys);

}  // namespace tunnelgate
