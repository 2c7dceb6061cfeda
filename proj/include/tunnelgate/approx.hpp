#pragma once

#include "tunnelgate/exact.hpp"

namespace tunnelgate {

struct ExpansionResult {
  double value;  // h1/(gamma^2 + delta^2) to first order in qa
  double qa;
};

/// Barrier height that yields decay constant q at first order in q^2:
/// branch A sits just below the supercritical edge E + m, branch B just
/// above the propagating edge E - m. Throws BranchDegenerate for the V0 = E
/// branch.
double potential_for_q(SolutionBranch branch, double energy, double q,
                       double mass);

/// First-order transparent-limit value of h1/(gamma^2 + delta^2):
///   [ (V0 - E) k^2 (1/alpha - alpha) - m c^2 (k^2 + q^2) (1/alpha + alpha) ] * qa
/// The whole bracket scales with qa; it tracks the exact ratio to O((qa)^2).
ExpansionResult expansion_first_order(const Kinematics& kin,
                                      const BarrierSystem& sys);

/// Closed-form phase time for branch A (V0 > E), valid for relativistic
/// energies and transparent barriers:
///   tau = (V_phi/c^2) [ L + a (1 + 2 m^2 c^2 / (hbar k)^2) ]
TimeResult phase_time_branch_a(const BarrierSystem& sys);

/// Branch B (V0 < E) counterpart:
///   tau = (V_phi/c^2) [ L + (c^2/V_phi^2) a (1 + 2 m^2 c^2 / (hbar k)^2) ]
TimeResult phase_time_branch_b(const BarrierSystem& sys);

}  // namespace tunnelgate
