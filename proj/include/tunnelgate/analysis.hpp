#pragma once

#include <span>
#include <vector>

#include "tunnelgate/core.hpp"

namespace tunnelgate {

/// One sample of a traversal-velocity threshold curve in the
/// (beta = V_g/c, width_ratio = a/L) plane. Infeasible samples (no positive
/// width ratio reaches V_T = c at that beta) are emitted flagged, not
/// dropped, so exported curves show poles and cutoffs faithfully.
struct RatioPoint {
  double beta;
  double width_ratio;
  SolutionBranch branch;
  bool feasible;
};

enum class Region { Superluminal, Subluminal, OnCurve };

const char* to_string(Region region);

struct RegionVerdict {
  Region verdict;
  double margin;  // V_T/c - 1
};

inline constexpr double classification_tolerance = 1e-12;

/// Time a free particle loses to the tunneling one over the same path:
///   branch A: (a/V_g) (3 - 2 c^2/V_g^2), branch B: a V_g / c^2.
double time_gain(const BarrierSystem& sys, SolutionBranch branch);

/// Linearized traversal velocity (L + 2a) / tau_p:
///   branch A: V_g + V_g a/(L+2a) (3 - 2 c^2/V_g^2)
///   branch B: V_g + a/(L+2a) V_g^3/c^2
double traversal_velocity(const BarrierSystem& sys, SolutionBranch branch);

/// Width ratio a/L at which V_T reaches c, per beta:
///   branch A: (beta^2 - beta) / (2 + 2 beta - 5 beta^2)
///   branch B: (1 - beta) / (beta^3 + 2 beta - 2)
std::vector<RatioPoint> threshold_curve(SolutionBranch branch,
                                        std::span<const double> betas);

/// Group-velocity threshold below which no width ratio is superluminal:
/// branch A in closed form (1 + sqrt(11))/5, branch B as the bracketed real
/// root of beta^3 + 2 beta - 2 on [0, 1] to 1e-12 absolute.
double critical_beta(SolutionBranch branch);

/// sqrt(2/3): the group velocity where the branch-A time gain changes sign.
double gain_threshold_beta();

/// Places a (beta, width_ratio) point relative to the V_T = c curve using
/// the closed rational forms only, independent of any phase-time evaluator.
RegionVerdict classify(const RatioPoint& point);

}  // namespace tunnelgate
