#include "tunnelgate/analysis.hpp"

#include <cmath>
#include <string>

namespace tunnelgate {

const char* to_string(Region region) {
  switch (region) {
    case Region::Superluminal: return "superluminal";
    case Region::Subluminal: return "subluminal";
    case Region::OnCurve: return "on-curve";
  }
  return "?";
}

namespace {

void require_concrete_branch(SolutionBranch branch) {
  if (branch == SolutionBranch::Degenerate) {
    fail(ErrorCode::BranchDegenerate,
         "the V0 = E branch has no closed-form traversal analysis");
  }
}

}  // namespace

double time_gain(const BarrierSystem& sys, SolutionBranch branch) {
  require_concrete_branch(branch);
  const Kinematics kin = derive_kinematics(sys);
  const double vg = kin.group_velocity;
  const double a = sys.width;
  if (branch == SolutionBranch::A) {
    return (a / vg) * (3.0 - 2.0 / (vg * vg));
  }
  return a * vg;
}

double traversal_velocity(const BarrierSystem& sys, SolutionBranch branch) {
  require_concrete_branch(branch);
  const double span = sys.gap + 2.0 * sys.width;
  if (span <= 0.0) {
    fail(ErrorCode::ZeroPath, "L + 2a must be positive");
  }
  const Kinematics kin = derive_kinematics(sys);
  const double vg = kin.group_velocity;
  const double x = sys.width / span;
  if (branch == SolutionBranch::A) {
    return vg + vg * x * (3.0 - 2.0 / (vg * vg));
  }
  return vg + x * vg * vg * vg;
}

std::vector<RatioPoint> threshold_curve(SolutionBranch branch,
                                        std::span<const double> betas) {
  require_concrete_branch(branch);
  std::vector<RatioPoint> points;
  points.reserve(betas.size());
  for (double beta : betas) {
    if (!(beta > 0.0 && beta < 1.0)) {
      fail(ErrorCode::InvalidInput,
           "beta = " + std::to_string(beta) + " outside (0, 1)");
    }
    double ratio;
    if (branch == SolutionBranch::A) {
      ratio = (beta * beta - beta) / (2.0 + 2.0 * beta - 5.0 * beta * beta);
    } else {
      ratio = (1.0 - beta) / (beta * beta * beta + 2.0 * beta - 2.0);
    }
    const bool feasible = std::isfinite(ratio) && ratio > 0.0;
    points.push_back({beta, ratio, branch, feasible});
  }
  return points;
}

double critical_beta(SolutionBranch branch) {
  require_concrete_branch(branch);
  if (branch == SolutionBranch::A) {
    // Pole of the branch-a threshold curve: positive root of 5b^2 - 2b - 2.
    return (1.0 + std::sqrt(11.0)) / 5.0;
  }
  // Unique real root of b^3 + 2b - 2 on [0, 1]; the cubic is strictly
  // increasing so bisection converges unconditionally.
  const auto f = [](double b) { return b * b * b + 2.0 * b - 2.0; };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gain_threshold_beta() { return std::sqrt(2.0 / 3.0); }

RegionVerdict classify(const RatioPoint& point) {
  require_concrete_branch(point.branch);
  if (!(point.beta > 0.0 && point.beta < 1.0) || !(point.width_ratio >= 0.0)) {
    fail(ErrorCode::InvalidInput,
         "classification needs beta in (0, 1) and a non-negative width ratio");
  }
  // a = ratio * L  =>  a / (L + 2a) = ratio / (1 + 2 ratio); the verdict is
  // invariant under (a, L) -> (s a, s L).
  const double x = point.width_ratio / (1.0 + 2.0 * point.width_ratio);
  const double beta = point.beta;
  double vt;
  if (point.branch == SolutionBranch::A) {
    vt = beta + beta * x * (3.0 - 2.0 / (beta * beta));
  } else {
    vt = beta + x * beta * beta * beta;
  }
  const double margin = vt - 1.0;
  Region region = Region::OnCurve;
  if (margin > classification_tolerance) {
    region = Region::Superluminal;
  } else if (margin < -classification_tolerance) {
    region = Region::Subluminal;
  }
  return {region, margin};
}

}  // namespace tunnelgate
