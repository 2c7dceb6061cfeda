#include "tunnelgate/approx.hpp"

#include <string>

namespace tunnelgate {

double potential_for_q(SolutionBranch branch, double energy, double q,
                       double mass) {
  if (branch == SolutionBranch::Degenerate) {
    fail(ErrorCode::BranchDegenerate,
         "no first-order potential at the V0 = E branch");
  }
  const double shift = mass - q * q / (2.0 * mass);
  return branch == SolutionBranch::A ? energy + shift : energy - shift;
}

ExpansionResult expansion_first_order(const Kinematics& kin,
                                      const BarrierSystem& sys) {
  const double qa = kin.q * sys.width;
  const double al = kin.matching_ratio;
  const double k2 = kin.k * kin.k;
  const double q2 = kin.q * kin.q;
  const double lead = (sys.potential - sys.energy) * k2 * (1.0 / al - al);
  const double next = -sys.mass * (k2 + q2) * (1.0 / al + al);
  return {(lead + next) * qa, qa};
}

TimeResult phase_time_branch_a(const BarrierSystem& sys) {
  const Kinematics kin = derive_kinematics(sys);
  if (kin.branch != SolutionBranch::A) {
    fail(ErrorCode::WrongBranch,
         std::string("branch-a phase time called on branch ") +
             to_string(kin.branch));
  }
  const double width_term =
      1.0 + 2.0 * sys.mass * sys.mass / (kin.k * kin.k);
  const double tau =
      kin.phase_velocity * (sys.gap + sys.width * width_term);
  return {tau, TimeMethod::BranchA, kin.q * sys.width};
}

TimeResult phase_time_branch_b(const BarrierSystem& sys) {
  const Kinematics kin = derive_kinematics(sys);
  if (kin.branch != SolutionBranch::B) {
    fail(ErrorCode::WrongBranch,
         std::string("branch-b phase time called on branch ") +
             to_string(kin.branch));
  }
  const double width_term =
      1.0 + 2.0 * sys.mass * sys.mass / (kin.k * kin.k);
  const double vphi = kin.phase_velocity;
  const double tau =
      vphi * (sys.gap + sys.width * width_term / (vphi * vphi));
  return {tau, TimeMethod::BranchB, kin.q * sys.width};
}

}  // namespace tunnelgate
