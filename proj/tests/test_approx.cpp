#include <cmath>

#include <doctest.h>

#include "tunnelgate/approx.hpp"
#include "tunnelgate/oracle.hpp"

using namespace tunnelgate;

namespace {

BarrierSystem natural_system(double energy, double potential, double width,
                             double gap) {
  BarrierSystem sys;
  sys.mass = 1.0;
  sys.energy = energy;
  sys.potential = potential;
  sys.width = width;
  sys.gap = gap;
  return sys;
}

// Branch-valid system with an exact decay constant q.
BarrierSystem system_for_q(SolutionBranch branch, double energy, double q,
                           double width, double gap) {
  const double w = std::sqrt((1.0 - q) * (1.0 + q));
  return natural_system(energy,
                        branch == SolutionBranch::A ? energy + w : energy - w,
                        width, gap);
}

}  // namespace

TEST_SUITE("approx") {

TEST_CASE("first-order potentials") {
  CHECK(potential_for_q(SolutionBranch::A, 10.0, 0.1, 1.0) ==
        doctest::Approx(10.995).epsilon(1e-14));
  CHECK(potential_for_q(SolutionBranch::B, 10.0, 0.1, 1.0) ==
        doctest::Approx(9.005).epsilon(1e-14));
  CHECK_THROWS_WITH_AS(potential_for_q(SolutionBranch::Degenerate, 10.0, 0.1, 1.0),
                       doctest::Contains("BranchDegenerate"), TunnelError);
}

TEST_CASE("q = 0 lands on the supercritical edge, rejected by validation") {
  const double v0 = potential_for_q(SolutionBranch::A, 10.0, 0.0, 1.0);
  CHECK(v0 == doctest::Approx(11.0));
  CHECK_THROWS_WITH_AS(derive_kinematics(natural_system(10.0, v0, 0.1, 1.0)),
                       doctest::Contains("KleinRegime"), TunnelError);
}

TEST_CASE("matching ratio 1 kills the leading bracket") {
  // V0 = E - m^2/E puts alpha exactly at 1.
  const double e = 2.0;
  const BarrierSystem sys = natural_system(e, e - 1.0 / e, 0.1, 1.0);
  const Kinematics kin = derive_kinematics(sys);
  REQUIRE(kin.matching_ratio == doctest::Approx(1.0).epsilon(1e-14));
  const ExpansionResult res = expansion_first_order(kin, sys);
  const double expected =
      -(kin.k * kin.k + kin.q * kin.q) * 2.0 * kin.q * sys.width;
  CHECK(res.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("first-order value scales out at zero width") {
  const BarrierSystem sys = natural_system(5.0, 5.5, 0.0, 10.0);
  const Kinematics kin = derive_kinematics(sys);
  CHECK(expansion_first_order(kin, sys).value == 0.0);
}

TEST_CASE("expansion gap to the exact ratio shrinks fourfold under a/2") {
  const BarrierSystem wide = natural_system(5.0, 5.5, 0.05, 10.0);
  const BarrierSystem narrow = natural_system(5.0, 5.5, 0.025, 10.0);
  const auto gap = [](const BarrierSystem& sys) {
    const Kinematics kin = derive_kinematics(sys);
    const PhaseTimeTerms t = phase_time_terms(kin, sys);
    return std::abs(t.h1 / t.denom - expansion_first_order(kin, sys).value);
  };
  const double ratio = gap(wide) / gap(narrow);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
}

TEST_CASE("branch formulas reduce to free flight at zero width") {
  const BarrierSystem above = natural_system(5.0, 5.5, 0.0, 10.0);
  const BarrierSystem below = natural_system(5.0, 4.5, 0.0, 10.0);
  const double free_ref = 10.0 * 5.0 / std::sqrt(24.0);
  CHECK(phase_time_branch_a(above).value ==
        doctest::Approx(free_ref).epsilon(1e-12));
  CHECK(phase_time_branch_b(below).value ==
        doctest::Approx(free_ref).epsilon(1e-12));
}

TEST_CASE("branch formulas coincide in the ultra-relativistic limit") {
  const double e = 1000.0;
  const BarrierSystem above = system_for_q(SolutionBranch::A, e, 0.5, 0.1, 10.0);
  const BarrierSystem below = system_for_q(SolutionBranch::B, e, 0.5, 0.1, 10.0);
  const double ta = phase_time_branch_a(above).value;
  const double tb = phase_time_branch_b(below).value;
  // They differ by the factor c^2/V_phi^2 = 1 - m^2/E^2 on the width term.
  CHECK(std::abs(ta - tb) <= 2.0 * (1.0 / (e * e)) * ta);
  // And the width term itself collapses to V_phi * a as k -> infinity.
  const Kinematics kin = derive_kinematics(above);
  const double limit = kin.phase_velocity * (above.gap + above.width);
  CHECK(ta == doctest::Approx(limit).epsilon(1e-5));
}

TEST_CASE("wrong-branch calls are rejected") {
  const BarrierSystem above = natural_system(5.0, 5.5, 0.1, 1.0);
  const BarrierSystem below = natural_system(5.0, 4.5, 0.1, 1.0);
  const BarrierSystem degenerate = natural_system(5.0, 5.0, 0.1, 1.0);
  CHECK_THROWS_WITH_AS(phase_time_branch_a(below),
                       doctest::Contains("WrongBranch"), TunnelError);
  CHECK_THROWS_WITH_AS(phase_time_branch_b(above),
                       doctest::Contains("WrongBranch"), TunnelError);
  CHECK_THROWS_WITH_AS(phase_time_branch_a(degenerate),
                       doctest::Contains("WrongBranch"), TunnelError);
  CHECK_THROWS_WITH_AS(phase_time_branch_b(degenerate),
                       doctest::Contains("WrongBranch"), TunnelError);
}

TEST_CASE("branch times exceed free flight for any positive width") {
  for (double e : {11.0, 20.0, 35.0}) {
    for (double q : {0.2, 0.5, 0.8}) {
      for (double a : {0.01, 0.1, 0.5}) {
        const BarrierSystem above = system_for_q(SolutionBranch::A, e, q, a, 5.0);
        const BarrierSystem below = system_for_q(SolutionBranch::B, e, q, a, 5.0);
        const double free_above = free_time(above).value;
        const double free_below = free_time(below).value;
        CHECK(phase_time_branch_a(above).value > above.gap / derive_kinematics(above).group_velocity);
        CHECK(phase_time_branch_b(below).value > below.gap / derive_kinematics(below).group_velocity);
        // but they stay below the free time over the longer path L + 2a
        CHECK(phase_time_branch_a(above).value < free_above);
        CHECK(phase_time_branch_b(below).value < free_below);
      }
    }
  }
}

TEST_CASE("characterization: deviation from exact is linear in width deep "
          "in the transparent limit") {
  // The closed branch forms drop a term of the same order as the one they
  // keep, so against the exact evaluator their error floor is linear in a,
  // not quadratic: halving the width halves the error.
  const BarrierSystem base = system_for_q(SolutionBranch::A, 20.0, 0.5, 1e-3, 10.0);
  BarrierSystem half = base;
  half.width = 0.5e-3;
  const double err_base =
      std::abs(phase_time_branch_a(base).value - phase_time_exact(base).value);
  const double err_half =
      std::abs(phase_time_branch_a(half).value - phase_time_exact(half).value);
  const double ratio = err_base / err_half;
  CHECK(ratio > 1.8);
  CHECK(ratio < 2.2);
}

TEST_CASE("characterization: percent-level accuracy at E = 20 mc^2, qa = 0.05") {
  // Observed accuracy of the closed forms against the exact evaluator at
  // the relativistic transparent benchmark point (a = 0.1, L = 10).
  const BarrierSystem above = system_for_q(SolutionBranch::A, 20.0, 0.5, 0.1, 10.0);
  const BarrierSystem below = system_for_q(SolutionBranch::B, 20.0, 0.5, 0.1, 10.0);
  const double rel_a =
      std::abs(phase_time_branch_a(above).value - phase_time_exact(above).value) /
      phase_time_exact(above).value;
  const double rel_b =
      std::abs(phase_time_branch_b(below).value - phase_time_exact(below).value) /
      phase_time_exact(below).value;
  CHECK(rel_a < 0.05);
  CHECK(rel_b < 0.05);
}

}  // TEST_SUITE
