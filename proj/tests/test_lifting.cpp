#include <cmath>

#include "doctest.h"
#include "drfeas/error.hpp"
#include "drfeas/lifting.hpp"
#include "support.hpp"

using namespace drfeas;
using drfeas::testing::Rng;

namespace {

Vector v2(double x, double y) { return Vector{{x, y}}; }

std::vector<SetDescriptor> halfspace_pair() {
  return {Halfspace(v2(-1, -1), 0.0), Halfspace(v2(1, 0), 2.0)};
}

std::vector<SetDescriptor> random_family(Rng& rng, Eigen::Index n) {
  std::vector<SetDescriptor> sets;
  const int m = rng.integer(2, 4);
  for (int j = 0; j < m; ++j) {
    switch (rng.integer(0, 2)) {
      case 0: sets.push_back(drfeas::testing::random_set(rng, "halfspace", n)); break;
      case 1: sets.push_back(drfeas::testing::random_set(rng, "box", n)); break;
      default: sets.push_back(drfeas::testing::random_set(rng, "ball", n)); break;
    }
  }
  return sets;
}

}  // namespace

TEST_CASE("lift structure") {
  const LiftedProblem lp = lift(halfspace_pair());
  CHECK(lp.copies() == 2);
  CHECK(lp.base_dim() == 2);
  CHECK(lp.a_lift().dim() == 4);
  CHECK(lp.b_lift().dim() == 4);
  CHECK(lp.a_lift().is_linear_subspace());
  CHECK(lp.embed(v2(1, 2)) == Vector{{1.0, 2.0, 1.0, 2.0}});
  CHECK(lp.restrict(Vector{{1.0, 2.0, 3.0, 6.0}}) == v2(2, 4));

  CHECK_THROWS_AS(lift({}), Error);
  CHECK_THROWS_AS(lift({Orthant(2), Orthant(3)}), Error);
}

TEST_CASE("single set: DRA on the lift is projection onto C") {
  const Ball c(v2(1, 1), 1.0);
  const LiftedProblem lp = lift({c});
  const Vector x0 = v2(5, 1);
  const auto sol = solve_lifted(lp, MethodKind::DRA, x0, StoppingRule::exact_fixed_point());
  CHECK(sol.trace.exact);
  CHECK((sol.x - project(c, x0)).norm() <= 1e-12);
  CHECK(sol.trace.iterations <= 2);
}

TEST_CASE("two halfspaces converge finitely") {
  const LiftedProblem lp = lift(halfspace_pair());
  const auto sol = solve_lifted(lp, MethodKind::DRA, v2(10, 10), StoppingRule::exact_fixed_point());
  CHECK(sol.trace.exact);
  CHECK(sol.trace.reason == Termination::ExactFixedPoint);
  CHECK(sol.trace.iterations < 100000);
  // The shadow of the final lifted point is diagonal and in every halfspace.
  const Vector x = sol.x;
  CHECK(x[0] >= -x[1] - 1e-10);
  CHECK(x[0] <= 2.0 + 1e-10);
}

TEST_CASE("start at a common interior point") {
  const std::vector<SetDescriptor> boxes{Box(v2(-1, -1), v2(1, 1)), Box(v2(-0.5, -2), v2(3, 0.5)),
                                         Box(v2(-2, -0.2), v2(0.4, 4))};
  const Vector c = v2(0.1, 0.1);
  const LiftedProblem lp = lift(boxes);
  const auto sol = solve_lifted(lp, MethodKind::DRA, c, StoppingRule::exact_fixed_point());
  CHECK(sol.trace.exact);
  CHECK(sol.trace.iterations == 1);
  CHECK((sol.trace.final_point - lp.embed(c)).norm() <= 1e-15);
  CHECK((sol.x - c).norm() <= 1e-15);
}

TEST_CASE("Spingarn on the lift follows DRA") {
  Rng rng(71);
  int mismatches = 0;
  for (int k = 0; k < 30; ++k) {
    const Eigen::Index n = rng.integer(2, 4);
    const LiftedProblem lp = lift(random_family(rng, n));
    const Vector x0 = rng.vector(n, 10.0);
    const auto rule = StoppingRule::exact_fixed_point(1e-300, 200);
    const auto dr = solve_lifted(lp, MethodKind::DRA, x0, rule);
    const auto sp = solve_lifted(lp, MethodKind::SPINGARN, x0, rule);
    REQUIRE(dr.trace.steps.size() == sp.trace.steps.size());
    for (std::size_t i = 0; i < dr.trace.steps.size(); ++i) {
      const double tol = 1e-9 * (1 + lp.embed(x0).norm());
      if ((dr.trace.steps[i].z - sp.trace.steps[i].z).norm() > tol) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("diagonal projection is the replicated mean") {
  Rng rng(72);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Index n = rng.integer(1, 4);
    const LiftedProblem lp = lift(random_family(rng, n));
    const Vector z = rng.vector(lp.copies() * n, 10.0);
    const Vector mean = lp.restrict(z);
    Vector oracle = Vector::Zero(n);
    for (Eigen::Index j = 0; j < lp.copies(); ++j) oracle += z.segment(j * n, n);
    oracle /= static_cast<double>(lp.copies());
    CHECK((mean - oracle).norm() <= 1e-12 * (1 + oracle.norm()));
    CHECK((project(lp.a_lift(), z) - lp.embed(oracle)).norm() <= 1e-12 * (1 + z.norm()));
  }
}

TEST_CASE("lift soundness") {
  Rng rng(73);
  int disagreements = 0;
  int inside = 0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index n = rng.integer(1, 3);
    const auto sets = random_family(rng, n);
    const LiftedProblem lp = lift(sets);
    const Vector x = rng.vector(n, 4.0);
    bool all = true;
    for (const auto& c : sets) all = all && distance(c, x) <= 1e-10;
    const Vector e = lp.embed(x);
    const bool lifted = distance(lp.a_lift(), e) <= 1e-10 && distance(lp.b_lift(), e) <= 1e-10;
    if (all != lifted) ++disagreements;
    inside += all ? 1 : 0;
  }
  CHECK(disagreements == 0);
  CHECK(inside > 0);
}
