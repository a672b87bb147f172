#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "drfeas/function1d.hpp"
#include "drfeas/methods.hpp"

namespace drfeas {

/// A point (x, rho) of R x R.
struct EpiPoint {
  double x = 0.0;
  double rho = 0.0;
  bool operator==(const EpiPoint&) const = default;
};

/// Membership of a point in B = epi f and in its reflection B' = {rho <= -f(x)} through
/// the axis A = R x {0}.
enum class Region { InBOnly, InBPrimeOnly, InBoth, InNeither };

std::string_view to_string(Region region);

/// Nearest point of epi f to z. Points already in epi f are returned unchanged;
/// otherwise the result is (p, f(p)) with p between z.x and the minimizer of f.
/// Builtin functions use closed forms, custom ones the bracketed search below.
EpiPoint project_epigraph(const ConvexFunction1D& f, EpiPoint z);

/// Bracketed bisection for the projection, valid for any ConvexFunction1D.
///
/// Searches [min(x, u), max(x, u)] (u the minimizer) for the zero of the monotone map
/// p - x + max(f(p) - rho, 0) f'(p), which is the derivative of the convex function
/// p -> (|p - x|^2 + max(f(p) - rho, 0)^2) / 2. Throws NoConvergence if the bracket
/// has not collapsed after 200 halvings.
EpiPoint project_epigraph_bisection(const ConvexFunction1D& f, EpiPoint z);

/// Region of z. On the common boundary the point counts as a member of both sets;
/// a point missing both by at most 1e-14 (relative) is reported as InBoth.
Region classify_region(const ConvexFunction1D& f, EpiPoint z);

struct EpiStep {
  EpiPoint next;
  Region region;  // region of the input point, which selects the branch taken
};

/// One Douglas-Rachford step for A = R x {0}, B = epi f, in closed form:
/// z in B' maps to (x, 0); otherwise (x+, rho + f(x+)) with (x+, f(x+)) = P_B(x, -rho).
EpiStep dr_step_epi(const ConvexFunction1D& f, EpiPoint z);

struct EpiTrace {
  IterationTrace trace;
  std::vector<Region> regions;  // region of z_n for every stored step
};

/// Iterates dr_step_epi until z_{n+1} = z_n (relative eta) or max_iter steps.
/// Requires inf f < 0, otherwise throws PreconditionViolated.
EpiTrace run_epi(const ConvexFunction1D& f, EpiPoint z0, double eta = 1e-14,
                 std::size_t max_iter = 100000);

enum class WitnessFamily { AbsShift, Quadratic };

WitnessFamily parse_witness_family(std::string_view name);
std::string_view to_string(WitnessFamily family);

struct WitnessResult {
  EpiPoint z;
  EpiPoint tz;
  double step_residual = 0.0;  // ||z - Tz||
  double fix_distance = 0.0;   // distance of Tz to [-1, 1] x {0}
};

/// Evaluates one DR step at the witness point of each family:
/// AbsShift uses f = |x| - 1 and z = (1 + eps, eps), Quadratic uses f = x^2 - 1 and
/// z = (1 + eps, -eps). In both cases Fix T = [-1, 1] x {0}.
WitnessResult luque_witness(WitnessFamily family, double eps);

}  // namespace drfeas
