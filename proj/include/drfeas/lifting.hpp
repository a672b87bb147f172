#pragma once

#include <vector>

#include "drfeas/methods.hpp"
#include "drfeas/sets.hpp"

namespace drfeas {

/// Two-set reformulation of an M-set feasibility problem in R^N.
///
/// The product space R^{MN} carries the unweighted sum of blockwise inner products.
/// A x in all C_j corresponds to the diagonal point (x, ..., x) lying in both
/// `a_lift` (the diagonal) and `b_lift` (C_1 x ... x C_M).
class LiftedProblem {
 public:
  explicit LiftedProblem(std::vector<SetDescriptor> sets);

  Eigen::Index copies() const { return copies_; }
  Eigen::Index base_dim() const { return base_dim_; }
  const SetDescriptor& a_lift() const { return a_lift_; }
  const SetDescriptor& b_lift() const { return b_lift_; }
  const std::vector<SetDescriptor>& sets() const;

  /// x -> (x, ..., x).
  Vector embed(const Vector& x) const;
  /// Mean of the blocks; equals every block at a diagonal point.
  Vector restrict(const Vector& lifted) const;

 private:
  Eigen::Index copies_;
  Eigen::Index base_dim_;
  SetDescriptor a_lift_;
  SetDescriptor b_lift_;
};

/// Builds the lifted problem. Throws DimensionMismatch unless all sets share R^N.
LiftedProblem lift(std::vector<SetDescriptor> sets);

struct LiftedSolution {
  Vector x;  // restrict(final lifted point)
  IterationTrace trace;
};

/// Runs `method` on (a_lift, b_lift) from embed(x0). SPINGARN starts from
/// (embed(x0), 0), which makes its trace coincide with DRA's.
LiftedSolution solve_lifted(const LiftedProblem& lp, MethodKind method, const Vector& x0,
                            const StoppingRule& stop, const RunOptions& opts = {});

}  // namespace drfeas
