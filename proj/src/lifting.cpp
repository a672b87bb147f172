#include "drfeas/lifting.hpp"

#include <string>

#include "drfeas/error.hpp"

namespace drfeas {

namespace {

Eigen::Index common_dim(const std::vector<SetDescriptor>& sets) {
  if (sets.empty()) throw Error(ErrorCode::InvalidSet, "lifting needs at least one set");
  const auto n = sets.front().dim();
  for (const auto& s : sets) {
    if (s.dim() != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "lifted sets must share a dimension (" + std::to_string(n) + " vs " +
                      std::to_string(s.dim()) + ")");
    }
  }
  return n;
}

}  // namespace

LiftedProblem::LiftedProblem(std::vector<SetDescriptor> sets)
    : copies_(static_cast<Eigen::Index>(sets.size())),
      base_dim_(common_dim(sets)),
      a_lift_(Diagonal(copies_, base_dim_)),
      b_lift_(Product(std::move(sets))) {}

const std::vector<SetDescriptor>& LiftedProblem::sets() const {
  return b_lift_.get_if<Product>()->components;
}

Vector LiftedProblem::embed(const Vector& x) const {
  if (x.size() != base_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "embed expects a point of the base space");
  }
  return x.replicate(copies_, 1);
}

Vector LiftedProblem::restrict(const Vector& lifted) const {
  if (lifted.size() != copies_ * base_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "restrict expects a point of the product space");
  }
  return lifted.reshaped(base_dim_, copies_).rowwise().mean();
}

LiftedProblem lift(std::vector<SetDescriptor> sets) { return LiftedProblem(std::move(sets)); }

LiftedSolution solve_lifted(const LiftedProblem& lp, MethodKind method, const Vector& x0,
                            const StoppingRule& stop, const RunOptions& opts) {
  const Vector z0 = lp.embed(x0);
  LiftedSolution out;
  if (method == MethodKind::SPINGARN) {
    out.trace = run_spingarn(lp.a_lift(), lp.b_lift(),
                             SpingarnState{z0, Vector::Zero(z0.size())}, stop, opts);
  } else {
    out.trace = run(lp.a_lift(), lp.b_lift(), method, z0, stop, opts);
  }
  out.x = lp.restrict(out.trace.final_point);
  return out;
}

}  // namespace drfeas
