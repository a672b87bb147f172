#include "drfeas/methods.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <string>

#include "drfeas/error.hpp"

namespace drfeas {

std::string_view to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::DRA: return "DRA";
    case MethodKind::MAP: return "MAP";
    case MethodKind::MRP: return "MRP";
    case MethodKind::SPINGARN: return "SPINGARN";
  }
  return "?";
}

MethodKind parse_method(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto kind : {MethodKind::DRA, MethodKind::MAP, MethodKind::MRP, MethodKind::SPINGARN}) {
    if (upper == to_string(kind)) return kind;
  }
  throw Error(ErrorCode::ValidationError, "unknown method '" + std::string(name) + "'");
}

std::string_view to_string(Termination reason) {
  switch (reason) {
    case Termination::ExactFixedPoint: return "exact_fixed_point";
    case Termination::Feasible: return "feasible";
    case Termination::MaxIterExceeded: return "max_iter_exceeded";
  }
  return "?";
}

StoppingRule StoppingRule::exact_fixed_point(double eta, std::size_t max_iter) {
  StoppingRule rule;
  rule.exact_eta = eta;
  rule.max_iter = max_iter;
  return rule;
}

StoppingRule StoppingRule::feasibility(double tol, Monitor monitor, std::size_t max_iter) {
  StoppingRule rule;
  rule.feasibility_tol = tol;
  rule.monitor = monitor;
  rule.max_iter = max_iter;
  return rule;
}

void StoppingRule::validate() const {
  if (exact_eta && !(*exact_eta > 0.0 && std::isfinite(*exact_eta))) {
    throw Error(ErrorCode::ValidationError, "exact fixed-point tolerance must be positive");
  }
  if (feasibility_tol && !(*feasibility_tol > 0.0 && std::isfinite(*feasibility_tol))) {
    throw Error(ErrorCode::ValidationError, "feasibility tolerance must be positive");
  }
  if (max_iter < 1) throw Error(ErrorCode::ValidationError, "max_iter must be at least 1");
}

DraStep dra_step(const SetDescriptor& A, const SetDescriptor& B, const Vector& z) {
  DraStep s;
  s.a = project(A, z);
  s.r = 2.0 * s.a - z;
  s.pbr = project(B, s.r);
  s.z_next = z - s.a + s.pbr;
  return s;
}

Vector map_step(const SetDescriptor& A, const SetDescriptor& B, const Vector& z) {
  return project(A, project(B, z));
}

Vector mrp_step(const SetDescriptor& A, const SetDescriptor& B, const Vector& z) {
  return project(A, reflect(B, z));
}

bool is_valid_state(const SetDescriptor& A, const SpingarnState& s, double tol) {
  if (s.a.size() != A.dim() || s.b.size() != A.dim()) return false;
  const double scale = 1.0 + s.a.norm() + s.b.norm();
  return std::abs(s.a.dot(s.b)) <= tol * std::max(1.0, s.a.norm() * s.b.norm()) &&
         (project(A, s.a) - s.a).norm() <= tol * scale && project(A, s.b).norm() <= tol * scale;
}

namespace {

using Projector = std::function<Vector(const Vector&)>;

// One partial-inverse step on a linear subspace A (given by its projector).
SpingarnState partial_inverse_step(const Projector& proj_a, const Projector& proj_b,
                                   const SpingarnState& s) {
  const Vector sum = s.a + s.b;
  const Vector a_prime = proj_b(sum);
  const Vector b_prime = sum - a_prime;
  return SpingarnState{proj_a(a_prime), b_prime - proj_a(b_prime)};
}

// Linear subspace parallel to an affine-type set.
SetDescriptor linear_part(const SetDescriptor& A) {
  if (const auto* s = A.get_if<Affine>()) return Affine(s->L(), Vector::Zero(s->a().size()));
  if (const auto* s = A.get_if<Hyperplane>()) return Hyperplane(s->normal, 0.0);
  if (A.get_if<Diagonal>()) return A;
  throw Error(ErrorCode::InvalidSubspace, A.kind() + " set is not an affine subspace");
}

void check_dims(const SetDescriptor& A, const SetDescriptor& B, const Vector& z) {
  if (A.dim() != B.dim() || z.size() != A.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "A, B and the start point must share a dimension");
  }
  require_finite(z, "start point");
}

// Per-iterate bookkeeping shared by all drivers. `Stepper` supplies:
//   IterationStep observe(n) const  - fields of the current iterate
//   void advance(step)              - moves to the next iterate
template <class Stepper>
IterationTrace drive(MethodKind method, Stepper& stepper, const StoppingRule& stop,
                     const RunOptions& opts) {
  stop.validate();
  IterationTrace trace;
  trace.method = method;
  trace.stride = std::max<std::size_t>(opts.stride, 1);

  std::size_t n = 0;
  IterationStep current = stepper.observe(0);
  auto keep = [&](const IterationStep& s) {
    if (trace.steps.empty() || trace.steps.back().n != s.n) trace.steps.push_back(s);
  };
  auto finish = [&](Termination reason) {
    keep(current);
    trace.reason = reason;
    trace.iterations = n;
    trace.final_point = current.z;
    trace.exact = reason == Termination::ExactFixedPoint;
  };

  while (true) {
    if (n % trace.stride == 0) keep(current);
    if (stop.feasibility_tol) {
      const double measure = stop.monitor == Monitor::Shadow
                                 ? current.d_b_shadow
                                 : std::max(current.d_a, current.d_b);
      if (measure < *stop.feasibility_tol) {
        finish(Termination::Feasible);
        break;
      }
    }
    if (n >= stop.max_iter) {
      finish(Termination::MaxIterExceeded);
      break;
    }
    const Vector z_prev = current.z;
    stepper.advance(current);
    ++n;
    current = stepper.observe(n);
    trace.last_step_norm = (current.z - z_prev).norm();
    if (stop.exact_eta &&
        trace.last_step_norm <= std::max(*stop.exact_eta * (1.0 + z_prev.norm()), kToleranceFloor)) {
      finish(Termination::ExactFixedPoint);
      break;
    }
  }
  return trace;
}

class PlainStepper {
 public:
  PlainStepper(const SetDescriptor& A, const SetDescriptor& B, MethodKind method, Vector z0)
      : A_(A), B_(B), method_(method), z_(std::move(z0)) {}

  IterationStep observe(std::size_t n) const {
    IterationStep s;
    s.n = n;
    s.z = z_;
    s.a = project(A_, z_);
    s.r = 2.0 * s.a - z_;
    s.pb_r = project(B_, s.r);
    s.d_a = (z_ - s.a).norm();
    s.d_b = distance(B_, z_);
    s.d_b_shadow = distance(B_, s.a);
    return s;
  }

  void advance(const IterationStep& s) {
    switch (method_) {
      case MethodKind::DRA: z_ = s.z - s.a + s.pb_r; break;
      case MethodKind::MAP: z_ = map_step(A_, B_, z_); break;
      case MethodKind::MRP: z_ = mrp_step(A_, B_, z_); break;
      case MethodKind::SPINGARN:
        throw Error(ErrorCode::PreconditionViolated, "SPINGARN uses its own stepper");
    }
  }

 private:
  const SetDescriptor& A_;
  const SetDescriptor& B_;
  MethodKind method_;
  Vector z_;
};

// Iterates on (A - t, B - t) and reports points shifted back by t.
class SpingarnStepper {
 public:
  SpingarnStepper(const SetDescriptor& A0, const SetDescriptor& B, Vector t, SpingarnState s0)
      : A0_(A0), B_(B), t_(std::move(t)), state_(std::move(s0)) {
    proj_a_ = [this](const Vector& x) { return project(A0_, x); };
    proj_b_ = [this](const Vector& x) -> Vector { return project(B_, x + t_) - t_; };
  }
  SpingarnStepper(const SpingarnStepper&) = delete;
  SpingarnStepper& operator=(const SpingarnStepper&) = delete;

  IterationStep observe(std::size_t n) const {
    IterationStep s;
    s.n = n;
    s.z = state_.a - state_.b + t_;
    s.a = state_.a + t_;
    s.r = state_.a + state_.b + t_;
    s.pb_r = project(B_, s.r);
    s.d_a = state_.b.norm();
    s.d_b = distance(B_, s.z);
    s.d_b_shadow = distance(B_, s.a);
    return s;
  }

  void advance(const IterationStep&) { state_ = partial_inverse_step(proj_a_, proj_b_, state_); }

 private:
  const SetDescriptor& A0_;
  const SetDescriptor& B_;
  Vector t_;
  SpingarnState state_;
  Projector proj_a_;
  Projector proj_b_;
};

}  // namespace

SpingarnState spingarn_step(const SetDescriptor& A, const SetDescriptor& B,
                            const SpingarnState& s) {
  if (!A.is_linear_subspace()) {
    throw Error(ErrorCode::InvalidSubspace, "Spingarn's method needs a linear subspace A");
  }
  if (A.dim() != B.dim() || s.a.size() != A.dim() || s.b.size() != A.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state and sets must share a dimension");
  }
  return partial_inverse_step([&](const Vector& x) { return project(A, x); },
                              [&](const Vector& x) { return project(B, x); }, s);
}

IterationTrace run_spingarn(const SetDescriptor& A, const SetDescriptor& B,
                            const SpingarnState& s0, const StoppingRule& stop,
                            const RunOptions& opts) {
  if (!A.is_affine_subspace()) {
    throw Error(ErrorCode::InvalidSubspace, "Spingarn's method needs an affine subspace A");
  }
  check_dims(A, B, s0.a);
  check_dims(A, B, s0.b);
  const SetDescriptor A0 = linear_part(A);
  if (!is_valid_state(A0, s0)) {
    throw Error(ErrorCode::PreconditionViolated, "start state needs a0 in A and b0 orthogonal to A");
  }
  Vector t = A.is_linear_subspace() ? Vector::Zero(A.dim()) : project(A, Vector::Zero(A.dim()));
  SpingarnStepper stepper(A0, B, t, s0);
  auto trace = drive(MethodKind::SPINGARN, stepper, stop, opts);
  if (!A.is_linear_subspace()) trace.translation = std::move(t);
  return trace;
}

IterationTrace run(const SetDescriptor& A, const SetDescriptor& B, MethodKind method,
                   const Vector& z0, const StoppingRule& stop, const RunOptions& opts) {
  check_dims(A, B, z0);
  if (method == MethodKind::SPINGARN) {
    if (!A.is_affine_subspace()) {
      throw Error(ErrorCode::InvalidSubspace, "Spingarn's method needs an affine subspace A");
    }
    const SetDescriptor A0 = linear_part(A);
    const Vector t =
        A.is_linear_subspace() ? Vector::Zero(A.dim()) : project(A, Vector::Zero(A.dim()));
    const Vector shifted = z0 - t;
    const Vector a0 = project(A0, shifted);
    return run_spingarn(A, B, SpingarnState{a0, a0 - shifted}, stop, opts);
  }
  PlainStepper stepper(A, B, method, z0);
  return drive(method, stepper, stop, opts);
}

std::vector<Vector> shadow(const SetDescriptor& A, const IterationTrace& trace) {
  std::vector<Vector> out;
  out.reserve(trace.steps.size());
  for (const auto& s : trace.steps) out.push_back(project(A, s.z));
  return out;
}

}  // namespace drfeas
