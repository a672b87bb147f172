#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drfeas/sets.hpp"

namespace drfeas {

enum class MethodKind { DRA, MAP, MRP, SPINGARN };

std::string_view to_string(MethodKind kind);
/// Accepts "DRA", "MAP", "MRP", "SPINGARN" (case-insensitive).
MethodKind parse_method(std::string_view name);

enum class Monitor { Iterate, Shadow };

/// Combination of stopping criteria; the first one satisfied ends the run.
///
/// `exact_eta` stops when ||z_{n+1} - z_n|| <= eta (1 + ||z_n||). `feasibility_tol`
/// stops when the monitored point is within tol of the target: for Monitor::Iterate
/// that is max(d_A(z_n), d_B(z_n)), for Monitor::Shadow it is d_B(P_A z_n).
struct StoppingRule {
  std::optional<double> exact_eta;
  std::optional<double> feasibility_tol;
  Monitor monitor = Monitor::Iterate;
  std::size_t max_iter = 100000;

  static StoppingRule exact_fixed_point(double eta = 1e-14, std::size_t max_iter = 100000);
  static StoppingRule feasibility(double tol, Monitor monitor = Monitor::Iterate,
                                  std::size_t max_iter = 100000);

  /// Throws ValidationError for non-positive tolerances or max_iter == 0.
  void validate() const;
  bool operator==(const StoppingRule&) const = default;
};

enum class Termination { ExactFixedPoint, Feasible, MaxIterExceeded };

std::string_view to_string(Termination reason);

struct IterationStep {
  std::size_t n = 0;
  Vector z;     // governing iterate z_n
  Vector a;     // P_A z_n (the shadow)
  Vector r;     // R_A z_n = 2 a_n - z_n
  Vector pb_r;  // P_B r_n
  double d_a = 0.0;         // d_A(z_n)
  double d_b = 0.0;         // d_B(z_n)
  double d_b_shadow = 0.0;  // d_B(a_n)
};

struct IterationTrace {
  MethodKind method = MethodKind::DRA;
  std::vector<IterationStep> steps;
  Termination reason = Termination::MaxIterExceeded;
  std::size_t iterations = 0;
  Vector final_point;
  bool exact = false;
  /// ||z_n - z_{n-1}|| at the last step taken (0 when no step was taken).
  double last_step_norm = 0.0;
  /// Spingarn runs on affine A are carried out on A - t; this records t (empty otherwise).
  Vector translation;
  std::size_t stride = 1;
};

/// Options that do not affect the iterates themselves.
struct RunOptions {
  /// Store every stride-th step (plus the first and last). stride == 1 keeps everything.
  std::size_t stride = 1;
};

struct DraStep {
  Vector z_next;
  Vector a;
  Vector r;
  Vector pbr;
};

/// One Douglas-Rachford step T = Id - P_A + P_B R_A.
DraStep dra_step(const SetDescriptor& A, const SetDescriptor& B, const Vector& z);

/// P_A P_B z.
Vector map_step(const SetDescriptor& A, const SetDescriptor& B, const Vector& z);

/// P_A (2 P_B z - z).
Vector mrp_step(const SetDescriptor& A, const SetDescriptor& B, const Vector& z);

/// Spingarn's partial-inverse state: a in A, b in A-perp.
struct SpingarnState {
  Vector a;
  Vector b;
};

/// True when a in A, b in A-perp and <a,b> = 0 up to tol.
bool is_valid_state(const SetDescriptor& A, const SpingarnState& s, double tol = 1e-10);

/// One step of the method of partial inverses. A must be a linear subspace.
SpingarnState spingarn_step(const SetDescriptor& A, const SetDescriptor& B,
                            const SpingarnState& s);

/// Runs `method` from z0. For SPINGARN the start state is (P_A z0, -(z0 - P_A z0)) so
/// that a_0 - b_0 = z0; use run_spingarn to choose (a0, b0) directly.
IterationTrace run(const SetDescriptor& A, const SetDescriptor& B, MethodKind method,
                   const Vector& z0, const StoppingRule& stop, const RunOptions& opts = {});

/// Runs Spingarn's method from (a0, b0), recording z_n = a_n - b_n in the trace.
/// Affine A is translated to a linear subspace first (see IterationTrace::translation);
/// a0 and b0 are then taken relative to that translation. Throws PreconditionViolated
/// unless a0 lies in (the linear part of) A and b0 in its orthogonal complement.
IterationTrace run_spingarn(const SetDescriptor& A, const SetDescriptor& B,
                            const SpingarnState& s0, const StoppingRule& stop,
                            const RunOptions& opts = {});

/// The shadow sequence (P_A z_n) over the stored steps of a trace.
std::vector<Vector> shadow(const SetDescriptor& A, const IterationTrace& trace);

}  // namespace drfeas
