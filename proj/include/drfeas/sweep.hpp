#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "drfeas/methods.hpp"
#include "drfeas/problem.hpp"

namespace drfeas {

/// Feasibility levels whose first hitting time is recorded for every row.
inline constexpr std::array<double, 2> kRecordedTolerances{1e-2, 1e-4};

struct SweepRow {
  Vector z0;
  MethodKind method = MethodKind::DRA;
  std::size_t iterations = 0;
  bool exact = false;
  Vector final_point;
  /// Distance of the monitored point to B at each record_at index (empty when the
  /// run stopped earlier without certifying a fixed point).
  std::vector<std::optional<double>> d_b_at;
  /// First n with monitored distance below each of kRecordedTolerances.
  std::array<std::optional<std::size_t>, kRecordedTolerances.size()> first_n_tol;
  Termination reason = Termination::MaxIterExceeded;
};

struct SweepOptions {
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned jobs = 0;
  bool keep_traces = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<IterationTrace> traces;  // parallel to rows when keep_traces is set
};

/// Runs every (start point, method) pair. Rows follow the grid's row-major order and,
/// within a point, the declared method order, whatever the completion order.
SweepResult sweep(const ProblemSpec& spec, const SweepOptions& opts = {});

/// Distance of the point each method monitors: the shadow for DRA and SPINGARN,
/// the iterate for MAP and MRP.
double monitored_distance(MethodKind method, const IterationStep& step);

/// CSV header for a given dimension and record_at list.
std::string csv_header(Eigen::Index dim, const std::vector<std::size_t>& record_at);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, Eigen::Index dim,
               const std::vector<std::size_t>& record_at);

/// Writes the CSV to `path`; throws IoError when the file cannot be written and
/// ValidationError when `rows` is empty.
void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, Eigen::Index dim,
              const std::vector<std::size_t>& record_at);

/// Per-iterate dump of traces (one block per run), used for orbit plots.
void write_traces(std::ostream& os, const std::vector<SweepRow>& rows,
                  const std::vector<IterationTrace>& traces);

/// Formats with 17 significant digits.
std::string format_double(double v);

}  // namespace drfeas
