#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "drfeas/methods.hpp"
#include "drfeas/sets.hpp"

namespace drfeas {

/// Square grid [lo, hi]^2 with `steps` points per axis (endpoints included).
struct GridSpec {
  double lo = -100.0;
  double hi = 100.0;
  std::size_t steps = 41;
  bool operator==(const GridSpec&) const = default;

  /// Grid points in row-major order: y varies slowest, x fastest.
  std::vector<Vector> points() const;
};

struct OutputSpec {
  std::string csv_path;
  std::string trace_path;
  std::vector<std::size_t> record_at{5, 10};
  bool operator==(const OutputSpec&) const = default;
};

/// Stopping parameters of a sweep. DRA and SPINGARN rows stop on exact fixed points,
/// MAP and MRP rows on feasibility of the monitored point.
struct StoppingSpec {
  double eta = 1e-14;
  double tol = 1e-4;
  Monitor monitor = Monitor::Iterate;
  std::size_t max_iter = 100000;
  bool operator==(const StoppingSpec&) const = default;

  /// The rule actually used for `method`.
  StoppingRule rule_for(MethodKind method) const;
};

/// One unit of work for the command-line tool.
///
/// Either `set_a`/`set_b` are given, or `sets` is non-empty and `lift` is true, in
/// which case the product-space reformulation is solved and `dim` is the base dimension.
struct ProblemSpec {
  Eigen::Index dim = 2;
  std::optional<SetDescriptor> set_a;
  std::optional<SetDescriptor> set_b;
  std::vector<SetDescriptor> sets;
  bool lift = false;
  std::vector<MethodKind> methods{MethodKind::DRA};
  std::variant<Vector, GridSpec> start = GridSpec{};
  StoppingSpec stopping;
  OutputSpec outputs;

  bool operator==(const ProblemSpec& o) const;

  /// Throws ValidationError when the spec is inconsistent.
  void validate() const;
};

/// Parses a problem file. Throws ParseError for malformed JSON or mistyped fields
/// and ValidationError for well-formed but invalid content (rank-deficient L, grid on
/// a space other than R^2, unknown method, ...).
ProblemSpec parse_problem(std::string_view text);

/// Canonical JSON form; parse_problem(serialize_problem(s)) == s.
std::string serialize_problem(const ProblemSpec& spec);

/// JSON encoding of a single set descriptor.
std::string serialize_set(const SetDescriptor& set);
SetDescriptor parse_set(std::string_view text);

/// Reads a file, throwing IoError on failure.
std::string read_file(const std::string& path);

}  // namespace drfeas
