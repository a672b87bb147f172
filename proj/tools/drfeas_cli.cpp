// Command-line front end: runs problem-file sweeps and the Luque-condition witnesses.
//
//   drfeas --problem problems/line_orthant.json --out sweep.csv
//   drfeas --witness quadratic --eps 0.1,0.01,0.001

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drfeas/epigraph.hpp"
#include "drfeas/error.hpp"
#include "drfeas/problem.hpp"
#include "drfeas/sweep.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& s, const char* flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw drfeas::Error(drfeas::ErrorCode::ValidationError,
                        std::string("bad number '") + s + "' for " + flag);
  }
}

std::size_t to_count(const std::string& s, const char* flag) {
  const double v = to_double(s, flag);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw drfeas::Error(drfeas::ErrorCode::ValidationError,
                        std::string("bad count '") + s + "' for " + flag);
  }
  return static_cast<std::size_t>(v);
}

int run_witness(const std::string& family_name, const std::string& eps_list,
                const std::string& out_path) {
  const auto family = drfeas::parse_witness_family(family_name);
  std::ostringstream os;
  os << "family,eps,step_residual,fix_distance,tz_x,tz_rho\n";
  for (const auto& e : split(eps_list, ',')) {
    const double eps = to_double(e, "--eps");
    const auto w = drfeas::luque_witness(family, eps);
    os << drfeas::to_string(family) << ',' << drfeas::format_double(eps) << ','
       << drfeas::format_double(w.step_residual) << ',' << drfeas::format_double(w.fix_distance)
       << ',' << drfeas::format_double(w.tz.x) << ',' << drfeas::format_double(w.tz.rho) << '\n';
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!(out << os.str())) {
      throw drfeas::Error(drfeas::ErrorCode::IoError, "cannot write '" + out_path + "'");
    }
  }
  return 0;
}

struct Overrides {
  std::string methods;
  std::string out;
  std::string trace;
  std::string tol;
  std::string max_iter;
  std::string grid;
  std::string record_at;
};

void apply_overrides(drfeas::ProblemSpec& spec, const Overrides& o) {
  if (!o.methods.empty()) {
    spec.methods.clear();
    for (const auto& m : split(o.methods, ',')) spec.methods.push_back(drfeas::parse_method(m));
  }
  if (!o.out.empty()) spec.outputs.csv_path = o.out;
  if (!o.trace.empty()) spec.outputs.trace_path = o.trace;
  if (!o.tol.empty()) spec.stopping.tol = to_double(o.tol, "--tol");
  if (!o.max_iter.empty()) spec.stopping.max_iter = to_count(o.max_iter, "--max-iter");
  if (!o.grid.empty()) {
    const auto parts = split(o.grid, ',');
    if (parts.size() != 3) {
      throw drfeas::Error(drfeas::ErrorCode::ValidationError, "--grid expects lo,hi,steps");
    }
    spec.start = drfeas::GridSpec{to_double(parts[0], "--grid"), to_double(parts[1], "--grid"),
                                  to_count(parts[2], "--grid")};
  }
  if (!o.record_at.empty()) {
    spec.outputs.record_at.clear();
    if (o.record_at != "none") {
      for (const auto& n : split(o.record_at, ',')) {
        spec.outputs.record_at.push_back(to_count(n, "--record-at"));
      }
    }
  }
  spec.validate();
}

int run_problem(const std::string& path, const Overrides& overrides, unsigned jobs) {
  auto spec = drfeas::parse_problem(drfeas::read_file(path));
  apply_overrides(spec, overrides);

  const bool want_trace = !spec.outputs.trace_path.empty();
  const auto result = drfeas::sweep(spec, drfeas::SweepOptions{jobs, want_trace});

  if (spec.outputs.csv_path.empty()) {
    drfeas::write_csv(std::cout, result.rows, spec.dim, spec.outputs.record_at);
  } else {
    drfeas::emit_csv(result.rows, spec.outputs.csv_path, spec.dim, spec.outputs.record_at);
  }
  if (want_trace) {
    std::ofstream out(spec.outputs.trace_path, std::ios::binary);
    if (!out) {
      throw drfeas::Error(drfeas::ErrorCode::IoError,
                          "cannot open '" + spec.outputs.trace_path + "' for writing");
    }
    drfeas::write_traces(out, result.rows, result.traces);
    if (!out) throw drfeas::Error(drfeas::ErrorCode::IoError, "failed writing trace file");
  }

  std::size_t exact = 0;
  std::size_t capped = 0;
  for (const auto& row : result.rows) {
    exact += row.exact ? 1 : 0;
    capped += row.reason == drfeas::Termination::MaxIterExceeded ? 1 : 0;
  }
  std::cerr << result.rows.size() << " runs, " << exact << " exact, " << capped
            << " hit max_iter\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Douglas-Rachford feasibility sweeps and finite-convergence witnesses"};
  std::string problem;
  std::string witness;
  std::string eps = "0.1,0.01,0.001";
  unsigned jobs = 0;
  Overrides o;
  app.add_option("--problem", problem, "Problem file (JSON)");
  app.add_option("--method", o.methods, "Comma-separated methods: DRA,MAP,MRP,SPINGARN");
  app.add_option("--out", o.out, "CSV output path (default: stdout)");
  app.add_option("--trace", o.trace, "Per-iterate trace output path");
  app.add_option("--tol", o.tol, "Feasibility tolerance for MAP/MRP");
  app.add_option("--max-iter", o.max_iter, "Iteration cap");
  app.add_option("--grid", o.grid, "Start grid lo,hi,steps");
  app.add_option("--record-at", o.record_at, "Iterations at which d_B is recorded, or 'none'");
  app.add_option("--witness", witness, "Run the Luque witness: absshift | quadratic");
  app.add_option("--eps", eps, "Comma-separated eps values for --witness");
  app.add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (!witness.empty()) return run_witness(witness, eps, o.out);
    if (problem.empty()) {
      std::cerr << "one of --problem or --witness is required\n" << app.help();
      return kExitValidation;
    }
    return run_problem(problem, o, jobs);
  } catch (const drfeas::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == drfeas::ErrorCode::IoError ? kExitIo : kExitValidation;
  }
}
