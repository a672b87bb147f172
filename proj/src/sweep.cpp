#include "drfeas/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "drfeas/error.hpp"
#include "drfeas/lifting.hpp"

namespace drfeas {

namespace {

SweepRow summarize(const Vector& z0, MethodKind method, const IterationTrace& trace,
                   const Vector& final_point, const std::vector<std::size_t>& record_at) {
  SweepRow row;
  row.z0 = z0;
  row.method = method;
  row.iterations = trace.iterations;
  row.exact = trace.exact;
  row.final_point = final_point;
  row.reason = trace.reason;

  for (const auto& step : trace.steps) {
    const double d = monitored_distance(method, step);
    for (std::size_t k = 0; k < kRecordedTolerances.size(); ++k) {
      if (!row.first_n_tol[k] && d < kRecordedTolerances[k]) row.first_n_tol[k] = step.n;
    }
  }
  row.d_b_at.reserve(record_at.size());
  for (std::size_t n : record_at) {
    const auto it = std::find_if(trace.steps.begin(), trace.steps.end(),
                                 [n](const IterationStep& s) { return s.n == n; });
    if (it != trace.steps.end()) {
      row.d_b_at.emplace_back(monitored_distance(method, *it));
    } else if (trace.exact && !trace.steps.empty() && n > trace.iterations) {
      // A certified fixed point repeats forever.
      row.d_b_at.emplace_back(monitored_distance(method, trace.steps.back()));
    } else {
      row.d_b_at.emplace_back(std::nullopt);
    }
  }
  return row;
}

struct Job {
  std::size_t point;
  MethodKind method;
};

}  // namespace

double monitored_distance(MethodKind method, const IterationStep& step) {
  if (method == MethodKind::MAP || method == MethodKind::MRP) return std::max(step.d_a, step.d_b);
  return step.d_b_shadow;
}

SweepResult sweep(const ProblemSpec& spec, const SweepOptions& opts) {
  spec.validate();
  std::vector<Vector> starts;
  if (const auto* g = std::get_if<GridSpec>(&spec.start)) {
    starts = g->points();
  } else {
    starts.push_back(std::get<Vector>(spec.start));
  }

  std::optional<LiftedProblem> lifted;
  if (spec.lift) lifted.emplace(spec.sets);

  std::vector<Job> jobs;
  jobs.reserve(starts.size() * spec.methods.size());
  for (std::size_t p = 0; p < starts.size(); ++p) {
    for (auto m : spec.methods) jobs.push_back(Job{p, m});
  }

  SweepResult result;
  result.rows.resize(jobs.size());
  if (opts.keep_traces) result.traces.resize(jobs.size());

  auto run_job = [&](std::size_t i) {
    const Job& job = jobs[i];
    const Vector& z0 = starts[job.point];
    const StoppingRule rule = spec.stopping.rule_for(job.method);
    IterationTrace trace;
    Vector final_point;
    if (lifted) {
      auto sol = solve_lifted(*lifted, job.method, z0, rule);
      trace = std::move(sol.trace);
      final_point = std::move(sol.x);
    } else {
      trace = run(*spec.set_a, *spec.set_b, job.method, z0, rule);
      final_point = trace.final_point;
    }
    result.rows[i] = summarize(z0, job.method, trace, final_point, spec.outputs.record_at);
    if (opts.keep_traces) result.traces[i] = std::move(trace);
  };

  unsigned workers = opts.jobs != 0 ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          try {
            run_job(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = jobs.size();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_header(Eigen::Index dim, const std::vector<std::size_t>& record_at) {
  std::string h;
  auto coords = [&](const std::string& prefix) {
    if (dim == 2) {
      h += prefix + "_x," + prefix + "_y,";
    } else {
      for (Eigen::Index i = 0; i < dim; ++i) h += prefix + "_" + std::to_string(i) + ",";
    }
  };
  coords("z0");
  h += "method,iterations,exact,";
  coords("final");
  for (std::size_t n : record_at) h += "dB_at_" + std::to_string(n) + ",";
  h += "first_n_tol_1e2,first_n_tol_1e4,reason";
  return h;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows, Eigen::Index dim,
               const std::vector<std::size_t>& record_at) {
  os << csv_header(dim, record_at) << '\n';
  for (const auto& row : rows) {
    std::string line;
    for (Eigen::Index i = 0; i < row.z0.size(); ++i) line += format_double(row.z0[i]) + ",";
    line += std::string(to_string(row.method)) + "," + std::to_string(row.iterations) + "," +
            (row.exact ? "true" : "false") + ",";
    for (Eigen::Index i = 0; i < row.final_point.size(); ++i) {
      line += format_double(row.final_point[i]) + ",";
    }
    for (const auto& d : row.d_b_at) line += (d ? format_double(*d) : std::string()) + ",";
    for (const auto& n : row.first_n_tol) line += (n ? std::to_string(*n) : std::string()) + ",";
    line += std::string(to_string(row.reason));
    os << line << '\n';
  }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::string& path, Eigen::Index dim,
              const std::vector<std::size_t>& record_at) {
  if (rows.empty()) throw Error(ErrorCode::ValidationError, "no rows to write");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_csv(out, rows, dim, record_at);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
}

void write_traces(std::ostream& os, const std::vector<SweepRow>& rows,
                  const std::vector<IterationTrace>& traces) {
  os << "run,method,n,z,a,r,pb_r,d_A,d_B,d_B_shadow\n";
  auto vec = [](const Vector& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += format_double(v[i]);
    }
    return s;
  };
  for (std::size_t i = 0; i < traces.size() && i < rows.size(); ++i) {
    for (const auto& step : traces[i].steps) {
      os << i << ',' << to_string(rows[i].method) << ',' << step.n << ',' << vec(step.z) << ','
         << vec(step.a) << ',' << vec(step.r) << ',' << vec(step.pb_r) << ','
         << format_double(step.d_a) << ',' << format_double(step.d_b) << ','
         << format_double(step.d_b_shadow) << '\n';
    }
  }
}

}  // namespace drfeas
