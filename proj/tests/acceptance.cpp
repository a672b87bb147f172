// Acceptance checks: prints one PASS/FAIL line per criterion and exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "drfeas/epigraph.hpp"
#include "drfeas/lifting.hpp"
#include "drfeas/methods.hpp"
#include "drfeas/problem.hpp"
#include "drfeas/sets.hpp"
#include "support.hpp"

using namespace drfeas;
using drfeas::testing::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

SetDescriptor line_a() { return Affine(Matrix{{1.0, 5.0}}, Vector{{6.0}}); }
SetDescriptor orthant_b() { return Orthant(2); }

const ConvexFunction1D kQuad = ConvexFunction1D::quadratic(1.0, 0.0, -1.0);
const ConvexFunction1D kAbs = ConvexFunction1D::absshift(1.0, -1.0);

// Criterion 1: DRA terminates exactly from every grid point.
Outcome finite_convergence_grid() {
  const auto A = line_a();
  const auto B = orthant_b();
  std::size_t runs = 0, max_iter = 0;
  double worst_a = 0, worst_b = 0;
  bool ok = true;
  for (const auto& z0 : GridSpec{-100, 100, 41}.points()) {
    const auto t = run(A, B, MethodKind::DRA, z0, StoppingRule::exact_fixed_point(1e-14, 100000));
    ++runs;
    max_iter = std::max(max_iter, t.iterations);
    worst_a = std::max(worst_a, distance(A, t.final_point));
    worst_b = std::max(worst_b, distance(B, t.final_point));
    ok = ok && t.exact && t.iterations < 100000;
  }
  ok = ok && worst_a <= 1e-9 && worst_b <= 1e-9;
  return {ok, std::to_string(runs) + " starts, max iterations " + std::to_string(max_iter) +
                  fmt(", max d_A %.3g", worst_a) + fmt(", max d_B %.3g", worst_b)};
}

// Criterion 2: one application of T reaches (3/13, 15/13), the next certifies it.
Outcome one_step_instance() {
  const auto t = run(line_a(), orthant_b(), MethodKind::DRA, Vector::Zero(2),
                     StoppingRule::exact_fixed_point());
  const Vector target{{3.0 / 13.0, 15.0 / 13.0}};
  if (t.steps.size() < 2) return {false, "trace too short"};
  const double err1 = (t.steps[1].z - target).norm();
  const double err = (t.final_point - target).norm();
  const bool ok = t.exact && t.iterations == 2 && err1 <= 1e-12 && err <= 1e-12;
  return {ok, "iterations " + std::to_string(t.iterations) + fmt(", |z_1 - target| %.3g", err1)};
}

// Criterion 3: Spingarn's iterates a_n - b_n coincide with DR's z_n.
Outcome spingarn_equivalence() {
  Rng rng(3003);
  const std::vector<std::string> kinds{"ball", "box", "halfspace", "orthant", "polygon", "epigraph",
                                       "product"};
  double worst = 0;
  StoppingRule hundred;
  hundred.max_iter = 100;
  for (int k = 0; k < 50; ++k) {
    const std::string kind = kinds[static_cast<std::size_t>(k) % kinds.size()];
    const Eigen::Index n =
        (kind == "polygon" || kind == "epigraph") ? 2 : (kind == "product" ? 0 : rng.integer(2, 5));
    const SetDescriptor B = drfeas::testing::random_set(rng, kind, n == 0 ? 2 : n);
    const SetDescriptor A = drfeas::testing::random_affine(rng, B.dim(), true);
    const Vector z0 = rng.vector(B.dim(), 10.0);
    const auto dr = run(A, B, MethodKind::DRA, z0, hundred);
    const Vector a0 = project(A, z0);
    const auto sp = run_spingarn(A, B, SpingarnState{a0, a0 - z0}, hundred);
    if (dr.steps.size() != 101 || sp.steps.size() != 101) return {false, "expected 100 iterations"};
    for (std::size_t i = 0; i < dr.steps.size(); ++i) {
      worst = std::max(worst, (dr.steps[i].z - sp.steps[i].z).norm() / (1.0 + z0.norm()));
    }
  }
  return {worst <= 1e-9, fmt("50 instances x 100 iterations, max relative gap %.3g", worst)};
}

// Criterion 4: run_epi ends exactly at (x, 0) with f(x) <= 0.
Outcome epigraph_convergence() {
  Rng rng(4004);
  std::size_t max_iter = 0;
  double worst = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const auto& f : {kQuad, kAbs}) {
    for (int k = 0; k < 100; ++k) {
      const auto r = run_epi(f, {rng.uniform(-10, 10), rng.uniform(-10, 10)});
      const Vector& z = r.trace.final_point;
      max_iter = std::max(max_iter, r.trace.iterations);
      worst = std::max(worst, f(z[0]));
      ok = ok && r.trace.exact && z[1] == 0.0 && f(z[0]) <= 1e-10;
    }
  }
  return {ok, "200 runs, max iterations " + std::to_string(max_iter) + fmt(", max f(x) %.3g", worst)};
}

// Criterion 5: the projection behind T z_eps, z_eps = (1+eps, -eps), solves the cubic.
Outcome epigraph_cubic() {
  bool ok = true;
  std::string detail;
  for (double eps : {0.1, 0.01}) {
    const EpiPoint reflected{1.0 + eps, eps};  // R_A z_eps
    const double p = project_epigraph(kQuad, reflected).x;
    const double res = std::abs(2 * p * p * p - (1 + 2 * eps) * p - (1 + eps));
    ok = ok && res <= 1e-10 && p > 1.0 && p <= 1.0 + eps;
    detail += fmt("eps=%g: ", eps) + fmt("p=%.17g ", p) + fmt("residual %.3g; ", res);
  }
  return {ok, detail};
}

// Criterion 6: both witness families defeat the residual condition.
Outcome luque_witnesses() {
  bool ok = true;
  std::string detail;
  for (auto family : {WitnessFamily::AbsShift, WitnessFamily::Quadratic}) {
    double previous = std::numeric_limits<double>::infinity();
    double worst_gap = 0;
    for (double eps : {0.1, 0.01, 0.001}) {
      const auto w = luque_witness(family, eps);
      ok = ok && w.fix_distance > 0 && w.step_residual < previous;
      previous = w.step_residual;
      if (family == WitnessFamily::AbsShift) {
        worst_gap = std::max(worst_gap, std::abs(w.step_residual - eps));
      }
    }
    if (family == WitnessFamily::AbsShift) {
      ok = ok && worst_gap <= 1e-12;
      detail += fmt("absshift |residual - eps| <= %.3g; ", worst_gap);
    } else {
      detail += fmt("quadratic residual at eps=0.001: %.6g", previous);
    }
  }
  return {ok, detail};
}

// Criterion 7: randomized property suites.
struct Suite {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

Suite idempotence(Rng& rng) {
  Suite s{"idempotence"};
  for (const auto& kind : drfeas::testing::all_kinds()) {
    for (int inst = 0; inst < 10; ++inst) {
      const auto C = drfeas::testing::random_set(rng, kind, 3);
      for (int k = 0; k < 100; ++k) {
        const Vector x = rng.vector(C.dim(), 20.0);
        const Vector p = project(C, x);
        ++s.cases;
        if ((project(C, p) - p).norm() > 1e-10 * (1 + p.norm())) ++s.failures;
      }
    }
  }
  return s;
}

Suite firm_nonexpansiveness(Rng& rng) {
  Suite s{"firm nonexpansiveness"};
  for (const auto& kind : drfeas::testing::all_kinds()) {
    for (int inst = 0; inst < 10; ++inst) {
      const auto C = drfeas::testing::random_set(rng, kind, 3);
      for (int k = 0; k < 100; ++k) {
        const Vector x = rng.vector(C.dim(), 20.0), y = rng.vector(C.dim(), 20.0);
        const Vector px = project(C, x), py = project(C, y);
        ++s.cases;
        if ((px - py).squaredNorm() > (x - y).dot(px - py) + 1e-10 * (1 + (x - y).squaredNorm())) {
          ++s.failures;
        }
      }
    }
  }
  return s;
}

Suite variational_inequality(Rng& rng) {
  Suite s{"variational inequality"};
  for (const auto& kind : drfeas::testing::all_kinds()) {
    for (int inst = 0; inst < 10; ++inst) {
      const auto C = drfeas::testing::random_set(rng, kind, 3);
      for (int k = 0; k < 100; ++k) {
        const Vector x = rng.vector(C.dim(), 20.0);
        const Vector p = project(C, x);
        const Vector c = project(C, rng.vector(C.dim(), 20.0));
        ++s.cases;
        if ((x - p).dot(c - p) > 1e-10) ++s.failures;
      }
    }
  }
  return s;
}

struct LinearInstance {
  SetDescriptor A;
  SetDescriptor B;
};

LinearInstance random_linear_instance(Rng& rng) {
  const Eigen::Index n = rng.integer(2, 4);
  const Affine A = drfeas::testing::random_affine(rng, n, true);
  const Vector p = project(A, rng.vector(n, 5.0));
  return {A, Ball(p + rng.vector(n, 0.5), rng.uniform(1.0, 3.0))};
}

Suite product_identity(Rng& rng) {
  Suite s{"monotonicity identity"};
  for (int k = 0; k < 1000; ++k) {
    const auto inst = random_linear_instance(rng);
    const Vector z0 = rng.vector(inst.A.dim(), 10.0);
    const auto t = run(inst.A, inst.B, MethodKind::DRA, z0, StoppingRule::exact_fixed_point(1e-14, 40));
    const auto& st = t.steps;
    ++s.cases;
    bool bad = false;
    for (std::size_t n = 0; n + 1 < st.size(); ++n) {
      const Vector a = project(inst.A, rng.vector(inst.A.dim(), 10.0));
      const double lhs = (st[n].z - st[n + 1].z).dot(st[n + 1].z - a);
      const double rhs = (st[n].r - st[n].pb_r).dot(st[n].pb_r - a);
      bad = bad || std::abs(lhs - rhs) > 1e-9;
      for (std::size_t m = 0; m + 1 < st.size(); ++m) {
        const Vector dn = st[n].z - st[n + 1].z, dm = st[m].z - st[m + 1].z;
        bad = bad || (st[n + 1].z - st[m + 1].z).dot(dn - dm) < -1e-9;
      }
    }
    if (bad) ++s.failures;
  }
  return s;
}

Suite shadow_recursions(Rng& rng) {
  Suite s{"shadow recursions"};
  for (int k = 0; k < 1000; ++k) {
    const auto inst = random_linear_instance(rng);
    const Vector z0 = rng.vector(inst.A.dim(), 10.0);
    const auto t = run(inst.A, inst.B, MethodKind::DRA, z0, StoppingRule::exact_fixed_point(1e-14, 40));
    const auto& st = t.steps;
    ++s.cases;
    bool bad = false;
    for (std::size_t n = 0; n + 1 < st.size(); ++n) {
      const double tol = 1e-12 * (1 + st[n].z.norm());
      bad = bad || (st[n + 1].a - project(inst.A, st[n].pb_r)).norm() > tol;
      bad = bad || ((st[n].a - st[n + 1].a) - project(inst.A, st[n].r - st[n].pb_r)).norm() > tol;
    }
    if (bad) ++s.failures;
  }
  return s;
}

Suite fejer_instance_one(Rng& rng) {
  Suite s{"Fejer monotonicity"};
  const auto A = line_a();
  const auto B = orthant_b();
  for (int k = 0; k < 1000; ++k) {
    const double t = rng.uniform(0, 1);
    const Vector p{{6.0 * t, 1.2 * (1.0 - t)}};  // a point of A and B
    const auto tr = run(A, B, MethodKind::DRA, rng.vector(2, 100.0), StoppingRule::exact_fixed_point());
    ++s.cases;
    bool bad = false;
    for (std::size_t n = 0; n + 1 < tr.steps.size(); ++n) {
      const double before = (tr.steps[n].z - p).norm();
      bad = bad || (tr.steps[n + 1].z - p).norm() > before + 1e-12 * (1 + before);
    }
    if (bad) ++s.failures;
  }
  return s;
}

Suite epigraph_step_agreement(Rng& rng) {
  Suite s{"epigraph step agreement"};
  const SetDescriptor A = Hyperplane(Vector{{0.0, 1.0}}, 0.0);
  for (const auto& f : {kQuad, kAbs}) {
    const SetDescriptor B = Epigraph1D(f);
    for (int k = 0; k < 1000; ++k) {
      const EpiPoint z{rng.uniform(-10, 10), rng.uniform(-10, 10)};
      const EpiPoint e = dr_step_epi(f, z).next;
      const Vector g = dra_step(A, B, Vector{{z.x, z.rho}}).z_next;
      ++s.cases;
      if (std::hypot(e.x - g[0], e.rho - g[1]) > 1e-10) ++s.failures;
    }
  }
  return s;
}

Outcome property_suites() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(7007);
  std::vector<Suite> suites;
  for (auto* suite : {idempotence, firm_nonexpansiveness, variational_inequality, product_identity,
                      shadow_recursions, fejer_instance_one, epigraph_step_agreement}) {
    suites.push_back(suite(rng));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = seconds < 120.0;
  std::string detail;
  for (const auto& s : suites) {
    ok = ok && s.cases >= 1000 && s.failures == 0;
    detail += s.name + " " + std::to_string(s.cases - s.failures) + "/" + std::to_string(s.cases) + "; ";
  }
  return {ok, detail + fmt("%.2f s", seconds)};
}

// Criterion 8: MAP and MRP only reach tolerance, never an exact fixed point.
Outcome map_mrp_feasibility() {
  const auto A = line_a();
  const auto B = orthant_b();
  bool ok = true;
  std::string detail;
  for (auto m : {MethodKind::MAP, MethodKind::MRP}) {
    std::size_t max_iter = 0, exact = 0, feasible = 0;
    for (const auto& z0 : GridSpec{-100, 100, 41}.points()) {
      const auto t = run(A, B, m, z0, StoppingRule::feasibility(1e-4, Monitor::Iterate, 100000));
      max_iter = std::max(max_iter, t.iterations);
      exact += t.exact ? 1 : 0;
      if (t.reason == Termination::Feasible && t.steps.back().d_b < 1e-4) ++feasible;
    }
    ok = ok && exact == 0 && feasible == 1681;
    detail += std::string(to_string(m)) + " feasible " + std::to_string(feasible) + "/1681, exact " +
              std::to_string(exact) + ", max iterations " + std::to_string(max_iter) + "; ";
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"finite convergence of DRA on the line/orthant grid", finite_convergence_grid},
      {"one-step instance from the origin", one_step_instance},
      {"Spingarn/DR equivalence", spingarn_equivalence},
      {"finite convergence on epigraphs", epigraph_convergence},
      {"epigraph cubic", epigraph_cubic},
      {"residual-condition witnesses", luque_witnesses},
      {"property suites", property_suites},
      {"MAP/MRP tolerance-only feasibility", map_mrp_feasibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) o.detail.pop_back();
    failed += o.pass ? 0 : 1;
    std::printf("[%s] criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
