#include "drfeas/epigraph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "drfeas/error.hpp"

namespace drfeas {

namespace {

// Real roots of u^3 + p u + q = 0.
std::vector<double> depressed_cubic_roots(double p, double q) {
  std::vector<double> roots;
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  if (disc > 0.0) {
    // Single real root; the sign choice avoids cancellation.
    const double big = -std::copysign(std::cbrt(0.5 * std::abs(q) + std::sqrt(disc)), q);
    roots.push_back(big != 0.0 ? big - p / (3.0 * big) : 0.0);
  } else if (p == 0.0) {
    roots.push_back(0.0);
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
    }
  }
  for (auto& u : roots) {
    for (int it = 0; it < 3; ++it) {
      const double val = (u * u + p) * u + q;
      const double der = 3.0 * u * u + p;
      if (der == 0.0) break;
      const double next = u - val / der;
      if (!(std::abs((next * next + p) * next + q) < std::abs(val))) break;
      u = next;
    }
  }
  return roots;
}

EpiPoint project_quadratic(const ConvexFunction1D::Quadratic& q, const ConvexFunction1D& f,
                           EpiPoint z) {
  if (q.q2 == 0.0) return EpiPoint{z.x, q.q0};  // constant f: epigraph is a halfplane
  // With u = p - m (m the minimizer), stationarity reads
  //   2 q2^2 u^3 + (1 + 2 q2 (f_min - rho)) u - (x - m) = 0.
  const double m = f.minimizer();
  const double scale = 2.0 * q.q2 * q.q2;
  const double p = (1.0 + 2.0 * q.q2 * (f.inf_value() - z.rho)) / scale;
  const double rhs = -(z.x - m) / scale;
  EpiPoint best{m, f.inf_value()};
  double best_d2 = std::numeric_limits<double>::infinity();
  for (double u : depressed_cubic_roots(p, rhs)) {
    const double px = m + u;
    const double fp = f(px);
    const double d2 = (px - z.x) * (px - z.x) + (fp - z.rho) * (fp - z.rho);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = EpiPoint{px, fp};
    }
  }
  return best;
}

EpiPoint project_absshift(const ConvexFunction1D::AbsShift& a, EpiPoint z) {
  // Cone with apex (0, beta): project onto the ray on z's side or onto the apex.
  const double side = z.x >= 0.0 ? 1.0 : -1.0;
  const double t = (std::abs(z.x) + a.alpha * (z.rho - a.beta)) / (1.0 + a.alpha * a.alpha);
  if (t <= 0.0) return EpiPoint{0.0, a.beta};
  return EpiPoint{side * t, a.alpha * t + a.beta};
}

bool in_epigraph(const ConvexFunction1D& f, EpiPoint z) { return f(z.x) <= z.rho; }

}  // namespace

std::string_view to_string(Region region) {
  switch (region) {
    case Region::InBOnly: return "IN_B_ONLY";
    case Region::InBPrimeOnly: return "IN_BPRIME_ONLY";
    case Region::InBoth: return "IN_BOTH";
    case Region::InNeither: return "IN_NEITHER";
  }
  return "?";
}

EpiPoint project_epigraph_bisection(const ConvexFunction1D& f, EpiPoint z) {
  if (in_epigraph(f, z)) return z;
  const double u = f.minimizer();
  if (z.x == u) return EpiPoint{u, f(u)};

  auto residual = [&](double p) { return p - z.x + std::max(f(p) - z.rho, 0.0) * f.subgrad(p); };
  double lo = std::min(z.x, u);
  double hi = std::max(z.x, u);
  bool collapsed = false;
  for (int k = 0; k < 200; ++k) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      collapsed = true;
      break;
    }
    const double g = residual(mid);
    if (!std::isfinite(g)) break;
    if (g == 0.0) {
      lo = hi = mid;
      collapsed = true;
      break;
    }
    (g < 0.0 ? lo : hi) = mid;
  }
  if (!collapsed && !(hi - lo <= 1e-12)) {
    throw Error(ErrorCode::NoConvergence, "epigraph projection bracket did not collapse");
  }
  const double p = lo + 0.5 * (hi - lo);
  return EpiPoint{p, f(p)};
}

EpiPoint project_epigraph(const ConvexFunction1D& f, EpiPoint z) {
  if (!std::isfinite(z.x) || !std::isfinite(z.rho)) {
    throw Error(ErrorCode::InvalidSet, "epigraph point must be finite");
  }
  if (in_epigraph(f, z)) return z;
  if (const auto* q = f.as_quadratic()) return project_quadratic(*q, f, z);
  if (const auto* a = f.as_absshift()) return project_absshift(*a, z);
  return project_epigraph_bisection(f, z);
}

Region classify_region(const ConvexFunction1D& f, EpiPoint z) {
  const double fx = f(z.x);
  const bool in_b = fx <= z.rho;
  const bool in_bprime = z.rho <= -fx;
  if (in_b && in_bprime) return Region::InBoth;
  if (in_b) return Region::InBOnly;
  if (in_bprime) return Region::InBPrimeOnly;
  const double tol = 1e-14 * std::max(1.0, std::abs(fx) + std::abs(z.rho));
  if (fx - z.rho <= tol && z.rho + fx <= tol) return Region::InBoth;
  return Region::InNeither;
}

EpiStep dr_step_epi(const ConvexFunction1D& f, EpiPoint z) {
  const Region region = classify_region(f, z);
  if (region == Region::InBPrimeOnly || region == Region::InBoth) {
    return EpiStep{EpiPoint{z.x, 0.0}, region};
  }
  const EpiPoint p = project_epigraph(f, EpiPoint{z.x, -z.rho});
  return EpiStep{EpiPoint{p.x, z.rho + p.rho}, region};
}

EpiTrace run_epi(const ConvexFunction1D& f, EpiPoint z0, double eta, std::size_t max_iter) {
  if (!(f.inf_value() < 0.0)) {
    throw Error(ErrorCode::PreconditionViolated, "finite convergence needs inf f < 0");
  }
  if (!(eta > 0.0) || max_iter < 1) {
    throw Error(ErrorCode::ValidationError, "run_epi needs eta > 0 and max_iter >= 1");
  }
  if (!std::isfinite(z0.x) || !std::isfinite(z0.rho)) {
    throw Error(ErrorCode::InvalidSet, "start point must be finite");
  }

  EpiTrace out;
  auto& trace = out.trace;
  trace.method = MethodKind::DRA;

  auto record = [&](std::size_t n, EpiPoint z) {
    IterationStep s;
    s.n = n;
    s.z = Vector{{z.x, z.rho}};
    s.a = Vector{{z.x, 0.0}};
    s.r = Vector{{z.x, -z.rho}};
    const EpiPoint pbr = project_epigraph(f, EpiPoint{z.x, -z.rho});
    s.pb_r = Vector{{pbr.x, pbr.rho}};
    s.d_a = std::abs(z.rho);
    const EpiPoint pz = project_epigraph(f, z);
    s.d_b = std::hypot(z.x - pz.x, z.rho - pz.rho);
    const EpiPoint pa = project_epigraph(f, EpiPoint{z.x, 0.0});
    s.d_b_shadow = std::hypot(z.x - pa.x, pa.rho);
    trace.steps.push_back(std::move(s));
    out.regions.push_back(classify_region(f, z));
  };

  EpiPoint z = z0;
  record(0, z);
  std::size_t n = 0;
  trace.reason = Termination::MaxIterExceeded;
  while (n < max_iter) {
    const EpiPoint next = dr_step_epi(f, z).next;
    const double step = std::hypot(next.x - z.x, next.rho - z.rho);
    const double bound = std::max(eta * (1.0 + std::hypot(z.x, z.rho)), kToleranceFloor);
    ++n;
    record(n, next);
    trace.last_step_norm = step;
    z = next;
    if (step <= bound) {
      trace.reason = Termination::ExactFixedPoint;
      trace.exact = true;
      break;
    }
  }
  trace.iterations = n;
  trace.final_point = Vector{{z.x, z.rho}};
  return out;
}

WitnessFamily parse_witness_family(std::string_view name) {
  if (name == "absshift" || name == "ABS_SHIFT") return WitnessFamily::AbsShift;
  if (name == "quadratic" || name == "QUADRATIC") return WitnessFamily::Quadratic;
  throw Error(ErrorCode::ValidationError, "unknown witness family '" + std::string(name) + "'");
}

std::string_view to_string(WitnessFamily family) {
  return family == WitnessFamily::AbsShift ? "absshift" : "quadratic";
}

WitnessResult luque_witness(WitnessFamily family, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::ValidationError, "witness eps must be positive");
  }
  const bool abs_family = family == WitnessFamily::AbsShift;
  const auto f = abs_family ? ConvexFunction1D::absshift(1.0, -1.0)
                            : ConvexFunction1D::quadratic(1.0, 0.0, -1.0);
  WitnessResult w;
  w.z = EpiPoint{1.0 + eps, abs_family ? eps : -eps};
  w.tz = dr_step_epi(f, w.z).next;
  w.step_residual = std::hypot(w.z.x - w.tz.x, w.z.rho - w.tz.rho);
  const double dx = std::max(std::abs(w.tz.x) - 1.0, 0.0);
  w.fix_distance = std::hypot(dx, w.tz.rho);
  return w;
}

}  // namespace drfeas
