#include "drfeas/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "drfeas/epigraph.hpp"
#include "drfeas/error.hpp"

namespace drfeas {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double cross(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  return u.x() * v.y() - u.y() * v.x();
}

Eigen::Vector2d project_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                                const Eigen::Vector2d& x) {
  const Eigen::Vector2d d = q - p;
  const double len2 = d.squaredNorm();
  if (len2 == 0.0) return p;
  const double t = std::clamp((x - p).dot(d) / len2, 0.0, 1.0);
  // Pin the endpoints exactly so vertex projections are bitwise vertices.
  if (t == 0.0) return p;
  if (t == 1.0) return q;
  return p + t * d;
}

Vector project_polygon(const Polygon2D& poly, const Vector& x) {
  const Eigen::Vector2d pt(x[0], x[1]);
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  bool inside = true;
  for (std::size_t i = 0; i < n && inside; ++i) {
    inside = cross(v[(i + 1) % n] - v[i], pt - v[i]) >= 0.0;
  }
  if (inside) return x;

  Eigen::Vector2d best = v[0];
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d cand = project_segment(v[i], v[(i + 1) % n], pt);
    const double d2 = (cand - pt).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = cand;
    }
  }
  return Vector(best);
}

void check_dim(const SetDescriptor& set, const Vector& x) {
  if (x.size() != set.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                set.kind() + " set has dimension " + std::to_string(set.dim()) +
                    " but point has " + std::to_string(x.size()));
  }
}

}  // namespace

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) throw Error(ErrorCode::InvalidSet, std::string(what) + " must be finite");
}

Affine::Affine(Matrix L, Vector a) : L_(std::move(L)), a_(std::move(a)) {
  if (L_.rows() == 0 || L_.cols() == 0) throw Error(ErrorCode::InvalidSet, "empty matrix L");
  if (a_.size() != L_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "affine right-hand side has wrong length");
  }
  if (!L_.allFinite()) throw Error(ErrorCode::InvalidSet, "L must be finite");
  require_finite(a_, "affine right-hand side");
  if (L_.rows() > L_.cols()) {
    throw Error(ErrorCode::RankDeficient, "L has more rows than columns");
  }
  const double scale = L_.squaredNorm();
  auto llt = std::make_shared<Eigen::LLT<Matrix>>(L_ * L_.transpose());
  bool ok = scale > 0.0 && llt->info() == Eigen::Success;
  if (ok) {
    // Pivots of LL^T are the squared diagonal entries of its Cholesky factor.
    const Vector pivots = llt->matrixLLT().diagonal().array().square();
    ok = pivots.minCoeff() >= 1e-12 * scale;
  }
  if (!ok) throw Error(ErrorCode::RankDeficient, "L L^T is numerically singular");
  gram_ = std::move(llt);
}

Vector Affine::pinv_apply(const Vector& r) const { return L_.transpose() * gram_->solve(r); }

Hyperplane::Hyperplane(Vector n, double off) : normal(std::move(n)), offset(off) {
  require_finite(normal, "hyperplane normal");
  if (!std::isfinite(offset)) throw Error(ErrorCode::InvalidSet, "hyperplane offset not finite");
  if (normal.size() == 0 || normal.squaredNorm() == 0.0) {
    throw Error(ErrorCode::InvalidSet, "hyperplane normal must be nonzero");
  }
}

Halfspace::Halfspace(Vector n, double off) : normal(std::move(n)), offset(off) {
  require_finite(normal, "halfspace normal");
  if (!std::isfinite(offset)) throw Error(ErrorCode::InvalidSet, "halfspace offset not finite");
  if (normal.size() == 0 || normal.squaredNorm() == 0.0) {
    throw Error(ErrorCode::InvalidSet, "halfspace normal must be nonzero");
  }
}

Box::Box(Vector l, Vector h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo.size() == 0 || lo.size() != hi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "box bounds must have equal nonzero length");
  }
  require_finite(lo, "box lower bound");
  require_finite(hi, "box upper bound");
  if ((lo.array() > hi.array()).any()) throw Error(ErrorCode::InvalidSet, "box needs lo <= hi");
}

Orthant::Orthant(Eigen::Index d) : dim(d) {
  if (dim < 1) throw Error(ErrorCode::InvalidSet, "orthant dimension must be positive");
}

Ball::Ball(Vector c, double r) : center(std::move(c)), radius(r) {
  if (center.size() == 0) throw Error(ErrorCode::InvalidSet, "ball center is empty");
  require_finite(center, "ball center");
  if (!std::isfinite(radius) || !(radius > 0.0)) {
    throw Error(ErrorCode::InvalidSet, "ball radius must be positive");
  }
}

Polygon2D::Polygon2D(std::vector<Eigen::Vector2d> verts) : vertices(std::move(verts)) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error(ErrorCode::InvalidSet, "polygon needs at least 3 vertices");
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!vertices[i].allFinite()) throw Error(ErrorCode::InvalidSet, "polygon vertex not finite");
    const auto& p = vertices[i];
    const auto& q = vertices[(i + 1) % n];
    const auto& r = vertices[(i + 2) % n];
    area2 += cross(p, q);
    if (cross(q - p, r - q) < 0.0) {
      throw Error(ErrorCode::InvalidSet, "polygon must be convex and counterclockwise");
    }
  }
  if (!(area2 > 0.0)) throw Error(ErrorCode::InvalidSet, "polygon has no interior");
}

Diagonal::Diagonal(Eigen::Index m, Eigen::Index n) : copies(m), base_dim(n) {
  if (copies < 1 || base_dim < 1) {
    throw Error(ErrorCode::InvalidSet, "diagonal needs positive copies and base_dim");
  }
}

Product::Product(std::vector<SetDescriptor> comps) : components(std::move(comps)) {
  if (components.empty()) throw Error(ErrorCode::InvalidSet, "product of zero sets");
  offsets.reserve(components.size() + 1);
  offsets.push_back(0);
  for (const auto& c : components) offsets.push_back(offsets.back() + c.dim());
}

bool Product::operator==(const Product& o) const { return components == o.components; }

Eigen::Index SetDescriptor::dim() const {
  return std::visit(Overloaded{
                        [](const Affine& s) { return s.dim(); },
                        [](const Hyperplane& s) { return s.normal.size(); },
                        [](const Halfspace& s) { return s.normal.size(); },
                        [](const Box& s) { return s.lo.size(); },
                        [](const Orthant& s) { return s.dim; },
                        [](const Ball& s) { return s.center.size(); },
                        [](const Polygon2D&) { return Eigen::Index{2}; },
                        [](const Epigraph1D&) { return Eigen::Index{2}; },
                        [](const Diagonal& s) { return s.copies * s.base_dim; },
                        [](const Product& s) { return s.offsets.back(); },
                    },
                    set_);
}

std::string SetDescriptor::kind() const {
  return std::visit(Overloaded{
                        [](const Affine&) { return "affine"; },
                        [](const Hyperplane&) { return "hyperplane"; },
                        [](const Halfspace&) { return "halfspace"; },
                        [](const Box&) { return "box"; },
                        [](const Orthant&) { return "orthant"; },
                        [](const Ball&) { return "ball"; },
                        [](const Polygon2D&) { return "polygon"; },
                        [](const Epigraph1D&) { return "epigraph"; },
                        [](const Diagonal&) { return "diagonal"; },
                        [](const Product&) { return "product"; },
                    },
                    set_);
}

bool SetDescriptor::is_linear_subspace() const {
  if (const auto* s = get_if<Affine>()) return s->is_linear();
  if (const auto* s = get_if<Hyperplane>()) return s->offset == 0.0;
  return get_if<Diagonal>() != nullptr;
}

bool SetDescriptor::is_affine_subspace() const {
  return get_if<Affine>() || get_if<Hyperplane>() || get_if<Diagonal>();
}

Vector project_affine(const Affine& set, const Vector& x) {
  if (x.size() != set.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point does not match affine set dimension");
  }
  return x - set.pinv_apply(set.L() * x - set.a());
}

Vector project_affine(const Matrix& L, const Vector& a, const Vector& x) {
  return project_affine(Affine(L, a), x);
}

Vector project_orthant(const Vector& x) { return x.cwiseMax(0.0); }

Vector project(const SetDescriptor& set, const Vector& x) {
  check_dim(set, x);
  return std::visit(
      Overloaded{
          [&](const Affine& s) -> Vector { return project_affine(s, x); },
          [&](const Hyperplane& s) -> Vector {
            return x - ((s.normal.dot(x) - s.offset) / s.normal.squaredNorm()) * s.normal;
          },
          [&](const Halfspace& s) -> Vector {
            const double excess = s.normal.dot(x) - s.offset;
            if (excess <= 0.0) return x;
            return x - (excess / s.normal.squaredNorm()) * s.normal;
          },
          [&](const Box& s) -> Vector { return x.cwiseMax(s.lo).cwiseMin(s.hi); },
          [&](const Orthant&) -> Vector { return project_orthant(x); },
          [&](const Ball& s) -> Vector {
            const Vector d = x - s.center;
            const double norm = d.norm();
            if (norm <= s.radius) return x;
            return s.center + (s.radius / norm) * d;
          },
          [&](const Polygon2D& s) -> Vector { return project_polygon(s, x); },
          [&](const Epigraph1D& s) -> Vector {
            const EpiPoint p = project_epigraph(s.f, EpiPoint{x[0], x[1]});
            return Vector{{p.x, p.rho}};
          },
          [&](const Diagonal& s) -> Vector {
            const auto blocks = x.reshaped(s.base_dim, s.copies);
            const Vector mean = blocks.rowwise().mean();
            return mean.replicate(s.copies, 1);
          },
          [&](const Product& s) -> Vector {
            Vector out(x.size());
            for (std::size_t j = 0; j < s.components.size(); ++j) {
              const auto start = s.offsets[j];
              const auto len = s.offsets[j + 1] - start;
              out.segment(start, len) = project(s.components[j], x.segment(start, len));
            }
            return out;
          },
      },
      set.variant());
}

Vector reflect(const SetDescriptor& set, const Vector& x) { return 2.0 * project(set, x) - x; }

double distance(const SetDescriptor& set, const Vector& x) { return (x - project(set, x)).norm(); }

bool contains(const SetDescriptor& set, const Vector& x, double tol) {
  return distance(set, x) <= std::max(tol * (1.0 + x.norm()), kToleranceFloor);
}

}  // namespace drfeas
