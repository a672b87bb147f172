#pragma once

// Random instance generators shared by the property tests. Everything is seeded so a
// failing case reproduces.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "drfeas/sets.hpp"

namespace drfeas::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  Vector vector(Eigen::Index n, double scale = 10.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(-scale, scale);
    return v;
  }
  Vector gaussian(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }
  Matrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = normal();
    }
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

inline Affine random_affine(Rng& rng, Eigen::Index n, bool linear = false) {
  const Eigen::Index m = rng.integer(1, static_cast<int>(std::max<Eigen::Index>(1, n - 1)));
  Vector a = linear ? Vector::Zero(m) : rng.vector(m, 5.0);
  return Affine(rng.gaussian(m, n), a);
}

/// Convex polygon with `k` vertices on a circle, angles kept at least 0.3 rad apart.
inline Polygon2D random_polygon(Rng& rng, int k = 0) {
  if (k == 0) k = rng.integer(3, 8);
  std::vector<double> angles;
  const double step = 2.0 * std::numbers::pi / k;
  for (int i = 0; i < k; ++i) angles.push_back(step * i + rng.uniform(0.0, 0.6 * step));
  const double radius = rng.uniform(1.0, 10.0);
  const Eigen::Vector2d center(rng.uniform(-5, 5), rng.uniform(-5, 5));
  std::vector<Eigen::Vector2d> verts;
  for (double t : angles) verts.push_back(center + radius * Eigen::Vector2d(std::cos(t), std::sin(t)));
  return Polygon2D(std::move(verts));
}

inline ConvexFunction1D random_function(Rng& rng) {
  if (rng.integer(0, 1) == 0) {
    return ConvexFunction1D::quadratic(rng.uniform(0.1, 3.0), rng.uniform(-2, 2), rng.uniform(-3, 1));
  }
  return ConvexFunction1D::absshift(rng.uniform(0.2, 3.0), rng.uniform(-3, 1));
}

/// One descriptor of the given class name in dimension n (polygon/epigraph force n = 2).
inline SetDescriptor random_set(Rng& rng, const std::string& kind, Eigen::Index n) {
  if (kind == "affine") return random_affine(rng, n);
  if (kind == "hyperplane") return Hyperplane(rng.gaussian(n), rng.uniform(-5, 5));
  if (kind == "halfspace") return Halfspace(rng.gaussian(n), rng.uniform(-5, 5));
  if (kind == "box") {
    Vector lo = rng.vector(n, 5.0);
    Vector hi = lo + rng.vector(n, 5.0).cwiseAbs();
    return Box(lo, hi);
  }
  if (kind == "orthant") return Orthant(n);
  if (kind == "ball") return Ball(rng.vector(n, 5.0), rng.uniform(0.5, 5.0));
  if (kind == "polygon") return random_polygon(rng);
  if (kind == "epigraph") return Epigraph1D(random_function(rng));
  if (kind == "diagonal") {
    const Eigen::Index m = rng.integer(1, 4);
    return Diagonal(m, n);
  }
  if (kind == "product") {
    std::vector<SetDescriptor> parts;
    parts.push_back(random_set(rng, "ball", n));
    parts.push_back(random_set(rng, "box", 1));
    parts.push_back(random_set(rng, "polygon", 2));
    parts.push_back(random_set(rng, "halfspace", n));
    return Product(std::move(parts));
  }
  throw std::invalid_argument("unknown set kind " + kind);
}

inline const std::vector<std::string>& all_kinds() {
  static const std::vector<std::string> kinds{"affine", "hyperplane", "halfspace", "box",
                                              "orthant", "ball", "polygon", "epigraph",
                                              "diagonal", "product"};
  return kinds;
}

}  // namespace drfeas::testing
