#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "drfeas/function1d.hpp"

namespace drfeas {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Throws InvalidSet unless every coordinate is finite.
void require_finite(const Vector& x, const char* what);

/// Absolute floor used by all relative tolerances (scale 1 + |x|).
inline constexpr double kToleranceFloor = 1e-14;

/// {x : L x = a}. L must have full row rank; the Gram matrix L L^T is factored once.
class Affine {
 public:
  Affine(Matrix L, Vector a);

  const Matrix& L() const { return L_; }
  const Vector& a() const { return a_; }
  Eigen::Index dim() const { return L_.cols(); }
  bool is_linear() const { return a_.isZero(0.0); }

  /// Applies the Moore-Penrose inverse: returns L^+ r = L^T (L L^T)^{-1} r.
  Vector pinv_apply(const Vector& r) const;

  bool operator==(const Affine& o) const { return L_ == o.L_ && a_ == o.a_; }

 private:
  Matrix L_;
  Vector a_;
  std::shared_ptr<const Eigen::LLT<Matrix>> gram_;
};

/// {x : <normal, x> = offset}.
struct Hyperplane {
  Hyperplane(Vector normal, double offset);
  Vector normal;
  double offset;
  bool operator==(const Hyperplane&) const = default;
};

/// {x : <normal, x> <= offset}.
struct Halfspace {
  Halfspace(Vector normal, double offset);
  Vector normal;
  double offset;
  bool operator==(const Halfspace&) const = default;
};

struct Box {
  Box(Vector lo, Vector hi);
  Vector lo;
  Vector hi;
  bool operator==(const Box&) const = default;
};

/// The nonnegative orthant R^N_+.
struct Orthant {
  explicit Orthant(Eigen::Index dim);
  Eigen::Index dim;
  bool operator==(const Orthant&) const = default;
};

struct Ball {
  Ball(Vector center, double radius);
  Vector center;
  double radius;
  bool operator==(const Ball&) const = default;
};

/// Convex polygon in the plane, vertices listed counterclockwise.
struct Polygon2D {
  explicit Polygon2D(std::vector<Eigen::Vector2d> vertices);
  std::vector<Eigen::Vector2d> vertices;
  bool operator==(const Polygon2D&) const = default;
};

/// {(x, rho) : f(x) <= rho} in R^2.
struct Epigraph1D {
  explicit Epigraph1D(ConvexFunction1D f) : f(std::move(f)) {}
  ConvexFunction1D f;
  bool operator==(const Epigraph1D&) const = default;
};

/// {(x, ..., x) : x in R^N} inside R^{copies * base_dim}.
struct Diagonal {
  Diagonal(Eigen::Index copies, Eigen::Index base_dim);
  Eigen::Index copies;
  Eigen::Index base_dim;
  bool operator==(const Diagonal&) const = default;
};

class SetDescriptor;

/// Cartesian product C_1 x ... x C_M; blocks are laid out consecutively.
struct Product {
  explicit Product(std::vector<SetDescriptor> components);
  std::vector<SetDescriptor> components;
  std::vector<Eigen::Index> offsets;  // offsets[j] = start of block j; back() = total dim
  bool operator==(const Product& o) const;
};

/// Tagged union of every set class with a closed-form projector.
class SetDescriptor {
 public:
  using Variant = std::variant<Affine, Hyperplane, Halfspace, Box, Orthant, Ball, Polygon2D,
                               Epigraph1D, Diagonal, Product>;

  template <class T>
    requires std::is_constructible_v<Variant, T&&>
  SetDescriptor(T&& set) : set_(std::forward<T>(set)) {}  // NOLINT(google-explicit-constructor)

  const Variant& variant() const { return set_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&set_);
  }

  Eigen::Index dim() const;
  /// Human-readable class name: "affine", "orthant", ...
  std::string kind() const;
  /// True for sets that are linear subspaces (Affine with a = 0, Hyperplane through 0, Diagonal).
  bool is_linear_subspace() const;
  /// Affine-type sets (affine, hyperplane, diagonal) whose reflector is an involution.
  bool is_affine_subspace() const;

  bool operator==(const SetDescriptor& o) const { return set_ == o.set_; }

 private:
  Variant set_;
};

/// Closed-form projection onto {x : Lx = a}: x - L^+(Lx - a).
Vector project_affine(const Affine& set, const Vector& x);
Vector project_affine(const Matrix& L, const Vector& a, const Vector& x);

/// Componentwise max(x_i, 0).
Vector project_orthant(const Vector& x);

/// Nearest point of the set. Throws DimensionMismatch if x has the wrong size.
Vector project(const SetDescriptor& set, const Vector& x);

/// 2 project(set, x) - x.
Vector reflect(const SetDescriptor& set, const Vector& x);

/// ||x - project(set, x)||.
double distance(const SetDescriptor& set, const Vector& x);

/// Membership up to distance tol * (1 + ||x||), floored at kToleranceFloor.
bool contains(const SetDescriptor& set, const Vector& x, double tol = 1e-10);

}  // namespace drfeas
