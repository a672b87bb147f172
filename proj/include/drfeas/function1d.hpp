#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace drfeas {

/// Convex, finite-valued function of one real variable with a known minimizer.
///
/// Used as the generator of two-dimensional epigraph sets. Besides evaluation it
/// exposes a subgradient selection and the one-sided derivatives, which bound the
/// subdifferential at kinks.
class ConvexFunction1D {
 public:
  /// q2 x^2 + q1 x + q0 with q2 >= 0 (q2 == 0 requires q1 == 0 so a minimizer exists).
  struct Quadratic {
    double q2 = 0.0;
    double q1 = 0.0;
    double q0 = 0.0;
    bool operator==(const Quadratic&) const = default;
  };
  /// alpha |x| + beta with alpha > 0.
  struct AbsShift {
    double alpha = 1.0;
    double beta = 0.0;
    bool operator==(const AbsShift&) const = default;
  };
  /// User-supplied callbacks. left/right derivatives default to the selection.
  struct Custom {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> subgrad;
    std::function<double(double)> left_derivative;
    std::function<double(double)> right_derivative;
    double minimizer = 0.0;
  };

  static ConvexFunction1D quadratic(double q2, double q1, double q0);
  static ConvexFunction1D absshift(double alpha, double beta);
  static ConvexFunction1D custom(Custom spec);

  /// Parses "quadratic(q2,q1,q0)" or "absshift(alpha,beta)".
  static ConvexFunction1D parse(std::string_view text);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  /// A selection from the subdifferential. At a kink that is the minimizer this is 0;
  /// at any other kink it is the one-sided derivative facing the minimizer.
  double subgrad(double x) const;
  /// [left derivative, right derivative], i.e. the subdifferential interval.
  std::pair<double, double> subdifferential(double x) const;

  double minimizer() const { return minimizer_; }
  double inf_value() const { return inf_value_; }

  bool is_quadratic() const { return std::holds_alternative<Quadratic>(kind_); }
  bool is_absshift() const { return std::holds_alternative<AbsShift>(kind_); }
  const Quadratic* as_quadratic() const { return std::get_if<Quadratic>(&kind_); }
  const AbsShift* as_absshift() const { return std::get_if<AbsShift>(&kind_); }

  /// Canonical textual form; round-trips through parse() for builtins.
  std::string describe() const;

  /// Builtins compare by parameters; custom functions compare by identity.
  bool operator==(const ConvexFunction1D& other) const;

 private:
  using Kind = std::variant<Quadratic, AbsShift, std::shared_ptr<const Custom>>;
  explicit ConvexFunction1D(Kind kind);

  Kind kind_;
  double minimizer_ = 0.0;
  double inf_value_ = 0.0;
};

}  // namespace drfeas
