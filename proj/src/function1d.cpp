#include "drfeas/function1d.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "drfeas/error.hpp"

namespace drfeas {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_args(std::string_view body, std::string_view original) {
  std::vector<double> out;
  while (true) {
    const auto comma = body.find(',');
    const auto token = trim(body.substr(0, comma));
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw Error(ErrorCode::ParseError, "bad numeric argument in '" + std::string(original) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ConvexFunction1D::ConvexFunction1D(Kind kind) : kind_(std::move(kind)) {
  std::visit(Overloaded{
                 [&](const Quadratic& q) {
                   minimizer_ = q.q2 > 0.0 ? -q.q1 / (2.0 * q.q2) : 0.0;
                 },
                 [&](const AbsShift&) { minimizer_ = 0.0; },
                 [&](const std::shared_ptr<const Custom>& c) { minimizer_ = c->minimizer; },
             },
             kind_);
  inf_value_ = eval(minimizer_);
}

ConvexFunction1D ConvexFunction1D::quadratic(double q2, double q1, double q0) {
  if (!std::isfinite(q2) || !std::isfinite(q1) || !std::isfinite(q0)) {
    throw Error(ErrorCode::InvalidSet, "quadratic coefficients must be finite");
  }
  if (q2 < 0.0) throw Error(ErrorCode::InvalidSet, "quadratic needs q2 >= 0 to be convex");
  if (q2 == 0.0 && q1 != 0.0) {
    throw Error(ErrorCode::InvalidSet, "affine function without minimizer");
  }
  return ConvexFunction1D(Quadratic{q2, q1, q0});
}

ConvexFunction1D ConvexFunction1D::absshift(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidSet, "absshift needs finite alpha > 0 and finite beta");
  }
  return ConvexFunction1D(AbsShift{alpha, beta});
}

ConvexFunction1D ConvexFunction1D::custom(Custom spec) {
  if (!spec.eval || !spec.subgrad) {
    throw Error(ErrorCode::InvalidSet, "custom function needs eval and subgrad callbacks");
  }
  if (!spec.left_derivative) spec.left_derivative = spec.subgrad;
  if (!spec.right_derivative) spec.right_derivative = spec.subgrad;
  if (spec.name.empty()) spec.name = "custom";
  return ConvexFunction1D(std::make_shared<const Custom>(std::move(spec)));
}

ConvexFunction1D ConvexFunction1D::parse(std::string_view text) {
  const auto original = text;
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw Error(ErrorCode::ParseError, "expected name(args) in '" + std::string(original) + "'");
  }
  const auto name = trim(text.substr(0, open));
  const auto args = parse_args(text.substr(open + 1, text.size() - open - 2), original);
  if (name == "quadratic") {
    if (args.size() != 3) throw Error(ErrorCode::ParseError, "quadratic takes (q2,q1,q0)");
    return quadratic(args[0], args[1], args[2]);
  }
  if (name == "absshift") {
    if (args.size() != 2) throw Error(ErrorCode::ParseError, "absshift takes (alpha,beta)");
    return absshift(args[0], args[1]);
  }
  throw Error(ErrorCode::ParseError, "unknown function '" + std::string(name) + "'");
}

double ConvexFunction1D::eval(double x) const {
  return std::visit(Overloaded{
                        [x](const Quadratic& q) { return (q.q2 * x + q.q1) * x + q.q0; },
                        [x](const AbsShift& a) { return a.alpha * std::abs(x) + a.beta; },
                        [x](const std::shared_ptr<const Custom>& c) { return c->eval(x); },
                    },
                    kind_);
}

double ConvexFunction1D::subgrad(double x) const {
  return std::visit(Overloaded{
                        [x](const Quadratic& q) { return 2.0 * q.q2 * x + q.q1; },
                        [x](const AbsShift& a) {
                          if (x > 0.0) return a.alpha;
                          if (x < 0.0) return -a.alpha;
                          return 0.0;
                        },
                        [x](const std::shared_ptr<const Custom>& c) { return c->subgrad(x); },
                    },
                    kind_);
}

std::pair<double, double> ConvexFunction1D::subdifferential(double x) const {
  return std::visit(Overloaded{
                        [x](const Quadratic& q) {
                          const double d = 2.0 * q.q2 * x + q.q1;
                          return std::pair{d, d};
                        },
                        [x](const AbsShift& a) {
                          if (x > 0.0) return std::pair{a.alpha, a.alpha};
                          if (x < 0.0) return std::pair{-a.alpha, -a.alpha};
                          return std::pair{-a.alpha, a.alpha};
                        },
                        [x](const std::shared_ptr<const Custom>& c) {
                          return std::pair{c->left_derivative(x), c->right_derivative(x)};
                        },
                    },
                    kind_);
}

std::string ConvexFunction1D::describe() const {
  return std::visit(Overloaded{
                        [](const Quadratic& q) {
                          return "quadratic(" + format_number(q.q2) + "," + format_number(q.q1) +
                                 "," + format_number(q.q0) + ")";
                        },
                        [](const AbsShift& a) {
                          return "absshift(" + format_number(a.alpha) + "," +
                                 format_number(a.beta) + ")";
                        },
                        [](const std::shared_ptr<const Custom>& c) { return c->name; },
                    },
                    kind_);
}

bool ConvexFunction1D::operator==(const ConvexFunction1D& other) const {
  return kind_ == other.kind_;
}

}  // namespace drfeas
