#include "drfeas/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "drfeas/error.hpp"
#include "json.hpp"

namespace drfeas {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "field '" + path + "': " + msg);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) field_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "." + key, "missing");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) field_error(path, "must be finite");
  return v;
}

std::size_t as_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    field_error(path, "expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) field_error(path, "expected a string");
  return j.get<std::string>();
}

Vector as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = as_number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix as_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) field_error(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = as_vector(j[static_cast<std::size_t>(r)], path + "[" + std::to_string(r) + "]");
    if (r == 0) m.resize(rows, row.size());
    if (row.size() != m.cols()) field_error(path, "rows have different lengths");
    m.row(r) = row.transpose();
  }
  return m;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

SetDescriptor set_from_json(const json& j, const std::string& path) {
  const std::string type = as_string(require(j, "type", path), path + ".type");
  auto field = [&](const char* key) -> const json& { return require(j, key, path); };
  auto sub = [&](const char* key) { return path + "." + key; };
  try {
    if (type == "affine") {
      return Affine(as_matrix(field("L"), sub("L")), as_vector(field("a"), sub("a")));
    }
    if (type == "hyperplane") {
      return Hyperplane(as_vector(field("normal"), sub("normal")),
                        as_number(field("offset"), sub("offset")));
    }
    if (type == "halfspace") {
      return Halfspace(as_vector(field("normal"), sub("normal")),
                       as_number(field("offset"), sub("offset")));
    }
    if (type == "box") return Box(as_vector(field("lo"), sub("lo")), as_vector(field("hi"), sub("hi")));
    if (type == "orthant") {
      return Orthant(static_cast<Eigen::Index>(as_count(field("dim"), sub("dim"))));
    }
    if (type == "ball") {
      return Ball(as_vector(field("center"), sub("center")),
                  as_number(field("radius"), sub("radius")));
    }
    if (type == "polygon") {
      const auto& verts = field("vertices");
      if (!verts.is_array()) field_error(sub("vertices"), "expected an array of points");
      std::vector<Eigen::Vector2d> pts;
      for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto p = as_vector(verts[i], sub("vertices") + "[" + std::to_string(i) + "]");
        if (p.size() != 2) field_error(sub("vertices"), "polygon vertices are 2-D points");
        pts.emplace_back(p[0], p[1]);
      }
      return Polygon2D(std::move(pts));
    }
    if (type == "epigraph") {
      return Epigraph1D(ConvexFunction1D::parse(as_string(field("f"), sub("f"))));
    }
    if (type == "diagonal") {
      return Diagonal(static_cast<Eigen::Index>(as_count(field("copies"), sub("copies"))),
                      static_cast<Eigen::Index>(as_count(field("base_dim"), sub("base_dim"))));
    }
    if (type == "product") {
      const auto& comps = field("components");
      if (!comps.is_array()) field_error(sub("components"), "expected an array of sets");
      std::vector<SetDescriptor> parts;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        parts.push_back(set_from_json(comps[i], sub("components") + "[" + std::to_string(i) + "]"));
      }
      return Product(std::move(parts));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError || e.code() == ErrorCode::ValidationError) throw;
    throw Error(ErrorCode::ValidationError, path + ": " + e.what());
  }
  field_error(path + ".type", "unknown set type '" + type + "'");
}

json set_to_json(const SetDescriptor& set) {
  return std::visit(
      Overloaded{
          [](const Affine& s) {
            json rows = json::array();
            for (Eigen::Index r = 0; r < s.L().rows(); ++r) {
              rows.push_back(vector_json(s.L().row(r).transpose()));
            }
            return json{{"type", "affine"}, {"L", rows}, {"a", vector_json(s.a())}};
          },
          [](const Hyperplane& s) {
            return json{{"type", "hyperplane"}, {"normal", vector_json(s.normal)}, {"offset", s.offset}};
          },
          [](const Halfspace& s) {
            return json{{"type", "halfspace"}, {"normal", vector_json(s.normal)}, {"offset", s.offset}};
          },
          [](const Box& s) {
            return json{{"type", "box"}, {"lo", vector_json(s.lo)}, {"hi", vector_json(s.hi)}};
          },
          [](const Orthant& s) { return json{{"type", "orthant"}, {"dim", s.dim}}; },
          [](const Ball& s) {
            return json{{"type", "ball"}, {"center", vector_json(s.center)}, {"radius", s.radius}};
          },
          [](const Polygon2D& s) {
            json verts = json::array();
            for (const auto& v : s.vertices) verts.push_back({v.x(), v.y()});
            return json{{"type", "polygon"}, {"vertices", verts}};
          },
          [](const Epigraph1D& s) {
            if (!s.f.is_quadratic() && !s.f.is_absshift()) {
              throw Error(ErrorCode::ValidationError, "custom functions cannot be serialized");
            }
            return json{{"type", "epigraph"}, {"f", s.f.describe()}};
          },
          [](const Diagonal& s) {
            return json{{"type", "diagonal"}, {"copies", s.copies}, {"base_dim", s.base_dim}};
          },
          [](const Product& s) {
            json comps = json::array();
            for (const auto& c : s.components) comps.push_back(set_to_json(c));
            return json{{"type", "product"}, {"components", comps}};
          },
      },
      set.variant());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Monitor parse_monitor(const std::string& name, const std::string& path) {
  if (name == "iterate") return Monitor::Iterate;
  if (name == "shadow") return Monitor::Shadow;
  field_error(path, "monitor must be 'iterate' or 'shadow'");
}

ProblemSpec parse_problem_json(const json& doc);

}  // namespace

std::vector<Vector> GridSpec::points() const {
  std::vector<Vector> out;
  out.reserve(steps * steps);
  const double h = steps > 1 ? (hi - lo) / static_cast<double>(steps - 1) : 0.0;
  auto coord = [&](std::size_t i) { return i + 1 == steps && steps > 1 ? hi : lo + h * static_cast<double>(i); };
  for (std::size_t iy = 0; iy < steps; ++iy) {
    for (std::size_t ix = 0; ix < steps; ++ix) out.push_back(Vector{{coord(ix), coord(iy)}});
  }
  return out;
}

StoppingRule StoppingSpec::rule_for(MethodKind method) const {
  if (method == MethodKind::MAP || method == MethodKind::MRP) {
    return StoppingRule::feasibility(tol, monitor, max_iter);
  }
  return StoppingRule::exact_fixed_point(eta, max_iter);
}

bool ProblemSpec::operator==(const ProblemSpec& o) const {
  const bool same_start = std::visit(
      Overloaded{
          [&](const Vector& v) {
            const auto* w = std::get_if<Vector>(&o.start);
            return w && w->size() == v.size() && *w == v;
          },
          [&](const GridSpec& g) {
            const auto* h = std::get_if<GridSpec>(&o.start);
            return h && *h == g;
          },
      },
      start);
  return dim == o.dim && set_a == o.set_a && set_b == o.set_b && sets == o.sets &&
         lift == o.lift && methods == o.methods && same_start && stopping == o.stopping &&
         outputs == o.outputs;
}

void ProblemSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::ValidationError, msg); };
  if (dim < 1) fail("dim must be positive");
  if (methods.empty()) fail("at least one method is required");
  if (lift) {
    if (sets.empty()) fail("lifted problems need a non-empty 'sets' list");
    for (const auto& s : sets) {
      if (s.dim() != dim) fail("every lifted set must live in R^dim");
    }
  } else {
    if (!set_a || !set_b) fail("set_a and set_b are required unless 'lift' is true");
    if (set_a->dim() != dim || set_b->dim() != dim) fail("set dimensions must equal dim");
    for (auto m : methods) {
      if (m == MethodKind::SPINGARN && !set_a->is_affine_subspace()) {
        fail("SPINGARN needs set_a to be affine, hyperplane or diagonal");
      }
    }
  }
  if (const auto* g = std::get_if<GridSpec>(&start)) {
    if (dim != 2) fail("grid starts are only valid for dim = 2");
    if (g->steps < 1) fail("grid needs at least one step per axis");
    if (!(g->lo <= g->hi) || !std::isfinite(g->lo) || !std::isfinite(g->hi)) {
      fail("grid needs finite lo <= hi");
    }
  } else {
    const auto& p = std::get<Vector>(start);
    if (p.size() != dim) fail("start point must have length dim");
    if (!p.allFinite()) fail("start point must be finite");
  }
  if (!(stopping.eta > 0.0) || !(stopping.tol > 0.0) || stopping.max_iter < 1) {
    fail("stopping needs eta > 0, tol > 0 and max_iter >= 1");
  }
  if (!std::is_sorted(outputs.record_at.begin(), outputs.record_at.end()) ||
      std::adjacent_find(outputs.record_at.begin(), outputs.record_at.end()) !=
          outputs.record_at.end()) {
    fail("record_at must be strictly ascending");
  }
}

ProblemSpec parse_problem(std::string_view text) {
  try {
    return parse_problem_json(parse_json(text));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

namespace {

ProblemSpec parse_problem_json(const json& doc) {
  if (!doc.is_object()) field_error("$", "problem file must be an object");

  ProblemSpec spec;
  spec.dim = static_cast<Eigen::Index>(as_count(require(doc, "dim", "$"), "$.dim"));
  spec.lift = doc.value("lift", false);
  if (spec.lift) {
    const auto& sets = require(doc, "sets", "$");
    if (!sets.is_array()) field_error("$.sets", "expected an array of sets");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      spec.sets.push_back(set_from_json(sets[i], "$.sets[" + std::to_string(i) + "]"));
    }
  } else {
    spec.set_a = set_from_json(require(doc, "set_a", "$"), "$.set_a");
    spec.set_b = set_from_json(require(doc, "set_b", "$"), "$.set_b");
  }

  if (const auto it = doc.find("methods"); it != doc.end()) {
    if (!it->is_array()) field_error("$.methods", "expected an array of names");
    spec.methods.clear();
    for (std::size_t i = 0; i < it->size(); ++i) {
      spec.methods.push_back(parse_method(as_string((*it)[i], "$.methods[" + std::to_string(i) + "]")));
    }
  }

  const auto& start = require(doc, "start", "$");
  if (start.contains("point")) {
    spec.start = as_vector(start["point"], "$.start.point");
  } else if (start.contains("grid")) {
    const auto& g = start["grid"];
    spec.start = GridSpec{as_number(require(g, "lo", "$.start.grid"), "$.start.grid.lo"),
                          as_number(require(g, "hi", "$.start.grid"), "$.start.grid.hi"),
                          as_count(require(g, "steps", "$.start.grid"), "$.start.grid.steps")};
  } else {
    field_error("$.start", "expected 'point' or 'grid'");
  }

  if (const auto it = doc.find("stopping"); it != doc.end()) {
    const auto& s = *it;
    if (!s.is_object()) field_error("$.stopping", "expected an object");
    if (s.contains("eta")) spec.stopping.eta = as_number(s["eta"], "$.stopping.eta");
    if (s.contains("tol")) spec.stopping.tol = as_number(s["tol"], "$.stopping.tol");
    if (s.contains("max_iter")) spec.stopping.max_iter = as_count(s["max_iter"], "$.stopping.max_iter");
    if (s.contains("monitor")) {
      spec.stopping.monitor = parse_monitor(as_string(s["monitor"], "$.stopping.monitor"),
                                            "$.stopping.monitor");
    }
  }

  if (const auto it = doc.find("outputs"); it != doc.end()) {
    const auto& o = *it;
    if (!o.is_object()) field_error("$.outputs", "expected an object");
    if (o.contains("csv")) spec.outputs.csv_path = as_string(o["csv"], "$.outputs.csv");
    if (o.contains("trace")) spec.outputs.trace_path = as_string(o["trace"], "$.outputs.trace");
    if (o.contains("record_at")) {
      const auto& r = o["record_at"];
      if (!r.is_array()) field_error("$.outputs.record_at", "expected an array of integers");
      spec.outputs.record_at.clear();
      for (std::size_t i = 0; i < r.size(); ++i) {
        spec.outputs.record_at.push_back(
            as_count(r[i], "$.outputs.record_at[" + std::to_string(i) + "]"));
      }
    }
  }

  spec.validate();
  return spec;
}

}  // namespace

std::string serialize_problem(const ProblemSpec& spec) {
  json doc;
  doc["dim"] = spec.dim;
  if (spec.lift) {
    doc["lift"] = true;
    json sets = json::array();
    for (const auto& s : spec.sets) sets.push_back(set_to_json(s));
    doc["sets"] = sets;
  } else {
    if (spec.set_a) doc["set_a"] = set_to_json(*spec.set_a);
    if (spec.set_b) doc["set_b"] = set_to_json(*spec.set_b);
  }
  json methods = json::array();
  for (auto m : spec.methods) methods.push_back(std::string(to_string(m)));
  doc["methods"] = methods;
  if (const auto* g = std::get_if<GridSpec>(&spec.start)) {
    doc["start"] = {{"grid", {{"lo", g->lo}, {"hi", g->hi}, {"steps", g->steps}}}};
  } else {
    doc["start"] = {{"point", vector_json(std::get<Vector>(spec.start))}};
  }
  doc["stopping"] = {{"eta", spec.stopping.eta},
                     {"tol", spec.stopping.tol},
                     {"max_iter", spec.stopping.max_iter},
                     {"monitor", spec.stopping.monitor == Monitor::Shadow ? "shadow" : "iterate"}};
  json outputs = {{"record_at", spec.outputs.record_at}};
  if (!spec.outputs.csv_path.empty()) outputs["csv"] = spec.outputs.csv_path;
  if (!spec.outputs.trace_path.empty()) outputs["trace"] = spec.outputs.trace_path;
  doc["outputs"] = outputs;
  return doc.dump(2) + "\n";
}

std::string serialize_set(const SetDescriptor& set) { return set_to_json(set).dump(); }

SetDescriptor parse_set(std::string_view text) { return set_from_json(parse_json(text), "$"); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "failed reading '" + path + "'");
  return ss.str();
}

}  // namespace drfeas
