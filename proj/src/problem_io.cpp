#include "rcdual/problem_io.hpp"

#include <fstream>
#include <stdexcept>

namespace rcdual {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("problem parse: " + where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where + "." + key, "missing required field");
  return *it;
}

double number_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double dflt, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) return dflt;
  if (!it->is_number()) fail(where + "." + key, "expected a number");
  return it->get<double>();
}

std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

bool bool_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_boolean()) fail(where + "." + key, "expected true or false");
  return v.get<bool>();
}

Vec vec_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_array() || v.empty()) fail(where + "." + key, "expected a nonempty array of numbers");
  Vec out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      fail(where + "." + key + "[" + std::to_string(i) + "]", "expected a number");
    out[static_cast<int>(i)] = v[i].get<double>();
  }
  return out;
}

Mat mat_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = member(j, key, where);
  if (!v.is_array() || v.empty()) fail(where + "." + key, "expected a nonempty array of rows");
  const std::string here = where + "." + key;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_array() || v[i].empty())
      fail(here + "[" + std::to_string(i) + "]", "expected a nonempty row of numbers");
    if (i == 0)
      cols = v[i].size();
    else if (v[i].size() != cols)
      fail(here + "[" + std::to_string(i) + "]", "rows must all have the same length");
  }
  Mat out(static_cast<int>(v.size()), static_cast<int>(cols));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      if (!v[i][k].is_number())
        fail(here + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
             "expected a number");
      out(static_cast<int>(i), static_cast<int>(k)) = v[i][k].get<double>();
    }
  return out;
}

Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json mat_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_json(m.row(i)));
  return rows;
}

}  // namespace

ConvexFunction parse_function(const Json& j, int expected_dim, const std::string& where) {
  const std::string kind = string_field(j, "kind", where);
  ConvexFunction g = [&]() -> ConvexFunction {
    try {
      if (kind == "affine")
        return ConvexFunction::affine(vec_field(j, "a", where), number_field(j, "b", where));
      if (kind == "quadratic")
        return ConvexFunction::quadratic(mat_field(j, "Q", where), vec_field(j, "c", where),
                                         number_field(j, "r", where));
      if (kind == "sq_norm2")
        return ConvexFunction::sq_norm2(expected_dim, number_field(j, "s", where));
      if (kind == "norm") {
        const Json& pv = member(j, "p", where);
        int p = -1;
        if (pv.is_string() && pv.get<std::string>() == "inf")
          p = 0;
        else if (pv.is_number_integer())
          p = pv.get<int>();
        if (p != 0 && p != 1 && p != 2) fail(where + ".p", "expected 1, 2, or \"inf\"");
        return ConvexFunction::norm(expected_dim, p);
      }
      if (kind == "box_indicator")
        return ConvexFunction::box_indicator(vec_field(j, "lower", where),
                                             vec_field(j, "upper", where));
      if (kind == "gauge_affine") {
        const Json& gj = member(j, "gauge", where);
        const std::string gw = where + ".gauge";
        GaugeFunction gauge;
        gauge.lin = mat_field(gj, "lin", gw);
        gauge.anchor = vec_field(gj, "anchor", gw);
        const std::string shape = string_field(gj, "shape", gw);
        if (shape == "polytope") {
          gauge.shape = GaugeFunction::Shape::Polytope;
          gauge.rows = mat_field(gj, "rows", gw);
          gauge.offsets = vec_field(gj, "offsets", gw);
        } else if (shape == "ball") {
          gauge.shape = GaugeFunction::Shape::Ball;
          gauge.center = vec_field(gj, "center", gw);
          gauge.radius = number_field(gj, "radius", gw);
        } else {
          fail(gw + ".shape", "expected \"polytope\" or \"ball\"");
        }
        return ConvexFunction::gauge_affine(std::move(gauge), number_field(j, "shift", where));
      }
    } catch (const std::invalid_argument& e) {
      // Re-tag factory validation errors with the field path.
      const std::string msg = e.what();
      if (msg.rfind("problem parse:", 0) == 0) throw;
      fail(where, msg);
    }
    fail(where + ".kind", "unknown kind '" + kind + "'");
  }();

  const double scale = number_or(j, "scale", 1.0, where);
  const double offset = number_or(j, "offset", 0.0, where);
  try {
    if (scale != 1.0) g = g.scaled(scale);
  } catch (const std::invalid_argument& e) {
    fail(where + ".scale", e.what());
  }
  if (offset != 0.0) g = g.shifted(offset);
  if (expected_dim > 0 && g.dim() != expected_dim)
    fail(where, "function has dimension " + std::to_string(g.dim()) +
                    " but the problem has dimension " + std::to_string(expected_dim));
  return g;
}

ProblemFile parse_problem(const Json& j) {
  if (!j.is_object()) fail("root", "expected an object");
  ProblemFile pf;
  if (j.contains("name")) pf.name = string_field(j, "name", "root");

  const Json& nj = member(j, "n", "root");
  if (!nj.is_number_integer() || nj.get<int>() <= 0) fail("root.n", "expected a positive integer");
  pf.n = nj.get<int>();

  pf.f = parse_function(member(j, "objective", "root"), pf.n, "objective");

  if (j.contains("constraints")) {
    const Json& cs = j["constraints"];
    if (!cs.is_array()) fail("constraints", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string where = "constraints[" + std::to_string(i) + "]";
      pf.constraints.push_back(
          Constraint{parse_function(cs[i], pf.n, where), bool_field(cs[i], "strict", where)});
    }
  }

  const Json& bj = member(j, "box", "root");
  pf.box = Box{vec_field(bj, "lower", "box"), vec_field(bj, "upper", "box")};
  try {
    pf.box.validate();
  } catch (const std::invalid_argument& e) {
    fail("box", e.what());
  }
  if (pf.box.dim() != pf.n) fail("box", "dimension does not match n");

  if (j.contains("reduction")) {
    const Json& rj = j["reduction"];
    ReductionSpec spec;
    spec.T = mat_field(rj, "T", "reduction");
    const Json& dj = member(rj, "D", "reduction");
    const std::string shape = string_field(dj, "shape", "reduction.D");
    if (shape == "polytope") {
      spec.D.shape = ConvexBody::Shape::Polytope;
      spec.D.A = mat_field(dj, "A", "reduction.D");
      spec.D.b = vec_field(dj, "b", "reduction.D");
    } else if (shape == "ball") {
      spec.D.shape = ConvexBody::Shape::Ball;
      spec.D.center = vec_field(dj, "center", "reduction.D");
      spec.D.radius = number_field(dj, "radius", "reduction.D");
    } else {
      fail("reduction.D.shape", "expected \"polytope\" or \"ball\"");
    }
    try {
      spec.D.validate();
    } catch (const std::invalid_argument& e) {
      fail("reduction.D", e.what());
    }
    if (spec.T.cols() != pf.n) fail("reduction.T", "column count must equal n");
    if (spec.T.rows() != spec.D.dim())
      fail("reduction.T", "row count must match the body dimension");
    if (rj.contains("anchor")) {
      spec.anchor = vec_field(rj, "anchor", "reduction");
      if (spec.anchor->size() != pf.n) fail("reduction.anchor", "dimension does not match n");
    }
    pf.reduction = std::move(spec);
  }
  return pf;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open problem file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("problem parse: " + path + ": " + e.what());
  }
  try {
    return parse_problem(j);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(e.what()) + " (file " + path + ")");
  }
}

Program load_program(const std::string& path) { return load_problem_file(path).to_program(); }

Program ProblemFile::to_program() const {
  Program p;
  p.name = name;
  p.n = n;
  p.f = f;
  p.constraints = constraints;
  p.box = box;
  p.validate();
  return p;
}

nlohmann::ordered_json serialize(const ConvexFunction& g) {
  Json out;
  switch (g.kind()) {
    case ConvexFunction::Kind::Affine:
      out["kind"] = "affine";
      out["a"] = vec_json(g.affine_a());
      out["b"] = g.affine_b();
      break;
    case ConvexFunction::Kind::Quadratic:
      out["kind"] = "quadratic";
      out["Q"] = mat_json(g.quad_Q());
      out["c"] = vec_json(g.quad_c());
      out["r"] = g.quad_r();
      break;
    case ConvexFunction::Kind::SqNorm2:
      out["kind"] = "sq_norm2";
      out["s"] = g.sq_scale();
      break;
    case ConvexFunction::Kind::Norm:
      out["kind"] = "norm";
      if (g.norm_p() == 0)
        out["p"] = "inf";
      else
        out["p"] = g.norm_p();
      break;
    case ConvexFunction::Kind::BoxIndicator:
      out["kind"] = "box_indicator";
      out["lower"] = vec_json(g.box_lo());
      out["upper"] = vec_json(g.box_hi());
      break;
    case ConvexFunction::Kind::GaugeAffine: {
      out["kind"] = "gauge_affine";
      const GaugeFunction& gauge = g.gauge();
      Json gj;
      if (gauge.shape == GaugeFunction::Shape::Polytope) {
        gj["shape"] = "polytope";
        gj["rows"] = mat_json(gauge.rows);
        gj["offsets"] = vec_json(gauge.offsets);
      } else {
        gj["shape"] = "ball";
        gj["center"] = vec_json(gauge.center);
        gj["radius"] = gauge.radius;
      }
      gj["lin"] = mat_json(gauge.lin);
      gj["anchor"] = vec_json(gauge.anchor);
      out["gauge"] = std::move(gj);
      out["shift"] = g.gauge_shift();
      break;
    }
  }
  if (g.scale() != 1.0) out["scale"] = g.scale();
  if (g.offset() != 0.0) out["offset"] = g.offset();
  return out;
}

nlohmann::ordered_json serialize(const ConvexBody& body) {
  Json out;
  if (body.shape == ConvexBody::Shape::Polytope) {
    out["shape"] = "polytope";
    out["A"] = mat_json(body.A);
    out["b"] = vec_json(body.b);
  } else {
    out["shape"] = "ball";
    out["center"] = vec_json(body.center);
    out["radius"] = body.radius;
  }
  return out;
}

nlohmann::ordered_json serialize(const ReductionSpec& spec) {
  Json out;
  out["T"] = mat_json(spec.T);
  out["D"] = serialize(spec.D);
  if (spec.anchor) out["anchor"] = vec_json(*spec.anchor);
  return out;
}

nlohmann::ordered_json serialize(const Program& p) {
  Json out;
  out["name"] = p.name;
  out["n"] = p.n;
  out["objective"] = serialize(p.f);
  Json cs = Json::array();
  for (const Constraint& c : p.constraints) {
    Json cj = serialize(c.h);
    cj["strict"] = c.strict;
    cs.push_back(std::move(cj));
  }
  out["constraints"] = std::move(cs);
  out["box"] = Json{{"lower", vec_json(p.box.lo)}, {"upper", vec_json(p.box.hi)}};
  return out;
}

nlohmann::ordered_json serialize(const ProblemFile& pf) {
  Json out = serialize(Program{pf.name, pf.n, pf.f, pf.constraints, pf.box});
  if (pf.reduction) out["reduction"] = serialize(*pf.reduction);
  return out;
}

}  // namespace rcdual
