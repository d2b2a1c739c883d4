#pragma once

// JSON wire format. Rationals are "p/q" strings, weights, exponents and ray
// coordinates are integer arrays, curve points are rational strings or "inf".
// Floating-point numbers are rejected anywhere in a document. Objects are
// written with sorted keys, so output is byte-stable.

#include <nlohmann/json.hpp>

#include <climits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tvar/curve.hpp"
#include "tvar/poly_divisor.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/report.hpp"

namespace tvar::json_io {

using Json = nlohmann::json;

/// Malformed or invalid input; `path` locates the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// ---------------------------------------------------------------- reading

inline void reject_floats(const Json& j, const std::string& path) {
  if (j.is_number_float()) {
    throw ParseError(path, "floating-point number " + j.dump() + " is not accepted; write rationals as \"p/q\"");
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) reject_floats(v, path + "." + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) reject_floats(j[i], path + "[" + std::to_string(i) + "]");
  }
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, "missing field '" + key + "'");
  return *it;
}

inline void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ParseError(path, "unknown field '" + k + "'");
  }
}

inline Integer read_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer, got " + j.dump());
  if (j.is_number_unsigned() && j.get<unsigned long long>() > static_cast<unsigned long long>(LLONG_MAX)) {
    throw ParseError(path, "integer out of range");
  }
  return j.get<Integer>();
}

inline Rational read_rational(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a rational string \"p/q\", got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

inline void check_size(const Json& j, std::optional<std::size_t> size, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  if (size && j.size() != *size) {
    throw ParseError(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  }
}

inline ZVec read_zvec(const Json& j, std::optional<std::size_t> size, const std::string& path) {
  check_size(j, size, path);
  ZVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_integer(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline QVec read_qvec(const Json& j, std::optional<std::size_t> size, const std::string& path) {
  check_size(j, size, path);
  QVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_rational(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline CurvePoint read_point(const Json& j, CurveKind kind, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a point string (rational or \"inf\")");
  const std::string s = j.get<std::string>();
  if (s == "inf") {
    if (kind != CurveKind::ProjectiveLine) throw ParseError(path, "\"inf\" is only a point of the projective line");
    return CurvePoint::infinity();
  }
  return CurvePoint::finite(read_rational(j, path));
}

inline CurveKind read_curve(const Json& j, const std::string& path) {
  if (j == "affine-line") return CurveKind::AffineLine;
  if (j == "projective-line") return CurveKind::ProjectiveLine;
  throw ParseError(path, "curve must be \"affine-line\" or \"projective-line\"");
}

inline Cone read_cone(const Json& j, std::size_t rank, const std::string& path) {
  only_keys(j, {"rays", "lineality"}, path);
  std::vector<ZVec> rays, lin;
  if (j.contains("rays")) {
    check_size(j["rays"], std::nullopt, path + ".rays");
    for (std::size_t i = 0; i < j["rays"].size(); ++i) {
      rays.push_back(read_zvec(j["rays"][i], rank, path + ".rays[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("lineality")) {
    check_size(j["lineality"], std::nullopt, path + ".lineality");
    for (std::size_t i = 0; i < j["lineality"].size(); ++i) {
      lin.push_back(read_zvec(j["lineality"][i], rank, path + ".lineality[" + std::to_string(i) + "]"));
    }
  }
  std::vector<QVec> qr, ql;
  for (const auto& r : rays) qr.push_back(to_q(r));
  for (const auto& l : lin) ql.push_back(to_q(l));
  return Cone::from_generators(rank, qr, ql);
}

/// {"vertices": [[p/q...]...], "rays": [[int...]...], "lineality": [...]}.
/// Without "rays" and "lineality" the recession cone is `tail`. Written
/// polyhedra also carry "inequalities" and "equations", which are ignored.
inline Polyhedron read_polyhedron(const Json& j, std::size_t rank, const std::optional<Cone>& tail,
                                  const std::string& path) {
  only_keys(j, {"vertices", "rays", "lineality", "inequalities", "equations"}, path);
  const Json& vj = field(j, "vertices", path);
  check_size(vj, std::nullopt, path + ".vertices");
  if (vj.empty()) throw ParseError(path + ".vertices", "a polyhedron needs at least one vertex");
  std::vector<QVec> verts;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    verts.push_back(read_qvec(vj[i], rank, path + ".vertices[" + std::to_string(i) + "]"));
  }
  Cone rec;
  if (j.contains("rays") || j.contains("lineality")) {
    Json cj = Json::object();
    if (j.contains("rays")) cj["rays"] = j["rays"];
    if (j.contains("lineality")) cj["lineality"] = j["lineality"];
    rec = read_cone(cj, rank, path);
  } else if (tail) {
    rec = *tail;
  } else {
    rec = Cone::zero(rank);
  }
  return Polyhedron::from_generators(rank, verts, rec);
}

/// {"unit": "p/q", "factors": [["root", exponent], ...]}; the unit defaults to 1.
inline RationalFunction read_function(const Json& j, const std::string& path) {
  Rational unit = 1;
  if (j.contains("unit")) unit = read_rational(j["unit"], path + ".unit");
  if (unit == 0) throw ParseError(path + ".unit", "the unit must be nonzero");
  std::map<Rational, long> factors;
  if (j.contains("factors")) {
    const Json& fj = j["factors"];
    check_size(fj, std::nullopt, path + ".factors");
    for (std::size_t i = 0; i < fj.size(); ++i) {
      const std::string p = path + ".factors[" + std::to_string(i) + "]";
      check_size(fj[i], 2, p);
      const Rational root = read_rational(fj[i][0], p + "[0]");
      factors[root] += static_cast<long>(read_integer(fj[i][1], p + "[1]"));
    }
  }
  return RationalFunction::from_factors(unit, factors);
}

inline HomogeneousElement read_element(const Json& j, std::size_t rank, const std::string& path) {
  only_keys(j, {"unit", "factors", "weight", "text"}, path);
  return {read_function(j, path), read_zvec(field(j, "weight", path), rank, path + ".weight")};
}

struct Options {
  std::optional<long> power_e;
  std::optional<long> dim_bound;
  std::optional<long> window_retries;
  std::optional<ZVec> weight;
  std::optional<long> generation_cap;
  std::optional<long> cases;
};

struct Problem {
  std::string version;
  std::size_t rank = 0;
  CurveKind curve = CurveKind::AffineLine;
  std::optional<Cone> sigma;
  std::vector<std::pair<CurvePoint, Polyhedron>> coefficients;
  bool has_divisor = false;
  std::optional<std::string> task;
  std::vector<HomogeneousElement> generators;
  std::vector<HomogeneousElement> ideal_generators;
  Options options;

  /// The polyhedral divisor; sigma is required.
  PolyhedralDivisor divisor() const {
    if (!sigma) throw ParseError("sigma", "this task needs the tail cone 'sigma' of the divisor");
    PolyhedralDivisor d(curve, *sigma);
    for (const auto& [z, delta] : coefficients) d.set(z, delta);
    return d;
  }
};

inline const std::set<std::string>& task_names() {
  static const std::set<std::string> names{"normalize", "closure",      "rees-cone", "normality",
                                           "sections",  "check-proper", "oracle"};
  return names;
}

inline Problem read_problem(const Json& j) {
  reject_floats(j, "$");
  only_keys(j, {"version", "rank", "curve", "sigma", "divisor", "task", "generators", "ideal_generators", "options"},
            "$");
  Problem p;
  const Json& v = field(j, "version", "$");
  if (!v.is_string()) throw ParseError("$.version", "expected a string");
  p.version = v.get<std::string>();
  const Integer rank = read_integer(field(j, "rank", "$"), "$.rank");
  if (rank < 1 || rank > 8) throw ParseError("$.rank", "rank must be between 1 and 8");
  p.rank = static_cast<std::size_t>(rank);
  p.curve = read_curve(field(j, "curve", "$"), "$.curve");
  if (j.contains("task")) {
    if (!j["task"].is_string() || !task_names().count(j["task"].get<std::string>())) {
      throw ParseError("$.task", "unknown task " + j["task"].dump());
    }
    p.task = j["task"].get<std::string>();
  }
  if (j.contains("sigma")) p.sigma = read_cone(j["sigma"], p.rank, "$.sigma");
  if (j.contains("divisor")) {
    p.has_divisor = true;
    const Json& dj = j["divisor"];
    check_size(dj, std::nullopt, "$.divisor");
    for (std::size_t i = 0; i < dj.size(); ++i) {
      const std::string path = "$.divisor[" + std::to_string(i) + "]";
      only_keys(dj[i], {"point", "polyhedron"}, path);
      const CurvePoint z = read_point(field(dj[i], "point", path), p.curve, path + ".point");
      for (const auto& [w, d] : p.coefficients) {
        if (w == z) throw ParseError(path + ".point", "point " + z.str() + " appears twice");
      }
      p.coefficients.emplace_back(z, read_polyhedron(field(dj[i], "polyhedron", path), p.rank, p.sigma,
                                                     path + ".polyhedron"));
    }
  }
  for (const char* key : {"generators", "ideal_generators"}) {
    if (!j.contains(key)) continue;
    const std::string path = std::string("$.") + key;
    check_size(j[key], std::nullopt, path);
    auto& out = std::string(key) == "generators" ? p.generators : p.ideal_generators;
    for (std::size_t i = 0; i < j[key].size(); ++i) {
      out.push_back(read_element(j[key][i], p.rank, path + "[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("options")) {
    const Json& o = j["options"];
    only_keys(o, {"power_e", "dim_bound", "window_retries", "weight", "generation_cap", "cases"}, "$.options");
    auto opt = [&](const char* k, std::optional<long>& dst, long lo) {
      if (!o.contains(k)) return;
      const Integer x = read_integer(o[k], std::string("$.options.") + k);
      if (x < lo) throw ParseError(std::string("$.options.") + k, "must be at least " + std::to_string(lo));
      dst = static_cast<long>(x);
    };
    opt("power_e", p.options.power_e, 1);
    opt("dim_bound", p.options.dim_bound, 1);
    opt("window_retries", p.options.window_retries, 0);
    opt("generation_cap", p.options.generation_cap, 1);
    opt("cases", p.options.cases, 1);
    if (o.contains("weight")) p.options.weight = read_zvec(o["weight"], p.rank, "$.options.weight");
  }
  return p;
}

/// Parses text; syntax errors are reported with nlohmann's line and column.
inline Problem parse_problem(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return read_problem(j);
}

// ---------------------------------------------------------------- writing

inline Json write(const Rational& q) { return to_string(q); }

inline Json write(const ZVec& v) { return Json(v); }

inline Json write(const QVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(write(x));
  return out;
}

inline Json write_list(const std::vector<ZVec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(write(v));
  return out;
}

inline Json write(const CurvePoint& z) { return z.str(); }

inline Json write(const Cone& c) {
  return {{"rays", write_list(c.rays())},
          {"lineality", write_list(c.lineality())},
          {"facets", write_list(c.facets())},
          {"equations", write_list(c.equations())}};
}

inline Json write(const Inequality& in) { return {{"normal", write(in.normal)}, {"bound", write(in.bound)}}; }

inline Json write(const Polyhedron& p) {
  Json verts = Json::array(), ineqs = Json::array(), eqs = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(write(v));
  for (const auto& in : p.inequalities()) ineqs.push_back(write(in));
  for (const auto& eq : p.equations()) eqs.push_back(write(eq));
  return {{"vertices", verts},
          {"rays", write_list(p.recession().rays())},
          {"lineality", write_list(p.recession().lineality())},
          {"inequalities", ineqs},
          {"equations", eqs}};
}

inline Json write(const RationalFunction& f) {
  Json factors = Json::array();
  for (const auto& [a, e] : f.factors()) factors.push_back({to_string(a), e});
  return {{"unit", write(f.unit())}, {"factors", factors}, {"text", f.str()}};
}

inline Json write(const HomogeneousElement& g) {
  Json out = write(g.function);
  out["weight"] = write(g.weight);
  return out;
}

inline Json write(const std::vector<HomogeneousElement>& gs) {
  Json out = Json::array();
  for (const auto& g : gs) out.push_back(write(g));
  return out;
}

inline Json write(const QDivisor& d) {
  Json out = Json::array();
  for (const auto& [z, c] : d.coefficients()) out.push_back({{"point", write(z)}, {"coefficient", write(c)}});
  return out;
}

inline Json write(const PolyhedralDivisor& d) {
  Json coeffs = Json::array();
  for (const auto& [z, delta] : d.coefficients()) coeffs.push_back({{"point", write(z)}, {"polyhedron", write(delta)}});
  return {{"curve", d.kind() == CurveKind::AffineLine ? "affine-line" : "projective-line"},
          {"sigma", write(d.sigma())},
          {"coefficients", coeffs}};
}

inline Json write(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"ok", rep.ok()}, {"checks", checks}};
}

}  // namespace tvar::json_io
