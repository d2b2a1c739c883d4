// tvarkit: batch front-end over the tvar headers.
//
//   tvarkit <task> -i problem.json [--format json|text] [--out FILE]
//                  [--verify] [--oracle] [--seed N]
//
// Exit codes: 0 ok, 1 domain error (kernel error code in the output), 2 parse
// or usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "tvar/json_io.hpp"
#include "tvar/tvar.hpp"

using namespace tvar;
using json_io::Json;
using json_io::ParseError;
using json_io::Problem;
using json_io::write;

namespace {

struct Flags {
  std::string task;
  std::string input;
  std::string format = "json";
  std::string out;
  bool verify = false;
  bool oracle = false;
  unsigned long long seed = 1;
};

std::vector<HomogeneousElement> require(const std::vector<HomogeneousElement>& gens, const char* key) {
  if (gens.empty()) throw ParseError(std::string("$.") + key, "this task needs at least one element");
  return gens;
}

Json oracle_block(const std::vector<CheckResult>& checks) {
  VerificationReport rep;
  rep.checks = checks;
  return write(rep);
}

void require_ok(const Json& report, const std::string& what, std::vector<std::string>& failures) {
  if (!report.at("ok").get<bool>()) failures.push_back(what);
}

// ---------------------------------------------------------------- tasks

Json run_normalize(const Problem& p, const Flags& f, std::vector<std::string>& failures) {
  const AlgebraPresentation pres(p.curve, require(p.generators, "generators"));
  const WeightCone wc = weight_cone(pres);
  const MultigradedAlgebra a = normalize(pres);
  Json out{{"weight_cone", {{"omega", write(wc.omega)}, {"sigma", write(wc.sigma)}}},
           {"divisor", write(a.divisor())},
           {"renormalizing_generators", write(renormalizing_generators(a))},
           {"warnings", fraction_field_warnings(pres)}};
  if (p.rank == 1) {
    try {
      const DpdPresentation d = dpd_presentation(pres);
      Json dpd{{"hyperbolic", d.hyperbolic}};
      if (d.hyperbolic) {
        dpd["d_plus"] = write(d.d_plus);
        dpd["d_minus"] = write(d.d_minus);
      } else {
        dpd["d"] = write(d.d);
      }
      out["dpd"] = dpd;
    } catch (const Error& e) {
      out["dpd"] = {{"unavailable", std::string(to_string(e.code())) + ": " + e.what()}};
    }
  }
  if (f.verify) {
    out["verification"] = write(verify_normalization(pres, a, p.options.generation_cap));
    require_ok(out["verification"], "normalization verification", failures);
  }
  if (f.oracle) {
    // Every generator is in the result, and multiplying a generator into a
    // basis element of a graded piece stays inside the result.
    std::vector<CheckResult> checks;
    CheckResult member{"generators-in-normalization", true, ""};
    for (const auto& g : pres.generators()) {
      if (!contains_element(a, g)) member = {member.name, false, "missing " + g.function.str() + " at " + to_string(g.weight)};
    }
    checks.push_back(member);
    CheckResult closed{"multiplicative-closure", true, ""};
    const Cone dual = a.divisor().sigma().dual();
    const ZVec lo(p.rank, -3), hi(p.rank, 3);
    for_each_box_point(Box{lo, hi}, [&](const ZVec& m) {
      if (!closed.passed || !dual.contains(m)) return;
      for (const auto& b : graded_piece(a, m).basis) {
        for (const auto& g : pres.generators()) {
          if (!contains_element(a, {b * g.function, add(m, g.weight)})) {
            closed = {closed.name, false, "product leaves the algebra at " + to_string(add(m, g.weight))};
          }
        }
      }
    });
    checks.push_back(closed);
    out["oracle"] = oracle_block(checks);
    require_ok(out["oracle"], "normalization oracle", failures);
  }
  return out;
}

Json write_rees(const ReesData& r) {
  return {{"newton", write(r.newton)}, {"rees_cone", write(r.rees_cone)}, {"rees_divisor", write(r.rees_divisor)}};
}

Json run_closure(const Problem& p, const Flags& f, std::vector<std::string>& failures) {
  const MultigradedAlgebra a(p.divisor());
  const HomogeneousIdeal ideal(a, require(p.ideal_generators, "ideal_generators"));
  const ReesData r = ideal_closure(ideal);
  Json out = write_rees(r);
  const std::vector<HomogeneousElement> gens = closure_generators(r);
  out["closure_generators"] = write(gens);
  if (f.verify) {
    out["verification"] = write(verify_correspondence(r, a));
    require_ok(out["verification"], "correspondence verification", failures);
  }
  if (f.oracle) {
    std::vector<CheckResult> checks;
    CheckResult contains{"ideal-in-closure", true, ""};
    for (const auto& g : ideal.generators()) {
      if (!closure_graded_piece(r, g.weight, 1).contains(g.function)) {
        contains = {contains.name, false, "generator at " + to_string(g.weight) + " is not in the closure"};
      }
    }
    checks.push_back(contains);
    CheckResult again{"closure-is-closed", true, ""};
    const ReesData r2 = ideal_closure(HomogeneousIdeal(a, gens));
    if (r2.newton != r.newton || r2.rees_divisor != r.rees_divisor) {
      again = {again.name, false, "closing the closure generators changes the data"};
    }
    if (again.passed && p.curve == CurveKind::AffineLine && r.newton.recession().pointed()) {
      const PowerComparison c = power_closure_equal(HomogeneousIdeal(a, gens), 1);
      if (!c.equal) again = {again.name, false, "closure generators span a smaller ideal at " + to_string(c.witness->weight)};
    }
    checks.push_back(again);
    out["oracle"] = oracle_block(checks);
    require_ok(out["oracle"], "closure oracle", failures);
  }
  return out;
}

Json run_rees_cone(const Problem& p, const Flags& f, std::vector<std::string>& failures) {
  if (!p.sigma) throw ParseError("$.sigma", "rees-cone needs the tail cone 'sigma'");
  std::vector<QVec> pts;
  for (const auto& g : require(p.ideal_generators, "ideal_generators")) pts.push_back(to_q(g.weight));
  const Polyhedron newton = Polyhedron::from_generators(p.rank, pts, p.sigma->dual());
  const Cone cone = rees_weight_cone(newton);
  Json out{{"newton", write(newton)}, {"rees_cone", write(cone)}};
  if (newton.recession().pointed() && newton.is_integral()) {
    Json slices = Json::array();
    for (long e = 1; e <= 3; ++e) {
      slices.push_back({{"e", e}, {"module_generators", json_io::write_list(module_generators(dilate(newton, e)))}});
    }
    out["slices"] = slices;
  }
  if (f.verify || f.oracle) {
    CheckResult c{"slices", true, ""};
    for (long e = 0; e <= 3 && c.passed; ++e) {
      if (auto bad = detail::slice_mismatch(cone, newton, e)) {
        c = {c.name, false, "slice " + std::to_string(e) + " differs at " + to_string(*bad)};
      }
    }
    out[f.verify ? "verification" : "oracle"] = oracle_block({c});
    if (!c.passed) failures.push_back("slice check");
  }
  return out;
}

Json write_power(const PowerComparison& c) {
  Json out{{"e", c.e}, {"equal", c.equal}, {"tuples", c.tuples}};
  if (c.witness) {
    out["witness"] = {{"point", write(c.witness->point)},
                      {"weight", write(c.witness->weight)},
                      {"closure_order", c.witness->closure_order},
                      {"power_order", c.witness->power_order ? Json(*c.witness->power_order) : Json("zero piece")}};
  }
  return out;
}

Json run_normality(const Problem& p, const Flags& f, std::vector<std::string>& failures) {
  const MultigradedAlgebra a(p.divisor());
  const HomogeneousIdeal ideal(a, require(p.ideal_generators, "ideal_generators"));
  const NormalityCertificate cert = normality_certificate(ideal);
  Json checks = Json::array();
  for (const auto& c : cert.checks) {
    Json j{{"point", write(c.p_tilde.point)},
           {"generic", c.generic},
           {"p_tilde", write(c.p_tilde.polyhedron)},
           {"normal", c.result.normal}};
    if (c.result.witness) j["witness"] = {{"weight", write(c.result.witness->first)}, {"height", c.result.witness->second}};
    checks.push_back(j);
  }
  Json out{{"certificate", {{"status", to_string(cert.status)}, {"checks", checks}}}};

  const long top = p.options.power_e.value_or(static_cast<long>(p.rank));
  Json powers = Json::array();
  std::vector<PowerComparison> comps;
  for (long e = 1; e <= top; ++e) {
    comps.push_back(power_closure_equal(ideal, e));
    powers.push_back(write_power(comps.back()));
  }
  out["powers"] = powers;
  try {
    out["rrv"] = rrv_check(ideal);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::WrongAmbient) throw;
    out["rrv"] = "not applicable: " + std::string(e.what());
  }
  if (f.verify) {
    out["verification"] = write(verify_correspondence(cert.closure, a));
    require_ok(out["verification"], "correspondence verification", failures);
  }
  if (f.oracle) {
    // Witnesses re-derived from explicit products; a Normal certificate must
    // agree with the power comparisons.
    std::vector<CheckResult> oc;
    for (const auto& c : comps) {
      CheckResult r{"power-" + std::to_string(c.e), true, ""};
      if (c.witness) {
        const auto piece = power_piece_generator(ideal, c.e, c.witness->weight);
        const long closure =
            closure_graded_piece(cert.closure, c.witness->weight, c.e).generator.order_at(c.witness->point);
        // A zero piece has infinite order.
        const long none = std::numeric_limits<long>::max();
        const long power = piece ? piece->order_at(c.witness->point) : none;
        if (closure != c.witness->closure_order || power != c.witness->power_order.value_or(none) || power <= closure) {
          r = {r.name, false, "witness does not reproduce from explicit products"};
        }
      }
      if (cert.status == NormalityStatus::Normal && !c.equal) {
        r = {r.name, false, "normal certificate but I^" + std::to_string(c.e) + " is not closed"};
      }
      oc.push_back(r);
    }
    out["oracle"] = oracle_block(oc);
    require_ok(out["oracle"], "normality oracle", failures);
  }
  return out;
}

Json run_sections(const Problem& p, const Flags& f, std::vector<std::string>& failures) {
  if (!p.options.weight) throw ParseError("$.options.weight", "sections needs a weight");
  const PolyhedralDivisor d = p.divisor();
  const ZVec& m = *p.options.weight;
  const QDivisor dm = evaluate(d, m);
  const QDivisor fl = floor_divisor(dm);
  const SectionSpace s = global_sections(fl);
  Json basis = Json::array();
  for (const auto& b : s.basis) basis.push_back(write(b));
  Json out{{"weight", write(m)},
           {"evaluation", write(dm)},
           {"floor", write(fl)},
           {"floor_degree", write(degree(fl))},
           {"dimension", p.curve == CurveKind::ProjectiveLine ? Json(s.basis.size()) : Json("inf")},
           {"basis", basis}};
  if (f.oracle) {
    CheckResult c{"sections", true, ""};
    for (const auto& b : s.basis) {
      if (!detail::is_section_of(b, fl)) c = {c.name, false, b.str() + " is not a section"};
    }
    if (p.curve == CurveKind::ProjectiveLine) {
      const Rational deg = degree(fl);
      const std::size_t expect = deg < 0 ? 0 : static_cast<std::size_t>(to_integer(deg.get_num())) + 1;
      if (s.basis.size() != expect) c = {c.name, false, "dimension differs from deg + 1"};
    }
    out["oracle"] = oracle_block({c});
    require_ok(out["oracle"], "sections oracle", failures);
  }
  return out;
}

Json run_check_proper(const Problem& p, const Flags& f, std::vector<std::string>& failures) {
  const PolyhedralDivisor d = p.divisor();
  const ProperCertificate c = is_proper(d);
  Json degs = Json::array();
  for (const auto& q : c.test_degrees) degs.push_back(write(q));
  Json out{{"proper", c.proper},
           {"test_weights", json_io::write_list(c.test_weights)},
           {"test_degrees", degs},
           {"interior_weight", write(c.interior_weight)},
           {"interior_degree", write(c.interior_degree)},
           {"note", c.note}};
  if (c.failing_weight) out["failing_weight"] = write(*c.failing_weight);
  if (f.oracle && d.kind() == CurveKind::ProjectiveLine) {
    // deg D(m) >= 0 on a box of the dual cone whenever D is proper.
    CheckResult r{"degrees", true, ""};
    const Cone dual = d.sigma().dual();
    for_each_box_point(Box{ZVec(p.rank, -4), ZVec(p.rank, 4)}, [&](const ZVec& m) {
      if (c.proper && dual.contains(m) && degree(evaluate(d, m)) < 0) {
        r = {r.name, false, "negative degree at " + to_string(m)};
      }
    });
    out["oracle"] = oracle_block({r});
    require_ok(out["oracle"], "properness oracle", failures);
  }
  return out;
}

// ---------------------------------------------------------------- oracle suites

long pick(std::mt19937_64& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

Cone random_pointed_cone(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    std::vector<ZVec> rays;
    for (long k = pick(rng, 1, static_cast<long>(n) + 1); k > 0; --k) {
      ZVec r(n);
      for (auto& x : r) x = pick(rng, -1, 3);
      rays.push_back(r);
    }
    const Cone c = Cone::from_generators(n, rays);
    if (c.pointed() && !c.is_zero_cone()) return c;
  }
}

Json run_oracle(const Problem& p, const Flags& f, std::vector<std::string>& failures) {
  std::mt19937_64 rng(f.seed);
  const long cases = p.options.cases.value_or(50);
  const std::size_t n = p.rank;
  std::map<std::string, std::pair<long, long>> tally;  // suite -> (cases, failures)
  auto record = [&](const std::string& suite, bool ok) {
    auto& t = tally[suite];
    ++t.first;
    if (!ok) ++t.second;
  };
  for (long t = 0; t < cases; ++t) {
    const Cone c = random_pointed_cone(rng, n);
    record("dual-involution", c.dual().dual() == c);
    record("double-description-roundtrip", Cone::from_inequalities(n, c.facets(), c.equations()) == c);

    const HilbertBasis hb = hilbert_basis(c);
    bool hb_ok = true;
    // Every lattice point of a small box in the cone is a sum of basis elements.
    for_each_box_point(Box{ZVec(n, -3), ZVec(n, 3)}, [&](const ZVec& x) {
      if (!hb_ok || !c.contains(x) || is_zero(x)) return;
      std::vector<ZVec> stack{x};
      bool reached = false;
      std::set<ZVec> seen;
      while (!stack.empty() && !reached) {
        ZVec y = stack.back();
        stack.pop_back();
        if (is_zero(y)) reached = true;
        if (!seen.insert(y).second) continue;
        for (const auto& h : hb.elements) {
          const ZVec r = sub(y, h);
          if (c.contains(r)) stack.push_back(r);
        }
      }
      hb_ok = reached;
    });
    record("hilbert-basis-decomposition", hb_ok);

    std::vector<QVec> verts;
    for (long k = pick(rng, 1, 3); k > 0; --k) {
      QVec v(n);
      for (auto& x : v) x = rat(pick(rng, -4, 4), pick(rng, 1, 3));
      verts.push_back(v);
    }
    const Polyhedron poly = Polyhedron::from_generators(n, verts, c);
    bool sub_ok = true;
    const Cone dual = c.dual();
    for (int s = 0; s < 5; ++s) {
      ZVec a(n), b(n);
      for (auto& x : a) x = pick(rng, -3, 3);
      for (auto& x : b) x = pick(rng, -3, 3);
      if (!dual.contains(a) || !dual.contains(b)) continue;
      if (support_function(poly, add(a, b)) < support_function(poly, a) + support_function(poly, b)) sub_ok = false;
    }
    record("support-function-superadditivity", sub_ok);
    record("module-generators-window", module_generators_in_window(poly) == module_generators(poly) ||
                                           !dual.pointed());
  }
  Json suites = Json::object();
  for (const auto& [k, v] : tally) {
    suites[k] = {{"cases", v.first}, {"failures", v.second}};
    if (v.second) failures.push_back("oracle suite " + k);
  }
  return {{"seed", f.seed}, {"rank", n}, {"suites", suites}};
}

// ---------------------------------------------------------------- output

void render_text(const Json& j, const std::string& indent, std::ostream& os) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& x : v) {
      if (x.is_object()) return false;
    }
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        os << indent << k << ": " << scalar(v) << "\n";
      } else if (flat(v)) {
        os << indent << k << ": " << v.dump() << "\n";
      } else {
        os << indent << k << ":\n";
        render_text(v, indent + "  ", os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive() || flat(v)) {
        os << indent << "- " << (v.is_primitive() ? scalar(v) : v.dump()) << "\n";
      } else {
        os << indent << "-\n";
        render_text(v, indent + "  ", os);
      }
    }
  } else {
    os << indent << scalar(j) << "\n";
  }
}

int emit(const Json& result, const Flags& f) {
  std::ostringstream os;
  if (f.format == "text") {
    render_text(result, "", os);
  } else {
    os << result.dump(2) << "\n";
  }
  if (f.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) {
      std::cerr << "tvarkit: cannot write " << f.out << "\n";
      return 2;
    }
    file << os.str();
  }
  return 0;
}

Json error_result(const std::string& task, const std::string& code, const std::string& message) {
  return {{"task", task}, {"status", "error"}, {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  CLI::App app{"Normalization, integral closure and normality for complexity-one multigraded algebras"};
  app.add_option("task", f.task, "normalize | closure | rees-cone | normality | sections | check-proper | oracle")
      ->required()
      ->check(CLI::IsMember(std::vector<std::string>(json_io::task_names().begin(), json_io::task_names().end())));
  app.add_option("-i,--input", f.input, "problem file (JSON)")->required();
  app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", f.out, "write the result here instead of stdout");
  app.add_flag("--verify", f.verify, "run the verification suite after the task");
  app.add_flag("--oracle", f.oracle, "run brute-force cross-checks after the task");
  app.add_option("--seed", f.seed, "seed of the randomized oracle suites");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Json result;
  int code = 0;
  try {
    std::ifstream in(f.input, std::ios::binary);
    if (!in) throw ParseError("", "cannot read " + f.input);
    std::stringstream buf;
    buf << in.rdbuf();
    const Problem p = json_io::parse_problem(buf.str());
    if (p.task && *p.task != f.task) {
      throw ParseError("$.task", "file is for task '" + *p.task + "', invoked as '" + f.task + "'");
    }
    std::vector<std::string> failures;
    Json payload;
    if (f.task == "normalize") payload = run_normalize(p, f, failures);
    if (f.task == "closure") payload = run_closure(p, f, failures);
    if (f.task == "rees-cone") payload = run_rees_cone(p, f, failures);
    if (f.task == "normality") payload = run_normality(p, f, failures);
    if (f.task == "sections") payload = run_sections(p, f, failures);
    if (f.task == "check-proper") payload = run_check_proper(p, f, failures);
    if (f.task == "oracle") payload = run_oracle(p, f, failures);
    if (failures.empty()) {
      result = {{"task", f.task}, {"version", p.version}, {"status", "ok"}, {"payload", payload}};
    } else {
      std::string msg;
      for (const auto& s : failures) msg += (msg.empty() ? "" : "; ") + s + " failed";
      result = error_result(f.task, to_string(ErrorCode::VerificationFailed), msg);
      result["version"] = p.version;
      result["payload"] = payload;
      code = 1;
    }
  } catch (const ParseError& e) {
    result = error_result(f.task, "ParseError", e.what());
    if (!e.path().empty()) result["error"]["field"] = e.path();
    code = 2;
  } catch (const Error& e) {
    result = error_result(f.task, to_string(e.code()), e.what());
    code = 1;
  } catch (const std::exception& e) {
    result = error_result(f.task, "Internal", e.what());
    code = 1;
  }
  const int wrote = emit(result, f);
  return wrote ? wrote : code;
}
