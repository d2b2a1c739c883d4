#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "tvar/cone.hpp"
#include "tvar/curve.hpp"
#include "tvar/errors.hpp"
#include "tvar/lattice_points.hpp"
#include "tvar/normalization.hpp"
#include "tvar/poly_divisor.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/rational.hpp"
#include "tvar/report.hpp"

namespace tvar {

/// Ideal of A[C, D] generated by homogeneous elements of A.
class HomogeneousIdeal {
 public:
  HomogeneousIdeal(MultigradedAlgebra ambient, std::vector<HomogeneousElement> generators)
      : ambient_(std::move(ambient)), generators_(std::move(generators)) {
    if (generators_.empty()) throw Error(ErrorCode::EmptyInput, "ideal without generators");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (!contains_element(ambient_, generators_[i])) {
        throw Error(ErrorCode::GeneratorNotInAlgebra, "generator " + std::to_string(i) + " is not in the algebra");
      }
    }
  }

  const MultigradedAlgebra& ambient() const { return ambient_; }
  const std::vector<HomogeneousElement>& generators() const { return generators_; }
  std::size_t rank() const { return ambient_.divisor().rank(); }

 private:
  MultigradedAlgebra ambient_;
  std::vector<HomogeneousElement> generators_;
};

/// Integral closure data of an ideal: the Newton polyhedron P, the weight cone
/// of the normalized Rees algebra in M x Z and its polyhedral divisor.
struct ReesData {
  Polyhedron newton;
  PolyhedralDivisor rees_divisor;
  Cone rees_cone;
};

/// conv(m_1, ..., m_r) + dual(sigma).
inline Polyhedron newton_polyhedron(const HomogeneousIdeal& ideal) {
  std::vector<QVec> pts;
  for (const auto& g : ideal.generators()) pts.push_back(to_q(g.weight));
  return Polyhedron::from_generators(ideal.rank(), pts, ideal.ambient().divisor().sigma().dual());
}

namespace detail {

// (x, e) with x in R^n.
inline ZVec lift(const ZVec& x, long e) {
  ZVec out = x;
  out.push_back(e);
  return out;
}

inline QVec lift(const QVec& x, long e) {
  QVec out = x;
  out.push_back(e);
  return out;
}

// Lattice points of a box around eP, with some room along the recession rays.
inline Box slice_box(const Polyhedron& p, long e) {
  const Polyhedron ep = dilate(p, e);
  std::vector<QVec> pts = ep.vertices();
  std::vector<ZVec> dirs = ep.recession().rays();
  for (const auto& l : ep.recession().lineality()) {
    dirs.push_back(l);
    dirs.push_back(negate(l));
  }
  const std::size_t base = pts.size();
  for (std::size_t i = 0; i < base; ++i) {
    for (const auto& r : dirs) pts.push_back(add(pts[i], to_q(scale(r, 2))));
  }
  Box b = bounding_box(pts);
  for (std::size_t i = 0; i < b.lo.size(); ++i) {
    b.lo[i] -= 1;
    b.hi[i] += 1;
  }
  return b;
}

// Returns the first lattice point where the e-slice of the cone differs from eP.
inline std::optional<ZVec> slice_mismatch(const Cone& cone, const Polyhedron& p, long e) {
  const Polyhedron ep = dilate(p, e);
  std::optional<ZVec> bad;
  for_each_box_point(slice_box(p, e), [&](const ZVec& x) {
    if (!bad && cone.contains(lift(x, e)) != ep.contains(x)) bad = x;
  });
  return bad;
}

}  // namespace detail

/// Cone over P x {1}: (vertices, 1) and (recession generators, 0).
inline Cone rees_weight_cone(const Polyhedron& p) {
  if (!p.is_integral()) throw Error(ErrorCode::NonIntegralVertices, "Newton polyhedron must be integral");
  std::vector<QVec> gens, lin;
  for (const auto& v : p.vertices()) gens.push_back(detail::lift(v, 1));
  for (const auto& r : p.recession().rays()) gens.push_back(detail::lift(to_q(r), 0));
  for (const auto& l : p.recession().lineality()) lin.push_back(detail::lift(to_q(l), 0));
  Cone c = Cone::from_generators(p.ambient_rank() + 1, gens, lin);
  for (long e = 0; e <= 2; ++e) {
    if (detail::slice_mismatch(c, p, e)) throw Error(ErrorCode::Internal, "Rees cone slice differs from eP");
  }
  return c;
}

namespace detail {

// Delta_z x Q intersected with {<m_i, v> + p >= -ord_z(f_i)}.
inline Polyhedron closure_coefficient(const HomogeneousIdeal& ideal, const CurvePoint& z) {
  const std::size_t n = ideal.rank();
  const Polyhedron delta = ideal.ambient().divisor().at(z);
  std::vector<QVec> normals, eq_normals;
  std::vector<Rational> bounds, eq_bounds;
  for (const auto& in : delta.inequalities()) {
    normals.push_back(lift(to_q(in.normal), 0));
    bounds.push_back(in.bound);
  }
  for (const auto& eq : delta.equations()) {
    eq_normals.push_back(lift(to_q(eq.normal), 0));
    eq_bounds.push_back(eq.bound);
  }
  for (const auto& g : ideal.generators()) {
    normals.push_back(lift(to_q(g.weight), 1));
    bounds.push_back(rat(-g.function.order_at(z)));
  }
  return Polyhedron::from_inequalities(n + 1, normals, bounds, eq_normals, eq_bounds);
}

}  // namespace detail

namespace detail {

/// Linear piece m -> <v, m> + c of a support function.
struct LinearPiece {
  QVec v;
  Rational c;
};

// Pieces of m -> h_{Delta~_z}(m, e).
inline std::vector<LinearPiece> lifted_pieces(const Polyhedron& delta_tilde, long e) {
  const std::size_t n = delta_tilde.ambient_rank() - 1;
  std::vector<LinearPiece> out;
  for (const auto& v : delta_tilde.vertices()) {
    out.push_back({QVec(v.begin(), v.begin() + static_cast<long>(n)), v[n] * e});
  }
  return out;
}

inline std::vector<LinearPiece> plain_pieces(const Polyhedron& delta) {
  std::vector<LinearPiece> out;
  for (const auto& v : delta.vertices()) out.push_back({v, 0});
  return out;
}

/// {(m, i) : m ∈ base, i >= -h(m)} with h the minimum of the pieces. Its
/// lattice points are the pairs (m, i) whose piece at m has order >= i at z.
inline Polyhedron staircase(const Polyhedron& base, const std::vector<LinearPiece>& pieces) {
  const std::size_t n = base.ambient_rank();
  auto ext = [n](const ZVec& a, Integer last) {
    QVec out = to_q(a);
    out.resize(n + 1, Rational(0));
    out[n] = rat(last);
    return out;
  };
  std::vector<QVec> normals, eq_normals;
  std::vector<Rational> bounds, eq_bounds;
  for (const auto& in : base.inequalities()) {
    normals.push_back(ext(in.normal, 0));
    bounds.push_back(in.bound);
  }
  for (const auto& eq : base.equations()) {
    eq_normals.push_back(ext(eq.normal, 0));
    eq_bounds.push_back(eq.bound);
  }
  for (const auto& p : pieces) {
    QVec a = p.v;
    a.push_back(Rational(1));
    normals.push_back(std::move(a));
    bounds.push_back(-p.c);
  }
  return Polyhedron::from_inequalities(n + 1, normals, bounds, eq_normals, eq_bounds);
}

inline CurvePoint generic_point(const std::set<CurvePoint>& avoid) {
  long a = 0;
  while (avoid.count(CurvePoint::finite(a))) ++a;
  return CurvePoint::finite(a);
}


}  // namespace detail

/// Closure data of I. The Rees divisor is computed by normalizing A[It], with A
/// presented by its renormalizing generators in degree (m, 0) and the
/// generators of I in degree (m_i, 1), and is checked against the coefficient
/// formula Delta_z x Q ∩ {<m_i, v> + p >= -ord_z(f_i)}.
inline ReesData ideal_closure(const HomogeneousIdeal& ideal) {
  const MultigradedAlgebra& a = ideal.ambient();
  const CurveKind kind = a.divisor().kind();
  ReesData r;
  r.newton = newton_polyhedron(ideal);
  r.rees_cone = rees_weight_cone(r.newton);

  std::vector<HomogeneousElement> gens;
  for (const auto& g : renormalizing_generators(a)) gens.push_back({g.function, detail::lift(g.weight, 0)});
  for (const auto& g : ideal.generators()) gens.push_back({g.function, detail::lift(g.weight, 1)});
  r.rees_divisor = normalization_divisor(AlgebraPresentation(kind, gens));

  if (r.rees_divisor.sigma() != r.rees_cone.dual()) {
    throw Error(ErrorCode::Internal, "weight cone of A[It] differs from the Rees cone");
  }
  std::set<CurvePoint> pts;
  for (const auto& z : a.divisor().support()) pts.insert(z);
  for (const auto& z : r.rees_divisor.support()) pts.insert(z);
  for (const auto& g : ideal.generators()) {
    for (const auto& [root, e] : g.function.factors()) pts.insert(CurvePoint::finite(root));
    if (kind == CurveKind::ProjectiveLine) pts.insert(CurvePoint::infinity());
  }
  for (const auto& z : pts) {
    if (detail::closure_coefficient(ideal, z) != r.rees_divisor.at(z)) {
      throw Error(ErrorCode::Internal, "Rees divisor disagrees with the coefficient formula at " + z.str());
    }
  }
  return r;
}

/// Degree-m piece of the closure of I^e: H^0(floor D~(m, e)).
inline SectionSpace closure_graded_piece(const ReesData& r, const ZVec& m, long e) {
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "power of an ideal must be positive");
  if (m.size() != r.newton.ambient_rank()) throw Error(ErrorCode::RankMismatch, "weight has wrong rank");
  if (!dilate(r.newton, e).contains(m)) {
    throw Error(ErrorCode::WeightOutsideDilatedNewton, "weight " + to_string(m) + " is not in " +
                                                           std::to_string(e) + "P");
  }
  return global_sections(floor_divisor(evaluate(r.rees_divisor, detail::lift(m, e))));
}

/// Module generators of P ∩ M for P = conv(exponents) + dual cone: the minimal
/// monomial generators of the closure of a monomial ideal.
inline std::vector<ZVec> monomial_closure(const std::vector<ZVec>& exponents, const Cone& dual) {
  if (exponents.empty()) throw Error(ErrorCode::EmptyInput, "monomial ideal without generators");
  if (!dual.pointed()) throw Error(ErrorCode::NotPointed, "cone of exponents must be pointed");
  std::vector<QVec> pts;
  for (const auto& e : exponents) {
    if (!dual.contains(e)) throw Error(ErrorCode::WeightOutsideCone, "exponent " + to_string(e) + " is outside the cone");
    pts.push_back(to_q(e));
  }
  return module_generators(Polyhedron::from_generators(dual.ambient_rank(), pts, dual));
}

/// Homogeneous elements generating the closure of I.
///
/// Over the affine line with sigma^v pointed these are exact A-module
/// generators: at each point z the pairs (m, i) with i >= the order of the
/// closure piece at m are the lattice points of the staircase
/// {m ∈ P, i >= -h_{Delta~_z}(m, 1)}, a module over the lattice points of its
/// recession cone, which is the staircase of A. The weights of its module
/// generators, over the support of D~ and one point outside it, suffice.
///
/// Otherwise the weights are the vertices and module generators of P and the
/// weights of the non-inherited facets of every coefficient, with a basis of
/// each piece; closing them again gives R.
inline std::vector<HomogeneousElement> closure_generators(const ReesData& r) {
  const PolyhedralDivisor& d = r.rees_divisor;
  const std::size_t n = r.newton.ambient_rank();
  std::set<ZVec> weights;
  if (d.kind() == CurveKind::AffineLine && r.newton.recession().pointed()) {
    std::set<CurvePoint> pts;
    for (const auto& z : d.support()) pts.insert(z);
    pts.insert(detail::generic_point(pts));
    for (const auto& z : pts) {
      for (const auto& y : module_generators_in_window(detail::staircase(r.newton, detail::lifted_pieces(d.at(z), 1)))) {
        weights.insert(ZVec(y.begin(), y.end() - 1));
      }
    }
    std::vector<HomogeneousElement> out;
    for (const auto& m : weights) out.push_back({closure_graded_piece(r, m, 1).generator, m});
    return out;
  }
  for (const auto& v : r.newton.vertices()) weights.insert(to_z(v));
  if (r.newton.recession().pointed()) {
    for (const auto& m : module_generators(r.newton)) weights.insert(m);
  }
  for (const auto& [z, delta] : d.coefficients()) {
    for (const auto& in : delta.inequalities()) {
      const long q = in.normal[n];
      if (q <= 0) continue;
      ZVec m(in.normal.begin(), in.normal.end() - 1);
      bool integral = true;
      for (auto& x : m) {
        integral = integral && x % q == 0;
        x /= q;
      }
      if (integral && r.newton.contains(m)) weights.insert(m);
    }
  }
  std::vector<HomogeneousElement> out;
  for (const auto& m : weights) {
    for (const auto& f : closure_graded_piece(r, m, 1).basis) out.push_back({f, m});
  }
  return out;
}

namespace detail {

// Projection of a polyhedron in N x Q along the last axis.
inline Polyhedron project_last(const Polyhedron& p) {
  const std::size_t n = p.ambient_rank() - 1;
  auto cut = [n](const QVec& v) { return QVec(v.begin(), v.begin() + static_cast<long>(n)); };
  std::vector<QVec> pts, rays, lin;
  for (const auto& v : p.vertices()) pts.push_back(cut(v));
  for (const auto& r : p.recession().rays()) rays.push_back(cut(to_q(r)));
  for (const auto& l : p.recession().lineality()) lin.push_back(cut(to_q(l)));
  return Polyhedron::from_generators(n, pts, rays, lin);
}

}  // namespace detail

/// Conditions (i)-(iv) of the correspondence between closed homogeneous ideals
/// and pairs (P, D~). Over the affine line (iv) is the weaker (iv)'.
inline VerificationReport verify_correspondence(const ReesData& r, const MultigradedAlgebra& ambient) {
  VerificationReport rep;
  const PolyhedralDivisor& base = ambient.divisor();
  const PolyhedralDivisor& rees = r.rees_divisor;
  const std::size_t n = base.rank();
  const bool projective = base.kind() == CurveKind::ProjectiveLine;

  CheckResult newton{"newton", true, ""};
  if (r.newton.ambient_rank() != n || r.newton.recession() != base.sigma().dual()) {
    newton = {"newton", false, "P does not have recession cone dual(sigma)"};
  } else if (!r.newton.is_integral()) {
    newton = {"newton", false, "P has non-integral vertices"};
  } else {
    for (const auto& v : r.newton.vertices()) {
      if (graded_piece(ambient, to_z(v)).empty()) {
        newton = {"newton", false, "vertex " + to_string(to_z(v)) + " is not a weight of A"};
        break;
      }
    }
  }
  rep.checks.push_back(newton);

  CheckResult slices{"slices", true, "e = 0..3 agree with eP"};
  if (rees.sigma() != r.rees_cone.dual() || rees.rank() != n + 1) {
    slices = {"slices", false, "the Rees divisor does not have tail cone dual(omega~)"};
  } else if (newton.passed) {
    for (long e = 0; e <= 3 && slices.passed; ++e) {
      if (auto bad = detail::slice_mismatch(r.rees_cone, r.newton, e)) {
        slices = {"slices", false, "at e = " + std::to_string(e) + ", weight " + to_string(*bad)};
      }
    }
  }
  rep.checks.push_back(slices);

  std::set<CurvePoint> pts;
  for (const auto& z : base.support()) pts.insert(z);
  for (const auto& z : rees.support()) pts.insert(z);

  CheckResult proj{"projection", true, "every coefficient projects onto Delta_z with vertices at p <= 0"};
  for (const auto& z : pts) {
    const Polyhedron tilde = rees.at(z);
    if (detail::project_last(tilde) != base.at(z)) {
      proj = {"projection", false, "at " + z.str() + " the projection is not Delta_z"};
      break;
    }
    for (const auto& v : tilde.vertices()) {
      if (v[n] > 0) {
        proj = {"projection", false, "at " + z.str() + " the vertex " + to_string(v) + " has p > 0"};
        break;
      }
    }
    if (!proj.passed) break;
  }
  rep.checks.push_back(proj);

  CheckResult facets{projective ? "facets" : "facets_affine", true, ""};
  long realized = 0;
  auto fail = [&](const CurvePoint& z, const std::string& why) {
    if (facets.passed) facets = {facets.name, false, "at " + z.str() + ": " + why};
  };
  for (const auto& z : pts) {
    const Polyhedron tilde = rees.at(z);
    const Polyhedron delta = base.at(z);
    for (const auto& eq : tilde.equations()) {
      if (eq.normal[n] != 0) fail(z, "an equation involves the last coordinate");
    }
    for (const auto& in : tilde.inequalities()) {
      const long q = in.normal[n];
      ZVec a(in.normal.begin(), in.normal.end() - 1);
      if (q == 0) {
        if (!delta.recession().dual().contains(a) || support_function(delta, a) < in.bound) {
          fail(z, "facet " + to_string(in.normal) + " is not inherited from Delta_z");
        }
        continue;
      }
      if (q < 0) {
        fail(z, "facet " + to_string(in.normal) + " bounds p from above");
        continue;
      }
      bool integral = is_integer(in.bound / q);
      for (auto& x : a) {
        integral = integral && x % q == 0;
        x /= q;
      }
      if (!integral) {
        fail(z, "facet " + to_string(in.normal) + " is not of the form m(v) + p >= e with m, e integral");
        continue;
      }
      if (!r.newton.contains(a)) {
        fail(z, "facet weight " + to_string(a) + " is not in P");
        continue;
      }
      if (!projective) continue;
      // f chi^(m,1) with ord_z(f) = -h(m,1) exists iff the section space of
      // floor D~(m,1) is nonempty: its generator (finite z) or its top basis
      // element (z = inf) is tight at z.
      const SectionSpace s = global_sections(floor_divisor(evaluate(rees, detail::lift(a, 1))));
      if (s.empty()) {
        fail(z, "no section realizes the facet of weight " + to_string(a));
        continue;
      }
      const RationalFunction& f = z.infinite ? s.basis.back() : s.basis.front();
      if (Rational(-f.order_at(z)) != support_function(tilde, to_q(detail::lift(a, 1)))) {
        fail(z, "section of weight " + to_string(a) + " is not tight");
        continue;
      }
      ++realized;
    }
  }
  if (facets.passed) {
    facets.detail = projective ? std::to_string(realized) + " facets realized by sections"
                               : "all facet weights lie in P ∩ M";
  }
  rep.checks.push_back(facets);
  return rep;
}

}  // namespace tvar
