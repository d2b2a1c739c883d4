#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tvar/cone.hpp"
#include "tvar/curve.hpp"
#include "tvar/errors.hpp"
#include "tvar/lattice_points.hpp"
#include "tvar/poly_divisor.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/rational.hpp"
#include "tvar/report.hpp"

namespace tvar {

/// B = k[C][f_1 chi^m_1, ..., f_r chi^m_r].
class AlgebraPresentation {
 public:
  AlgebraPresentation(CurveKind kind, std::vector<HomogeneousElement> generators)
      : kind_(kind), generators_(std::move(generators)) {
    if (generators_.empty()) throw Error(ErrorCode::EmptyInput, "presentation without generators");
    const std::size_t n = generators_.front().weight.size();
    if (n == 0) throw Error(ErrorCode::RankMismatch, "weights must have positive rank");
    std::vector<ZVec> weights;
    for (const auto& g : generators_) {
      if (g.weight.size() != n) throw Error(ErrorCode::RankMismatch, "generator weights have different ranks");
      weights.push_back(g.weight);
    }
    if (rank_of(weights) != n) throw Error(ErrorCode::RankDeficient, "generator weights do not span M_Q");
  }

  CurveKind kind() const { return kind_; }
  const std::vector<HomogeneousElement>& generators() const { return generators_; }
  std::size_t rank() const { return generators_.front().weight.size(); }

  std::vector<ZVec> weights() const {
    std::vector<ZVec> out;
    for (const auto& g : generators_) out.push_back(g.weight);
    return out;
  }

 private:
  CurveKind kind_;
  std::vector<HomogeneousElement> generators_;
};

struct WeightCone {
  Cone omega;
  Cone sigma;
};

inline WeightCone weight_cone(const AlgebraPresentation& pres) {
  Cone omega = Cone::from_generators(pres.rank(), pres.weights());
  Cone sigma = omega.dual();
  if (!sigma.pointed()) throw Error(ErrorCode::RankDeficient, "weight cone is not full dimensional");
  return {omega, sigma};
}

/// Points where some generator function has a zero or a pole.
inline std::vector<CurvePoint> presentation_support(const AlgebraPresentation& pres) {
  std::set<CurvePoint> pts;
  for (const auto& g : pres.generators()) {
    for (const auto& [a, e] : g.function.factors()) pts.insert(CurvePoint::finite(a));
    if (pres.kind() == CurveKind::ProjectiveLine && g.function.degree() != 0) pts.insert(CurvePoint::infinity());
  }
  return {pts.begin(), pts.end()};
}

/// Delta_z = {v : <m_i, v> >= -ord_z(f_i)}.
inline Polyhedron normalization_coefficient(const AlgebraPresentation& pres, const Cone& sigma, const CurvePoint& z) {
  std::vector<Inequality> ineqs;
  for (const auto& g : pres.generators()) ineqs.push_back({g.weight, rat(-g.function.order_at(z))});
  try {
    return polyhedron_from_inequalities(ineqs, sigma);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyPolyhedron) throw;
    throw Error(ErrorCode::Internal, "empty coefficient at " + z.str() +
                                         ": the generators force a pole in degree 0, so the presentation is inconsistent");
  }
}

inline PolyhedralDivisor normalization_divisor(const AlgebraPresentation& pres) {
  const WeightCone wc = weight_cone(pres);
  PolyhedralDivisor d(pres.kind(), wc.sigma);
  for (const auto& z : presentation_support(pres)) d.set(z, normalization_coefficient(pres, wc.sigma, z));
  return d;
}

/// Normalization of B as A[C, D[f]].
inline MultigradedAlgebra normalize(const AlgebraPresentation& pres) {
  PolyhedralDivisor d = normalization_divisor(pres);
  if (!is_proper(d).proper) {
    throw Error(ErrorCode::ImproperDivisor,
                "the normalizing divisor is not proper; the generators do not satisfy the fraction-field hypothesis");
  }
  MultigradedAlgebra a(std::move(d));
  for (const auto& g : pres.generators()) {
    if (!contains_element(a, g)) throw Error(ErrorCode::Internal, "generator missing from its normalization");
  }
  return a;
}

/// Checkable part of Frac B = Frac k(C)[M]. The rank condition is enforced by
/// the presentation itself; on the projective line some generator function must
/// also be non-constant modulo the others.
inline std::vector<std::string> fraction_field_warnings(const AlgebraPresentation& pres) {
  std::vector<std::string> out;
  if (pres.kind() != CurveKind::ProjectiveLine) return out;
  const auto& gens = pres.generators();
  bool varying = false;
  for (const auto& g : gens) {
    if (!(g.function / gens.front().function).factors().empty()) varying = true;
  }
  if (!varying) out.push_back("all generator functions agree up to a constant; k(z) may not lie in Frac B");
  return out;
}

/// Rank-one output: D (elliptic or parabolic) or the pair (D_-, D_+) (hyperbolic).
struct DpdPresentation {
  bool hyperbolic = false;
  QDivisor d;
  QDivisor d_minus;
  QDivisor d_plus;
};

enum class DpdMode { Auto, EllipticParabolic, Hyperbolic };

namespace detail {

// -min_i div(f_i) / m_i over the generators selected by `sign`.
inline QDivisor min_quotient(const AlgebraPresentation& pres, int sign) {
  std::set<CurvePoint> pts;
  for (const auto& z : presentation_support(pres)) pts.insert(z);
  QDivisor out(pres.kind());
  for (const auto& z : pts) {
    std::optional<Rational> best;
    for (const auto& g : pres.generators()) {
      const long m = g.weight[0] * sign;
      if (m <= 0) continue;
      const Rational q = rat(g.function.order_at(z), m);
      if (!best || q < *best) best = q;
    }
    if (best) out.set(z, -*best);
  }
  return out;
}

}  // namespace detail

inline DpdPresentation dpd_presentation(const AlgebraPresentation& pres, DpdMode mode = DpdMode::Auto) {
  if (pres.rank() != 1) throw Error(ErrorCode::RankMismatch, "DPD presentation needs rank one");
  bool pos = false, neg = false, zero = false;
  for (const auto& g : pres.generators()) {
    pos = pos || g.weight[0] > 0;
    neg = neg || g.weight[0] < 0;
    zero = zero || g.weight[0] == 0;
  }
  const bool mixed = pos && neg;
  if (mode == DpdMode::EllipticParabolic && mixed) {
    throw Error(ErrorCode::MixedSignsInParabolicMode, "weights of both signs in the elliptic/parabolic case");
  }
  if (mode == DpdMode::Hyperbolic && !mixed) {
    throw Error(ErrorCode::InvalidArgument, "the hyperbolic case needs weights of both signs");
  }
  if (!mixed && !pos) throw Error(ErrorCode::InvalidArgument, "weights must be positive; reverse the grading");
  if (zero) throw Error(ErrorCode::InvalidArgument, "weight-0 generators are not part of a DPD presentation");
  if (mixed && pres.kind() != CurveKind::AffineLine) {
    throw Error(ErrorCode::InvalidArgument, "the hyperbolic case needs an affine curve");
  }

  DpdPresentation out;
  out.hyperbolic = mixed;
  out.d = out.d_minus = out.d_plus = QDivisor(pres.kind());
  PolyhedralDivisor full = normalization_divisor(pres);
  if (mixed) {
    out.d_minus = detail::min_quotient(pres, -1);
    out.d_plus = detail::min_quotient(pres, 1);
    if (out.d_plus != evaluate(full, ZVec{1}) || out.d_minus != evaluate(full, ZVec{-1})) {
      throw Error(ErrorCode::Internal, "DPD pair disagrees with the normalizing divisor");
    }
  } else {
    out.d = detail::min_quotient(pres, 1);
    if (out.d != evaluate(full, ZVec{1})) throw Error(ErrorCode::Internal, "DPD divisor disagrees with D(1)");
  }
  return out;
}

/// Homogeneous elements of A[C, D] whose normalization is A[C, D]. Weights: the Hilbert basis of the dual of
/// sigma, and L times its rays and the facet normals of every coefficient, with
/// L clearing the vertex denominators. At the latter the evaluations are
/// integral and the section generators are tight, so re-normalizing them
/// recovers every coefficient.
inline std::vector<HomogeneousElement> renormalizing_generators(const MultigradedAlgebra& a) {
  const PolyhedralDivisor& d = a.divisor();
  const std::size_t n = d.rank();
  const Cone dual = d.sigma().dual();
  mpz_class lcm = 1;
  for (const auto& [z, delta] : d.coefficients()) {
    for (const auto& v : delta.vertices()) {
      for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
    }
  }
  const long l = to_integer(lcm);
  std::set<ZVec> weights;
  auto scaled = [&](const ZVec& m) {
    ZVec out = m;
    for (auto& x : out) x *= l;
    return out;
  };
  std::vector<ZVec> cone_gens = dual.rays();
  for (const auto& v : dual.lineality()) {
    cone_gens.push_back(v);
    cone_gens.push_back(negate(v));
  }
  for (const auto& r : cone_gens) weights.insert(scaled(r));
  if (!cone_gens.empty()) {
    for (const auto& h : saturate_semigroup(cone_gens).generators) weights.insert(h);
  }
  for (const auto& [z, delta] : d.coefficients()) {
    for (const auto& in : delta.inequalities()) weights.insert(scaled(in.normal));
    for (const auto& eq : delta.equations()) {
      weights.insert(scaled(eq.normal));
      weights.insert(scaled(negate(eq.normal)));
    }
  }
  weights.erase(ZVec(n, 0));
  std::vector<HomogeneousElement> out;
  for (const auto& m : weights) {
    for (const auto& f : graded_piece(a, m).basis) out.push_back({f, m});
  }
  return out;
}

namespace detail {

// Coefficients (constant term first) of a polynomial given in factored form.
inline std::vector<Rational> expand(const RationalFunction& f) {
  std::vector<Rational> c{f.unit()};
  for (const auto& [a, e] : f.factors()) {
    for (long k = 0; k < e; ++k) {
      std::vector<Rational> next(c.size() + 1, 0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= a * c[i];
      }
      c = std::move(next);
    }
  }
  return c;
}

}  // namespace detail

/// Whether the generators span every graded piece of A of degree <= cap for the
/// grading given by the sum of the rays of sigma. Products are grouped by
/// weight; over the affine line the piece is a k[z]-module and generation means
/// the quotients by its generator have no common root, over the projective
/// line it means the quotients span polynomials of degree <= deg.
inline CheckResult generation_check(const AlgebraPresentation& pres, const MultigradedAlgebra& a, long cap) {
  CheckResult res{"generation", true, ""};
  const PolyhedralDivisor& d = a.divisor();
  const std::size_t n = d.rank();
  if (!d.sigma().full_dimensional()) {
    res.detail = "skipped: the weight cone is not pointed";
    return res;
  }
  ZVec grading(n, 0);
  for (const auto& r : d.sigma().rays()) grading = add(grading, r);
  std::vector<long> deg;
  for (const auto& g : pres.generators()) {
    deg.push_back(dot(grading, g.weight));
    if (deg.back() <= 0) {
      res.detail = "skipped: a generator has weight 0";
      return res;
    }
  }

  std::map<ZVec, std::vector<RationalFunction>> products;
  std::function<void(std::size_t, long, const RationalFunction&, const ZVec&)> grow =
      [&](std::size_t i, long used, const RationalFunction& f, const ZVec& m) {
        if (i == deg.size()) {
          products[m].push_back(f);
          return;
        }
        RationalFunction g = f;
        ZVec w = m;
        for (long k = 0; used + k * deg[i] <= cap; ++k) {
          grow(i + 1, used + k * deg[i], g, w);
          g = g * pres.generators()[i].function;
          w = add(w, pres.generators()[i].weight);
        }
      };
  grow(0, 0, RationalFunction(), ZVec(n, 0));

  std::vector<QVec> normals{to_q(negate(grading))};
  std::vector<Rational> bounds{rat(-cap)};
  const Cone dual = d.sigma().dual();
  for (const auto& f : dual.facets()) {
    normals.push_back(to_q(f));
    bounds.push_back(0);
  }
  long checked = 0;
  for (const auto& m : lattice_points(Polyhedron::from_inequalities(n, normals, bounds))) {
    const SectionSpace piece = graded_piece(a, m);
    if (piece.empty()) continue;
    ++checked;
    const auto it = products.find(m);
    bool spanned = false;
    if (it != products.end()) {
      if (d.kind() == CurveKind::AffineLine) {
        std::map<Rational, long> common;
        bool first = true;
        for (const auto& f : it->second) {
          const RationalFunction h = f / piece.generator;
          std::map<Rational, long> next;
          for (const auto& [root, e] : h.factors()) {
            if (first) {
              next[root] = e;
            } else if (common.count(root)) {
              next[root] = std::min(e, common[root]);
            }
          }
          common = std::move(next);
          first = false;
        }
        spanned = common.empty();
      } else {
        std::vector<QVec> rows;
        for (const auto& f : it->second) {
          std::vector<Rational> c = detail::expand(f / piece.generator);
          c.resize(piece.basis.size(), 0);
          rows.push_back(c);
        }
        spanned = rank_of(rows) == piece.basis.size();
      }
    }
    if (!spanned) {
      res.passed = false;
      res.detail = "weight " + to_string(m) + " is not generated";
      return res;
    }
  }
  res.detail = std::to_string(checked) + " nonzero graded pieces of degree <= " + std::to_string(cap) + " generated";
  return res;
}

/// (a) every generator lies in A, (b) D is proper, (c) normalizing a generating
/// set of A returns D. With a cap, also whether the generators span A up to
/// that degree.
inline VerificationReport verify_normalization(const AlgebraPresentation& pres, const MultigradedAlgebra& a,
                                               std::optional<long> generation_cap = std::nullopt) {
  VerificationReport rep;
  CheckResult member{"membership", true, ""};
  for (std::size_t i = 0; i < pres.generators().size(); ++i) {
    if (!contains_element(a, pres.generators()[i])) {
      member.passed = false;
      member.detail = "generator " + std::to_string(i) + " is not in A";
      break;
    }
  }
  rep.checks.push_back(member);

  const ProperCertificate cert = is_proper(a.divisor());
  rep.checks.push_back({"proper", cert.proper, cert.note});

  CheckResult idem{"idempotence", true, ""};
  try {
    const auto gens = renormalizing_generators(a);
    const PolyhedralDivisor again = normalization_divisor(AlgebraPresentation(pres.kind(), gens));
    idem.passed = again == a.divisor();
    idem.detail = std::to_string(gens.size()) + " generators re-normalized";
  } catch (const Error& e) {
    idem.passed = false;
    idem.detail = std::string(to_string(e.code())) + ": " + e.what();
  }
  rep.checks.push_back(idem);

  if (generation_cap) rep.checks.push_back(generation_check(pres, a, *generation_cap));
  return rep;
}

}  // namespace tvar
