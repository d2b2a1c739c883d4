#pragma once

// Normality of homogeneous ideals over the affine line: the polyhedra P~_z,
// the sufficient criterion through their normality, exact comparison of I^e
// with its closure, and the bound e <= n in the polynomial ring.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tvar/ideals.hpp"
#include "tvar/lattice_points.hpp"

namespace tvar {

struct PTildePolyhedron {
  CurvePoint point;
  Polyhedron polyhedron;
  /// Box that was enumerated to build the hull.
  Box window;
};

namespace detail {

inline void require_affine(CurveKind kind, const char* what) {
  if (kind != CurveKind::AffineLine) throw Error(ErrorCode::NotAffine, std::string(what) + " needs the affine line");
}

// Box grown by half its width on every side (at least one).
inline Box margin(const Box& w) {
  Box out = w;
  for (std::size_t k = 0; k < w.lo.size(); ++k) {
    const Integer grow = std::max<Integer>(1, (w.hi[k] - w.lo[k] + 1) / 2);
    out.lo[k] -= grow;
    out.hi[k] += grow;
  }
  return out;
}

}  // namespace detail

/// P~_z = conv{(m, i) : m ∈ P ∩ M, h_{Delta~_z}(m, 1) >= -i}, the integer hull
/// of the staircase above P. Both defining properties are re-checked on a box
/// twice the window.
inline PTildePolyhedron p_tilde(const ReesData& r, const CurvePoint& z) {
  detail::require_affine(r.rees_divisor.kind(), "P~_z");
  if (!r.newton.recession().pointed()) throw Error(ErrorCode::NotPointed, "P~_z needs a pointed dual cone");
  const Polyhedron q = detail::staircase(r.newton, detail::lifted_pieces(r.rees_divisor.at(z), 1));
  auto [hull, window] = integer_hull(q);
  for_each_box_point(detail::margin(window), [&](const ZVec& x) {
    if (hull.contains(x) != q.contains(x)) {
      throw Error(ErrorCode::VerificationFailed, "P~_" + z.str() + " disagrees with the staircase at " + to_string(x));
    }
  });
  return {z, std::move(hull), std::move(window)};
}

enum class NormalityStatus { Normal, Unknown };

inline const char* to_string(NormalityStatus s) { return s == NormalityStatus::Normal ? "normal" : "unknown"; }

struct PTildeCheck {
  PTildePolyhedron p_tilde;
  /// The point lies outside the support of D~; it stands for all such points.
  bool generic = false;
  NormalityResult result;
};

struct NormalityCertificate {
  NormalityStatus status = NormalityStatus::Normal;
  /// Closure data of I; the certificate is about the closure.
  ReesData closure;
  std::vector<PTildeCheck> checks;
};

/// Normal when P~_z is a normal polyhedron at every support point of D~ and at
/// one point outside it. Unknown otherwise: the criterion is only sufficient.
inline NormalityCertificate normality_certificate(const HomogeneousIdeal& ideal) {
  detail::require_affine(ideal.ambient().divisor().kind(), "normality certificate");
  NormalityCertificate cert;
  cert.closure = ideal_closure(ideal);
  std::set<CurvePoint> support;
  for (const auto& z : cert.closure.rees_divisor.support()) support.insert(z);
  std::vector<std::pair<CurvePoint, bool>> pts;
  for (const auto& z : support) pts.emplace_back(z, false);
  pts.emplace_back(detail::generic_point(support), true);
  for (const auto& [z, generic] : pts) {
    PTildeCheck c{p_tilde(cert.closure, z), generic, {}};
    c.result = is_normal_polyhedron(c.p_tilde.polyhedron);
    if (!c.result.normal) cert.status = NormalityStatus::Unknown;
    cert.checks.push_back(std::move(c));
  }
  return cert;
}

/// Generators of I^e: all products of e generators, without repetitions.
inline HomogeneousIdeal ideal_power(const HomogeneousIdeal& ideal, long e) {
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "power of an ideal must be positive");
  std::vector<HomogeneousElement> cur{{RationalFunction(), ZVec(ideal.rank(), 0)}};
  for (long k = 0; k < e; ++k) {
    std::vector<HomogeneousElement> next;
    for (const auto& a : cur) {
      for (const auto& g : ideal.generators()) {
        HomogeneousElement p{a.function * g.function, add(a.weight, g.weight)};
        if (std::find(next.begin(), next.end(), p) == next.end()) next.push_back(std::move(p));
      }
    }
    cur = std::move(next);
  }
  return HomogeneousIdeal(ideal.ambient(), cur);
}

/// Where I^e and its closure differ: at weight m the closure piece has order
/// `closure_order` at `point` and the piece of I^e has order `power_order`
/// (none when it is zero).
struct PowerWitness {
  CurvePoint point;
  ZVec weight;
  long closure_order = 0;
  std::optional<long> power_order;
};

struct PowerComparison {
  bool equal = true;
  long e = 1;
  /// Number of e-element multisets of generators.
  unsigned long long tuples = 0;
  std::optional<PowerWitness> witness;
};

inline constexpr unsigned long long kDefaultTupleCap = 1000000ULL;

/// Decides whether I^e is integrally closed. The piece of I^e at m is the sum
/// of f_{i_1}...f_{i_e} A_{m - m_{i_1} - ... - m_{i_e}}, a principal fractional
/// ideal whose order at z is the minimum over the terms. At each point z the
/// pairs (m, i) with i >= that order form sums of e local generators
/// (m_j, ord_z f_j) plus the lattice points of the staircase of A, while the
/// closure gives the lattice points of the staircase of D~ at level e. The two
/// agree iff every module generator of the latter lies in the former; points
/// outside every support behave alike and are represented by one of them.
inline PowerComparison power_closure_equal(const HomogeneousIdeal& ideal, long e,
                                           unsigned long long tuple_cap = kDefaultTupleCap) {
  const MultigradedAlgebra& a = ideal.ambient();
  const PolyhedralDivisor& base = a.divisor();
  detail::require_affine(base.kind(), "power comparison");
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "power of an ideal must be positive");
  const Cone dual = base.sigma().dual();
  if (!dual.pointed()) throw Error(ErrorCode::NotPointed, "power comparison needs a pointed dual cone");

  PowerComparison out;
  out.e = e;
  {
    // C(r + e - 1, e), stopping once it passes the cap.
    const unsigned long long r = ideal.generators().size();
    unsigned long long c = 1;
    for (unsigned long long k = 1; k <= static_cast<unsigned long long>(e) && c <= tuple_cap; ++k) {
      c = c * (r + k - 1) / k;
    }
    if (c > tuple_cap) {
      throw Error(ErrorCode::TupleLimit, "more than " + std::to_string(tuple_cap) + " generator tuples in degree " +
                                             std::to_string(e));
    }
    out.tuples = c;
  }

  const ReesData r = ideal_closure(ideal);
  const std::size_t n = ideal.rank();
  std::set<CurvePoint> pts;
  for (const auto& z : base.support()) pts.insert(z);
  for (const auto& z : r.rees_divisor.support()) pts.insert(z);
  for (const auto& g : ideal.generators()) {
    for (const auto& [root, k] : g.function.factors()) pts.insert(CurvePoint::finite(root));
  }
  pts.insert(detail::generic_point(pts));

  const Polyhedron level = dilate(r.newton, e);
  const Polyhedron dual_p = Polyhedron::from_cone(dual);
  for (const auto& z : pts) {
    const Polyhedron delta = base.at(z);
    const Polyhedron ring = detail::staircase(dual_p, detail::plain_pieces(delta));
    const Polyhedron closed = detail::staircase(level, detail::lifted_pieces(r.rees_divisor.at(z), e));
    if (closed.recession() != ring.recession()) {
      throw Error(ErrorCode::Internal, "closure staircase at " + z.str() + " has the wrong recession cone");
    }

    std::set<ZVec> sums{ZVec(n + 1, 0)};
    for (long k = 0; k < e; ++k) {
      std::set<ZVec> next;
      for (const auto& s : sums) {
        for (const auto& g : ideal.generators()) {
          ZVec t = add(s, detail::lift(g.weight, g.function.order_at(z)));
          next.insert(std::move(t));
        }
      }
      sums = std::move(next);
    }

    for (const auto& y : module_generators_in_window(closed)) {
      bool covered = false;
      for (const auto& s : sums) {
        if (ring.contains(sub(y, s))) {
          covered = true;
          break;
        }
      }
      if (covered) continue;
      PowerWitness w{z, ZVec(y.begin(), y.end() - 1), static_cast<long>(y[n]), std::nullopt};
      for (const auto& s : sums) {
        const ZVec rest = sub(w.weight, ZVec(s.begin(), s.end() - 1));
        if (!dual.contains(rest)) continue;
        const long ord = static_cast<long>(s[n] + ceil_of(-support_function(delta, rest)));
        if (!w.power_order || ord < *w.power_order) w.power_order = ord;
      }
      out.equal = false;
      out.witness = std::move(w);
      return out;
    }
  }
  return out;
}

/// Generator of the piece of I^e at m from the explicit products of e
/// generators and the graded pieces of A, as a sum of principal fractional
/// ideals (pointwise minimum of orders). Independent of the staircase
/// argument; used to re-check witnesses. Empty when the piece is zero.
inline std::optional<RationalFunction> power_piece_generator(const HomogeneousIdeal& ideal, long e, const ZVec& m) {
  detail::require_affine(ideal.ambient().divisor().kind(), "power piece");
  const Cone dual = ideal.ambient().divisor().sigma().dual();
  const HomogeneousIdeal power = ideal_power(ideal, e);
  std::vector<RationalFunction> terms;
  for (const auto& g : power.generators()) {
    const ZVec rest = sub(m, g.weight);
    if (dual.contains(rest)) terms.push_back(g.function * graded_piece(ideal.ambient(), rest).generator);
  }
  if (terms.empty()) return std::nullopt;
  std::map<Rational, long> low;
  for (const auto& t : terms) {
    for (const auto& [a, k] : t.factors()) low.emplace(a, 0);
  }
  for (auto& [a, k] : low) {
    k = terms.front().order_at(CurvePoint::finite(a));
    for (const auto& t : terms) k = std::min(k, t.order_at(CurvePoint::finite(a)));
  }
  return RationalFunction::from_factors(1, low);
}

/// In k[x_0, ..., x_n] graded by the exponents of x_1..x_n (zero divisor on the
/// affine line, sigma the positive orthant): I is normal iff I^e is integrally
/// closed for e = 1..n.
inline bool rrv_check(const HomogeneousIdeal& ideal) {
  const PolyhedralDivisor& d = ideal.ambient().divisor();
  const std::size_t n = d.rank();
  if (d.kind() != CurveKind::AffineLine || !d.support().empty() || d.sigma() != Cone::orthant(n)) {
    throw Error(ErrorCode::WrongAmbient, "the bound e <= n applies to the polynomial ring with the zero divisor");
  }
  for (long e = 1; e <= static_cast<long>(n); ++e) {
    if (!power_closure_equal(ideal, e).equal) return false;
  }
  return true;
}

}  // namespace tvar
