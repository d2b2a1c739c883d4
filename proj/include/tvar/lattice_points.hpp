#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tvar/cone.hpp"
#include "tvar/errors.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/rational.hpp"

namespace tvar {

/// Largest number of box points any single enumeration may visit.
inline constexpr long double kMaxBoxPoints = 2e8L;

struct Box {
  ZVec lo, hi;

  long double volume() const {
    long double v = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= static_cast<long double>(hi[i] - lo[i] + 1);
    return v;
  }
};

/// Smallest integer box containing the given rational points.
inline Box bounding_box(const std::vector<QVec>& points) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "bounding box of no points");
  const std::size_t n = points.front().size();
  Box b{ZVec(n), ZVec(n)};
  for (std::size_t i = 0; i < n; ++i) {
    b.lo[i] = floor_of(points.front()[i]);
    b.hi[i] = ceil_of(points.front()[i]);
  }
  for (const auto& p : points) {
    for (std::size_t i = 0; i < n; ++i) {
      b.lo[i] = std::min(b.lo[i], floor_of(p[i]));
      b.hi[i] = std::max(b.hi[i], ceil_of(p[i]));
    }
  }
  return b;
}

/// Calls f on every lattice point of the box, first coordinate fastest.
template <class F>
void for_each_box_point(const Box& box, F&& f) {
  const std::size_t n = box.lo.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (box.lo[i] > box.hi[i]) return;
  }
  if (box.volume() > kMaxBoxPoints) {
    throw Error(ErrorCode::TupleLimit, "lattice enumeration box is too large");
  }
  ZVec x = box.lo;
  while (true) {
    f(x);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (x[i] < box.hi[i]) {
        ++x[i];
        break;
      }
      x[i] = box.lo[i];
    }
    if (i == n) return;
  }
}

/// Lattice points of a bounded polyhedron, sorted.
inline std::vector<ZVec> lattice_points(const Polyhedron& p) {
  if (!p.bounded()) throw Error(ErrorCode::Unbounded, "lattice points of an unbounded polyhedron");
  std::vector<ZVec> out;
  for_each_box_point(bounding_box(p.vertices()), [&](const ZVec& x) {
    if (p.contains(x)) out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

struct HilbertBasis {
  Cone cone;
  std::vector<ZVec> elements;  // sorted
};

namespace detail {

// Grading positive on every nonzero point of a pointed cone.
inline ZVec positive_grading(const Cone& c) {
  ZVec g(c.ambient_rank(), 0);
  for (const auto& f : c.facets()) g = add(g, f);
  if (c.facets().empty()) {
    // A single ray (or the zero cone): grade by the ray itself.
    for (const auto& r : c.rays()) g = add(g, r);
  }
  return g;
}

}  // namespace detail

namespace detail {

// Simplicial cones covering the pointed cone spanned by `rays` (pulling
// triangulation: cone(apex, F) over the facets F away from the first ray).
inline void simplicial_cover(std::size_t n, const std::vector<ZVec>& rays, std::vector<std::vector<ZVec>>& out) {
  const Cone c = Cone::from_generators(n, rays);
  if (c.rays().empty()) return;
  if (c.rays().size() == c.dimension()) {
    out.push_back(c.rays());
    return;
  }
  const ZVec apex = c.rays().front();
  for (const auto& a : c.facets()) {
    if (dot(a, apex) == 0) continue;
    std::vector<ZVec> face;
    for (const auto& r : c.rays()) {
      if (dot(a, r) == 0) face.push_back(r);
    }
    std::vector<std::vector<ZVec>> sub;
    simplicial_cover(n, face, sub);
    for (auto& s : sub) {
      s.push_back(apex);
      out.push_back(std::move(s));
    }
  }
}

inline constexpr std::size_t kMaxParallelepiped = 2000000;

// Nonzero lattice points sum lambda_i r_i, 0 <= lambda_i < 1, of linearly
// independent rays. Restricted to k pivot coordinates the rays form an
// invertible B; the points are among the k-coordinate classes of Z^k / B Z^k,
// enumerated as a group generated by the images of the unit vectors.
inline void parallelepiped_points(const std::vector<ZVec>& rays, std::set<ZVec>& out) {
  const std::size_t k = rays.size(), n = rays.front().size();
  std::vector<QVec> rows;
  for (const auto& r : rays) rows.push_back(to_q(r));
  std::vector<std::size_t> pivots;
  for (const auto& row : rref(rows)) {
    std::size_t j = 0;
    while (row[j] == 0) ++j;
    pivots.push_back(j);
  }
  // [B | I] reduces to [I | B^-1]; row j of B^-1 is lambda(e_j).
  std::vector<QVec> aug;
  for (std::size_t i = 0; i < k; ++i) {
    QVec row(2 * k, 0);
    for (std::size_t j = 0; j < k; ++j) row[j] = rat(rays[i][pivots[j]]);
    row[k + i] = 1;
    aug.push_back(row);
  }
  aug = rref(aug);
  std::vector<QVec> gens(k, QVec(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < k; ++i) gens[j][i] = aug[j][k + i];
  }
  auto frac = [](QVec v) {
    for (auto& x : v) x -= rat(floor_of(x));
    return v;
  };
  std::set<QVec> seen{QVec(k, 0)};
  std::vector<QVec> queue{QVec(k, 0)};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& g : gens) {
      QVec next = frac(add(queue[q], g));
      if (!seen.insert(next).second) continue;
      if (seen.size() > kMaxParallelepiped) {
        throw Error(ErrorCode::TupleLimit, "fundamental parallelepiped is too large");
      }
      queue.push_back(std::move(next));
    }
  }
  for (const auto& lambda : seen) {
    QVec x(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t t = 0; t < n; ++t) x[t] += lambda[i] * rat(rays[i][t]);
    }
    if (!is_zero(x) && is_integral(x)) out.insert(to_z(x));
  }
}

}  // namespace detail

/// Minimal generating set of the semigroup c ∩ Z^n for a pointed cone c.
///
/// Every irreducible element is a ray or a lattice point of the half-open
/// fundamental parallelepiped of a simplicial cone in a triangulation of c.
/// Candidates are processed by increasing degree and kept when no earlier
/// basis element can be subtracted inside the cone.
inline HilbertBasis hilbert_basis(const Cone& c) {
  if (!c.pointed()) throw Error(ErrorCode::NotPointed, "Hilbert basis of a cone with lineality");
  HilbertBasis hb{c, {}};
  if (c.rays().empty()) return hb;
  const std::size_t n = c.ambient_rank();
  const ZVec g = detail::positive_grading(c);

  std::vector<std::vector<ZVec>> simplices;
  detail::simplicial_cover(n, c.rays(), simplices);
  std::set<ZVec> points(c.rays().begin(), c.rays().end());
  for (const auto& s : simplices) detail::parallelepiped_points(s, points);

  std::vector<std::pair<Integer, ZVec>> candidates;
  for (const auto& x : points) candidates.emplace_back(dot(g, x), x);
  std::sort(candidates.begin(), candidates.end());

  for (const auto& [d, x] : candidates) {
    bool reducible = false;
    for (const auto& h : hb.elements) {
      if (dot(g, h) >= d) continue;
      if (c.contains(sub(x, h))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) hb.elements.push_back(x);
  }
  std::sort(hb.elements.begin(), hb.elements.end());
  return hb;
}

struct Saturation {
  Cone cone;
  /// Hilbert basis when the cone is pointed; otherwise a generating set of
  /// cone ∩ Z^n (union of the Hilbert bases of its intersections with orthants).
  std::vector<ZVec> generators;
};

/// Saturation of the semigroup generated by E: the lattice points of cone(E).
inline Saturation saturate_semigroup(const std::vector<ZVec>& e) {
  if (e.empty()) throw Error(ErrorCode::EmptyInput, "saturation of an empty set");
  const std::size_t n = e.front().size();
  Cone c = Cone::from_generators(n, e);
  if (c.pointed()) return {c, hilbert_basis(c).elements};
  std::vector<ZVec> gens;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    std::vector<ZVec> signs;
    for (std::size_t i = 0; i < n; ++i) {
      ZVec u(n, 0);
      u[i] = (mask >> i) & 1 ? -1 : 1;
      signs.push_back(u);
    }
    Cone piece = c.intersect(Cone::from_inequalities(n, signs));
    auto hb = hilbert_basis(piece).elements;
    gens.insert(gens.end(), hb.begin(), hb.end());
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return {c, gens};
}

/// Minimal G ⊂ P ∩ M with P ∩ M = G + (rec(P) ∩ M).
inline std::vector<ZVec> module_generators(const Polyhedron& p) {
  if (!p.recession().pointed()) throw Error(ErrorCode::NotPointed, "recession cone has lineality");
  const std::size_t n = p.ambient_rank();
  std::vector<ZVec> out;
  for (const auto& h : hilbert_basis(p.homogenization()).elements) {
    if (h[n] == 1) out.emplace_back(h.begin(), h.end() - 1);
  }
  return out;
}

namespace detail {

// With Q = conv(V) + cone(g_j), g_j primitive, every lattice point of Q is a
// lattice point of conv(V) + sum [0,1) g_j plus an integral combination of the
// g_j; this box contains the former set.
inline Box rational_window(const Polyhedron& q) {
  if (!q.recession().pointed()) throw Error(ErrorCode::NotPointed, "recession cone has lineality");
  Box w = bounding_box(q.vertices());
  for (const auto& r : q.recession().rays()) {
    for (std::size_t k = 0; k < r.size(); ++k) (r[k] < 0 ? w.lo[k] : w.hi[k]) += r[k];
  }
  return w;
}

}  // namespace detail

/// Same set as module_generators, found by enumerating the rational window and
/// discarding points that stay in P after subtracting a Hilbert-basis element
/// of the recession cone. Cheaper when P has vertices with large denominators.
inline std::vector<ZVec> module_generators_in_window(const Polyhedron& p) {
  const Box w = detail::rational_window(p);
  const std::vector<ZVec> hb = hilbert_basis(p.recession()).elements;
  std::vector<ZVec> out;
  for_each_box_point(w, [&](const ZVec& x) {
    if (!p.contains(x)) return;
    for (const auto& h : hb) {
      if (p.contains(sub(x, h))) return;
    }
    out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

struct IntegerHull {
  Polyhedron hull;
  /// Box that was enumerated.
  Box window;
};

/// conv(Q ∩ Z^d) for a rational polyhedron Q with pointed recession cone.
inline IntegerHull integer_hull(const Polyhedron& q) {
  const Cone& rec = q.recession();
  const Box w = detail::rational_window(q);
  std::vector<QVec> pts;
  for_each_box_point(w, [&](const ZVec& x) {
    if (!q.contains(x)) return;
    for (const auto& r : rec.rays()) {
      if (q.contains(sub(x, r))) return;
    }
    pts.push_back(to_q(x));
  });
  if (pts.empty()) throw Error(ErrorCode::Internal, "rational polyhedron without lattice points in its window");
  return {Polyhedron::from_generators(q.ambient_rank(), pts, rec), w};
}

struct NormalityResult {
  bool normal = true;
  /// Failing pair (m, e) with m ∈ eP ∩ M not a sum of e lattice points of P:
  /// the smallest height e, then the lexicographically smallest m among the
  /// Hilbert-basis elements of the cone over P at that height.
  std::optional<std::pair<ZVec, long>> witness;
};

/// Decides whether (eP) ∩ M = (P ∩ M) + ... + (P ∩ M) for every e >= 1, i.e.
/// whether the cone over P has no Hilbert-basis element of height >= 2. With a
/// dimension bound n only heights <= n are inspected.
inline NormalityResult is_normal_polyhedron(const Polyhedron& p, std::optional<long> dim_bound = std::nullopt) {
  if (!p.recession().pointed()) throw Error(ErrorCode::NotPointed, "recession cone has lineality");
  if (!p.is_integral()) throw Error(ErrorCode::NonIntegralVertices, "polyhedron has non-integral vertices");
  const std::size_t n = p.ambient_rank();
  NormalityResult res;
  for (const auto& h : hilbert_basis(p.homogenization()).elements) {
    const long e = static_cast<long>(h[n]);
    if (e < 2 || (dim_bound && e > *dim_bound)) continue;
    ZVec m(h.begin(), h.end() - 1);
    if (!res.witness || e < res.witness->second || (e == res.witness->second && m < res.witness->first)) {
      res.witness = std::make_pair(m, e);
    }
  }
  res.normal = !res.witness.has_value();
  return res;
}

namespace detail {

// y ∈ kP, tested on the inequalities of P scaled by k.
inline bool in_dilation(const std::vector<Inequality>& ineqs, const std::vector<Inequality>& eqs, long k,
                        const ZVec& y) {
  for (const auto& in : ineqs) {
    if (rat(dot(in.normal, y)) < k * in.bound) return false;
  }
  for (const auto& eq : eqs) {
    if (rat(dot(eq.normal, y)) != k * eq.bound) return false;
  }
  return true;
}

}  // namespace detail

/// Whether m = m_1 + ... + m_e with every m_i ∈ P ∩ M.
///
/// A summand x satisfies m - x ∈ (e-1)P, hence g(x) <= g(m) - (e-1) min_P g for
/// a grading g positive on the recession cone. The lattice points of the
/// polytope P ∩ {g <= that bound} are enumerated once and the split is searched
/// recursively with memoization.
inline bool efold_sum_membership(const Polyhedron& p, long e, const ZVec& m) {
  if (e < 1) throw Error(ErrorCode::InvalidArgument, "e-fold sum needs e >= 1");
  if (!p.recession().pointed()) throw Error(ErrorCode::NotPointed, "recession cone has lineality");
  const auto ineqs = p.inequalities();
  const auto eqs = p.equations();
  if (!detail::in_dilation(ineqs, eqs, e, m)) return false;
  if (e == 1) return true;

  const std::size_t n = p.ambient_rank();
  const ZVec g = detail::positive_grading(p.recession());
  Rational gmin = dot(g, p.vertices().front());
  for (const auto& v : p.vertices()) gmin = std::min(gmin, dot(g, v));
  auto cap = [&](const ZVec& y, long k) -> Rational { return rat(dot(g, y)) - (k - 1) * gmin; };

  // P ∩ {g <= top} lies in conv(vertices) + conv(0, (top - gmin) r / g(r)).
  const Rational top = cap(m, e);
  if (top < gmin) return false;
  Box box = bounding_box(p.vertices());
  for (const auto& r : p.recession().rays()) {
    const Rational t = (top - gmin) / rat(dot(g, r));
    for (std::size_t i = 0; i < n; ++i) {
      const Rational reach = t * rat(r[i]);
      if (reach > 0) box.hi[i] += ceil_of(reach);
      if (reach < 0) box.lo[i] += floor_of(reach);
    }
  }
  std::vector<ZVec> summands;
  for_each_box_point(box, [&](const ZVec& x) {
    if (rat(dot(g, x)) <= top && p.contains(x)) summands.push_back(x);
  });

  std::map<std::pair<long, ZVec>, bool> memo;
  std::function<bool(long, const ZVec&)> split = [&](long k, const ZVec& y) -> bool {
    if (k == 1) return detail::in_dilation(ineqs, eqs, 1, y);
    auto key = std::make_pair(k, y);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool found = false;
    const Rational c = cap(y, k);
    for (const auto& x : summands) {
      if (rat(dot(g, x)) > c) continue;
      ZVec rest = sub(y, x);
      if (detail::in_dilation(ineqs, eqs, k - 1, rest) && split(k - 1, rest)) {
        found = true;
        break;
      }
    }
    memo[key] = found;
    return found;
  };
  return split(e, m);
}

}  // namespace tvar
