#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tvar/cone.hpp"
#include "tvar/errors.hpp"
#include "tvar/rational.hpp"

namespace tvar {

/// <normal, x> >= bound (or == bound for equations).
struct Inequality {
  ZVec normal;
  Rational bound;

  bool operator==(const Inequality& o) const { return normal == o.normal && bound == o.bound; }
  bool operator<(const Inequality& o) const {
    if (normal != o.normal) return normal < o.normal;
    return bound < o.bound;
  }
};

/// Rational polyhedron Q + σ with Q a polytope and σ its recession cone.
///
/// The polyhedron is stored through its homogenization
///   cone{(v, 1) : v vertex} + cone{(r, 0) : r recession ray} + lineality,
/// which is canonical, so equality of polyhedra is equality of these cones.
/// When the recession cone has lineality, `vertices()` lists one point per
/// minimal face, chosen orthogonal to the lineality space.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron from_generators(std::size_t dim, const std::vector<QVec>& points,
                                    const std::vector<QVec>& rays = {},
                                    const std::vector<QVec>& lineality = {}) {
    if (points.empty()) throw Error(ErrorCode::EmptyPolyhedron, "polyhedron needs at least one point");
    std::vector<QVec> gens, lin;
    for (const auto& p : points) gens.push_back(homogenize(p, dim, 1));
    for (const auto& r : rays) gens.push_back(homogenize(r, dim, 0));
    for (const auto& l : lineality) lin.push_back(homogenize(l, dim, 0));
    return from_homogenization(dim, Cone::from_generators(dim + 1, gens, lin));
  }

  static Polyhedron from_generators(std::size_t dim, const std::vector<QVec>& points,
                                    const Cone& recession) {
    std::vector<QVec> rays, lin;
    for (const auto& r : recession.rays()) rays.push_back(to_q(r));
    for (const auto& l : recession.lineality()) lin.push_back(to_q(l));
    return from_generators(dim, points, rays, lin);
  }

  /// Intersection of {<a, x> >= b} and {<a, x> == b}.
  static Polyhedron from_inequalities(std::size_t dim, const std::vector<QVec>& normals,
                                      const std::vector<Rational>& bounds,
                                      const std::vector<QVec>& eq_normals = {},
                                      const std::vector<Rational>& eq_bounds = {}) {
    std::vector<QVec> ineq, eqs;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if (normals[i].size() != dim) throw Error(ErrorCode::RankMismatch, "inequality has wrong rank");
      QVec h = normals[i];
      h.push_back(-bounds[i]);
      ineq.push_back(std::move(h));
    }
    for (std::size_t i = 0; i < eq_normals.size(); ++i) {
      QVec h = eq_normals[i];
      h.push_back(-eq_bounds[i]);
      eqs.push_back(std::move(h));
    }
    QVec t(dim + 1, 0);
    t[dim] = 1;
    ineq.push_back(t);
    Cone c = Cone::from_inequalities(dim + 1, ineq, eqs);
    return from_homogenization(dim, c);
  }

  static Polyhedron from_inequalities(std::size_t dim, const std::vector<Inequality>& ineqs) {
    std::vector<QVec> normals;
    std::vector<Rational> bounds;
    for (const auto& in : ineqs) {
      normals.push_back(to_q(in.normal));
      bounds.push_back(in.bound);
    }
    return from_inequalities(dim, normals, bounds);
  }

  /// The cone itself viewed as a polyhedron (neutral element for Minkowski sums).
  static Polyhedron from_cone(const Cone& c) {
    return from_generators(c.ambient_rank(), {QVec(c.ambient_rank(), 0)}, c);
  }

  /// Rebuilds a polyhedron from the cone over it; throws EmptyPolyhedron when the
  /// cone lies in the hyperplane at infinity.
  static Polyhedron from_homogenization(std::size_t dim, const Cone& c) {
    Polyhedron p;
    p.dim_ = dim;
    p.homog_ = c;
    std::vector<QVec> rec_rays, rec_lin;
    for (const auto& r : c.rays()) {
      if (r[dim] > 0) {
        QVec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = Rational(static_cast<long>(r[i]), static_cast<long>(r[dim]));
        for (auto& x : v) x.canonicalize();
        p.vertices_.push_back(std::move(v));
      } else if (r[dim] == 0) {
        rec_rays.push_back(to_q(ZVec(r.begin(), r.end() - 1)));
      } else {
        throw Error(ErrorCode::Internal, "homogenization leaves the half-space t >= 0");
      }
    }
    for (const auto& l : c.lineality()) {
      if (l[dim] != 0) throw Error(ErrorCode::Internal, "lineality crosses t = 0");
      rec_lin.push_back(to_q(ZVec(l.begin(), l.end() - 1)));
    }
    if (p.vertices_.empty()) throw Error(ErrorCode::EmptyPolyhedron, "polyhedron is empty");
    std::sort(p.vertices_.begin(), p.vertices_.end());
    p.recession_ = Cone::from_generators(dim, rec_rays, rec_lin);
    return p;
  }

  std::size_t ambient_rank() const { return dim_; }
  const std::vector<QVec>& vertices() const { return vertices_; }
  const Cone& recession() const { return recession_; }
  /// Cone generated by (P, 1) and (recession, 0).
  const Cone& homogenization() const { return homog_; }

  std::vector<Inequality> inequalities() const {
    std::vector<Inequality> out;
    for (const auto& f : homog_.facets()) {
      ZVec a(f.begin(), f.end() - 1);
      if (is_zero(a)) continue;
      out.push_back({a, Rational(-static_cast<long>(f[dim_]))});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Inequality> equations() const {
    std::vector<Inequality> out;
    for (const auto& e : homog_.equations()) {
      ZVec a(e.begin(), e.end() - 1);
      out.push_back({a, Rational(-static_cast<long>(e[dim_]))});
    }
    return out;
  }

  bool contains(const QVec& x) const {
    QVec h = x;
    h.push_back(1);
    return homog_.contains(h);
  }

  bool contains(const ZVec& x) const {
    auto pair = [&](const ZVec& f) {
      Integer s = f[dim_];
      for (std::size_t i = 0; i < dim_; ++i) s += f[i] * x[i];
      return s;
    };
    for (const auto& e : homog_.equations()) {
      if (pair(e) != 0) return false;
    }
    for (const auto& f : homog_.facets()) {
      if (pair(f) < 0) return false;
    }
    return true;
  }

  bool bounded() const { return recession_.is_zero_cone(); }

  bool is_integral() const {
    return std::all_of(vertices_.begin(), vertices_.end(), [](const QVec& v) { return tvar::is_integral(v); });
  }

  bool operator==(const Polyhedron& o) const { return dim_ == o.dim_ && homog_ == o.homog_; }
  bool operator!=(const Polyhedron& o) const { return !(*this == o); }

 private:
  static QVec homogenize(const QVec& v, std::size_t dim, long t) {
    if (v.size() != dim) throw Error(ErrorCode::RankMismatch, "vector has wrong ambient rank");
    QVec h = v;
    h.emplace_back(t);
    return h;
  }

  std::size_t dim_ = 0;
  Cone homog_;
  std::vector<QVec> vertices_;
  Cone recession_;
};

/// min over the polyhedron of <m, .>; requires m in the dual of the recession cone.
inline Rational support_function(const Polyhedron& p, const QVec& m) {
  if (!p.recession().dual().contains(m)) {
    throw Error(ErrorCode::Unbounded, "weight is outside the dual of the recession cone");
  }
  Rational best = dot(m, p.vertices().front());
  for (const auto& v : p.vertices()) {
    Rational s = dot(m, v);
    if (s < best) best = s;
  }
  return best;
}

inline Rational support_function(const Polyhedron& p, const ZVec& m) {
  return support_function(p, to_q(m));
}

inline Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.ambient_rank() != b.ambient_rank()) {
    throw Error(ErrorCode::RankMismatch, "Minkowski sum of polyhedra of different rank");
  }
  std::vector<QVec> pts;
  for (const auto& u : a.vertices()) {
    for (const auto& v : b.vertices()) pts.push_back(add(u, v));
  }
  Cone rec = a.recession() + b.recession();
  return Polyhedron::from_generators(a.ambient_rank(), pts, rec);
}

inline Polyhedron operator+(const Polyhedron& a, const Polyhedron& b) { return minkowski_sum(a, b); }

/// The polyhedron cut out by `ineqs`, which must have recession cone exactly `sigma`.
inline Polyhedron polyhedron_from_inequalities(const std::vector<Inequality>& ineqs, const Cone& sigma) {
  Polyhedron p = Polyhedron::from_inequalities(sigma.ambient_rank(), ineqs);
  if (p.recession() != sigma) {
    throw Error(ErrorCode::RecessionMismatch, "region does not have the prescribed recession cone");
  }
  return p;
}

/// e-fold Minkowski sum; e = 0 gives the recession cone.
inline Polyhedron dilate(const Polyhedron& p, long e) {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative dilation factor");
  if (e == 0) return Polyhedron::from_cone(p.recession());
  std::vector<QVec> pts;
  for (const auto& v : p.vertices()) pts.push_back(scale(v, Rational(e)));
  return Polyhedron::from_generators(p.ambient_rank(), pts, p.recession());
}

inline Polyhedron translate(const Polyhedron& p, const QVec& shift) {
  std::vector<QVec> pts;
  for (const auto& v : p.vertices()) pts.push_back(add(v, shift));
  return Polyhedron::from_generators(p.ambient_rank(), pts, p.recession());
}

inline bool polyhedra_equal(const Polyhedron& a, const Polyhedron& b) { return a == b; }

}  // namespace tvar
