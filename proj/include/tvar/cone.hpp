#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "tvar/dd.hpp"
#include "tvar/errors.hpp"
#include "tvar/rational.hpp"

namespace tvar {

/// Rational polyhedral cone held in both representations.
///
/// Canonical form:
///  - `lineality`: primitive rows of the RREF of the lineality space;
///  - `rays`: primitive, orthogonal to the lineality space, sorted;
///  - `equations`: primitive rows of the RREF of span(cone)^perp;
///  - `facets`: primitive, lying in span(cone), sorted; inequalities <f, x> >= 0.
/// Two cones are equal iff their canonical forms coincide.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t dim, const std::vector<QVec>& rays,
                              const std::vector<QVec>& lineality = {}) {
    std::vector<QVec> as_ineq;
    for (const auto& r : rays) as_ineq.push_back(check_len(r, dim));
    for (const auto& l : lineality) {
      as_ineq.push_back(check_len(l, dim));
      as_ineq.push_back(negate(l));
    }
    // Facets of cone(G) are the extreme rays of its dual.
    auto dual = dd::generators_of(dim, as_ineq);
    return from_h(dim, dual.rays, dual.lineality);
  }

  static Cone from_generators(std::size_t dim, const std::vector<ZVec>& rays,
                              const std::vector<ZVec>& lineality = {}) {
    return from_generators(dim, lift(rays), lift(lineality));
  }

  static Cone from_inequalities(std::size_t dim, const std::vector<QVec>& inequalities,
                                const std::vector<QVec>& equations = {}) {
    std::vector<QVec> all;
    for (const auto& a : inequalities) all.push_back(check_len(a, dim));
    for (const auto& e : equations) {
      all.push_back(check_len(e, dim));
      all.push_back(negate(e));
    }
    auto gens = dd::generators_of(dim, all);
    return from_v(dim, gens.rays, gens.lineality);
  }

  static Cone from_inequalities(std::size_t dim, const std::vector<ZVec>& inequalities,
                                const std::vector<ZVec>& equations = {}) {
    return from_inequalities(dim, lift(inequalities), lift(equations));
  }

  static Cone whole_space(std::size_t dim) { return from_inequalities(dim, std::vector<QVec>{}); }

  static Cone zero(std::size_t dim) { return from_generators(dim, std::vector<QVec>{}); }

  static Cone orthant(std::size_t dim) {
    std::vector<ZVec> rays;
    for (std::size_t i = 0; i < dim; ++i) {
      ZVec e(dim, 0);
      e[i] = 1;
      rays.push_back(e);
    }
    return from_generators(dim, rays);
  }

  std::size_t ambient_rank() const { return dim_; }
  const std::vector<ZVec>& rays() const { return rays_; }
  const std::vector<ZVec>& lineality() const { return lineality_; }
  const std::vector<ZVec>& facets() const { return facets_; }
  const std::vector<ZVec>& equations() const { return equations_; }

  bool pointed() const { return lineality_.empty(); }
  bool full_dimensional() const { return equations_.empty(); }
  std::size_t dimension() const { return dim_ - equations_.size(); }
  bool is_zero_cone() const { return rays_.empty() && lineality_.empty(); }

  bool contains(const QVec& x) const {
    for (const auto& e : equations_) {
      if (dot(e, x) != 0) return false;
    }
    for (const auto& f : facets_) {
      if (dot(f, x) < 0) return false;
    }
    return true;
  }

  bool contains(const ZVec& x) const {
    for (const auto& e : equations_) {
      if (dot(e, x) != 0) return false;
    }
    for (const auto& f : facets_) {
      if (dot(f, x) < 0) return false;
    }
    return true;
  }

  /// x lies in the relative interior.
  bool relative_interior_contains(const QVec& x) const {
    if (!contains(x)) return false;
    for (const auto& f : facets_) {
      if (dot(f, x) == 0) return false;
    }
    return true;
  }

  /// {m : <m, v> >= 0 for all v in the cone}. With canonical forms this is a swap
  /// of the two representations.
  Cone dual() const {
    Cone d;
    d.dim_ = dim_;
    d.rays_ = facets_;
    d.lineality_ = equations_;
    d.facets_ = rays_;
    d.equations_ = lineality_;
    return d;
  }

  /// Cone generated by both operands.
  Cone operator+(const Cone& other) const {
    std::vector<ZVec> r = rays_, l = lineality_;
    r.insert(r.end(), other.rays_.begin(), other.rays_.end());
    l.insert(l.end(), other.lineality_.begin(), other.lineality_.end());
    return from_generators(dim_, r, l);
  }

  Cone intersect(const Cone& other) const {
    std::vector<ZVec> f = facets_, e = equations_;
    f.insert(f.end(), other.facets_.begin(), other.facets_.end());
    e.insert(e.end(), other.equations_.begin(), other.equations_.end());
    return from_inequalities(dim_, f, e);
  }

  bool operator==(const Cone& o) const {
    return dim_ == o.dim_ && rays_ == o.rays_ && lineality_ == o.lineality_ &&
           facets_ == o.facets_ && equations_ == o.equations_;
  }
  bool operator!=(const Cone& o) const { return !(*this == o); }

 private:
  static QVec check_len(const QVec& v, std::size_t dim) {
    if (v.size() != dim) throw Error(ErrorCode::RankMismatch, "vector has wrong ambient rank");
    return v;
  }

  static std::vector<QVec> lift(const std::vector<ZVec>& vs) {
    std::vector<QVec> out;
    for (const auto& v : vs) out.push_back(to_q(v));
    return out;
  }

  // Irredundant V-representation given; derive canonical H via the dual.
  static Cone from_v(std::size_t dim, const std::vector<QVec>& rays,
                     const std::vector<QVec>& lineality) {
    std::vector<QVec> as_ineq = rays;
    for (const auto& l : lineality) {
      as_ineq.push_back(l);
      as_ineq.push_back(negate(l));
    }
    auto dual = dd::generators_of(dim, as_ineq);
    Cone c;
    c.dim_ = dim;
    c.set_v(rays, lineality);
    c.set_h(dual.rays, dual.lineality);
    return c;
  }

  // Irredundant H-representation given (as the dual's generators).
  static Cone from_h(std::size_t dim, const std::vector<QVec>& facets,
                     const std::vector<QVec>& equations) {
    std::vector<QVec> all = facets;
    for (const auto& e : equations) {
      all.push_back(e);
      all.push_back(negate(e));
    }
    auto gens = dd::generators_of(dim, all);
    Cone c;
    c.dim_ = dim;
    c.set_v(gens.rays, gens.lineality);
    c.set_h(facets, equations);
    return c;
  }

  static std::vector<ZVec> canonical_rays(const std::vector<QVec>& rays,
                                          const std::vector<ZVec>& subspace) {
    std::vector<QVec> basis = lift(subspace);
    std::vector<ZVec> out;
    for (const auto& r : rays) {
      ZVec p = primitive(project_out(r, basis));
      if (!is_zero(p)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void set_v(const std::vector<QVec>& rays, const std::vector<QVec>& lineality) {
    lineality_ = canonical_subspace(lineality);
    rays_ = canonical_rays(rays, lineality_);
  }

  void set_h(const std::vector<QVec>& facets, const std::vector<QVec>& equations) {
    equations_ = canonical_subspace(equations);
    facets_ = canonical_rays(facets, equations_);
  }

  std::size_t dim_ = 0;
  std::vector<ZVec> rays_;
  std::vector<ZVec> lineality_;
  std::vector<ZVec> facets_;
  std::vector<ZVec> equations_;
};

/// Input to the converter: either generators or inequalities.
struct ConeInput {
  enum class Kind { Rays, Inequalities } kind;
  std::size_t dim;
  std::vector<QVec> vectors;
};

/// Builds both representations from whichever one is supplied.
inline Cone dd_convert(const ConeInput& in) {
  return in.kind == ConeInput::Kind::Rays ? Cone::from_generators(in.dim, in.vectors)
                                          : Cone::from_inequalities(in.dim, in.vectors);
}

inline Cone dual_cone(const Cone& c) { return c.dual(); }

}  // namespace tvar
