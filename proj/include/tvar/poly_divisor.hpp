#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tvar/cone.hpp"
#include "tvar/curve.hpp"
#include "tvar/errors.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/rational.hpp"

namespace tvar {

/// Formal sum of sigma-polyhedra over the points of the curve. Coefficients equal
/// to sigma are never stored, so the stored keys are the support.
class PolyhedralDivisor {
 public:
  PolyhedralDivisor() = default;

  PolyhedralDivisor(CurveKind kind, Cone sigma) : kind_(kind), sigma_(std::move(sigma)) {
    if (!sigma_.pointed()) throw Error(ErrorCode::NotPointed, "tail cone of a polyhedral divisor must be pointed");
  }

  CurveKind kind() const { return kind_; }
  const Cone& sigma() const { return sigma_; }
  std::size_t rank() const { return sigma_.ambient_rank(); }
  const std::map<CurvePoint, Polyhedron>& coefficients() const { return coeffs_; }

  void set(const CurvePoint& z, const Polyhedron& delta) {
    if (z.infinite && kind_ == CurveKind::AffineLine) {
      throw Error(ErrorCode::InvalidArgument, "the affine line has no point at infinity");
    }
    if (delta.ambient_rank() != rank()) throw Error(ErrorCode::RankMismatch, "coefficient has wrong rank");
    if (delta.recession() != sigma_) {
      throw Error(ErrorCode::RecessionMismatch, "coefficient at " + z.str() + " does not have tail cone sigma");
    }
    if (delta == Polyhedron::from_cone(sigma_)) {
      coeffs_.erase(z);
    } else {
      coeffs_[z] = delta;
    }
  }

  Polyhedron at(const CurvePoint& z) const {
    auto it = coeffs_.find(z);
    return it == coeffs_.end() ? Polyhedron::from_cone(sigma_) : it->second;
  }

  std::vector<CurvePoint> support() const {
    std::vector<CurvePoint> out;
    for (const auto& [z, d] : coeffs_) out.push_back(z);
    return out;
  }

  bool operator==(const PolyhedralDivisor& o) const {
    return kind_ == o.kind_ && sigma_ == o.sigma_ && coeffs_ == o.coeffs_;
  }
  bool operator!=(const PolyhedralDivisor& o) const { return !(*this == o); }

 private:
  CurveKind kind_ = CurveKind::AffineLine;
  Cone sigma_;
  std::map<CurvePoint, Polyhedron> coeffs_;
};

/// f * chi^m
struct HomogeneousElement {
  RationalFunction function;
  ZVec weight;

  bool operator==(const HomogeneousElement& o) const { return function == o.function && weight == o.weight; }
};

/// D(m) = sum_z h_{Delta_z}(m) [z].
inline QDivisor evaluate(const PolyhedralDivisor& d, const QVec& m) {
  if (m.size() != d.rank()) throw Error(ErrorCode::RankMismatch, "weight has wrong rank");
  if (!d.sigma().dual().contains(m)) throw Error(ErrorCode::WeightOutsideCone, "weight is outside the dual of sigma");
  QDivisor out(d.kind());
  for (const auto& [z, delta] : d.coefficients()) out.set(z, support_function(delta, m));
  return out;
}

inline QDivisor evaluate(const PolyhedralDivisor& d, const ZVec& m) { return evaluate(d, to_q(m)); }

struct ProperCertificate {
  bool proper = true;
  /// Generators of the cones of the normal fan of sum_z Delta_z inside the
  /// dual of sigma, with deg D at each. deg D is linear on every such cone.
  std::vector<ZVec> test_weights;
  std::vector<Rational> test_degrees;
  /// Sum of the rays of the dual of sigma, a relative-interior point.
  ZVec interior_weight;
  Rational interior_degree;
  std::optional<ZVec> failing_weight;
  std::string note;
};

/// Properness. On the affine line there is no condition. On the projective line
/// deg D(m) = h_{Delta_tot}(m) with Delta_tot = sum_z Delta_z must be >= 0 on the
/// dual of sigma and vanish only on its boundary. Being concave, it is >= 0
/// everywhere iff it is on the generators of its linearity cones, and it is
/// positive on the whole relative interior iff it is at one interior point.
inline ProperCertificate is_proper(const PolyhedralDivisor& d) {
  ProperCertificate cert;
  if (d.kind() == CurveKind::AffineLine) {
    cert.note = "affine curve: no condition on the evaluations";
    return cert;
  }
  const std::size_t n = d.rank();
  const Cone dual = d.sigma().dual();
  Polyhedron total = Polyhedron::from_cone(d.sigma());
  for (const auto& [z, delta] : d.coefficients()) total = total + delta;

  std::vector<QVec> sigma_rays;
  for (const auto& r : d.sigma().rays()) sigma_rays.push_back(to_q(r));
  std::vector<ZVec> weights;
  for (const auto& v : total.vertices()) {
    std::vector<QVec> ineqs = sigma_rays;
    for (const auto& w : total.vertices()) {
      if (w != v) ineqs.push_back(sub(w, v));
    }
    Cone normal_cone = Cone::from_inequalities(n, ineqs);
    for (const auto& r : normal_cone.rays()) weights.push_back(r);
    for (const auto& l : normal_cone.lineality()) {
      weights.push_back(l);
      weights.push_back(negate(l));
    }
  }
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
  for (const auto& m : weights) {
    const Rational deg = support_function(total, m);
    cert.test_weights.push_back(m);
    cert.test_degrees.push_back(deg);
    if (deg < 0 && !cert.failing_weight) {
      cert.proper = false;
      cert.failing_weight = m;
    }
  }

  cert.interior_weight = ZVec(n, 0);
  for (const auto& r : dual.rays()) cert.interior_weight = add(cert.interior_weight, r);
  cert.interior_degree = support_function(total, cert.interior_weight);
  if (cert.proper && cert.interior_degree <= 0) {
    cert.proper = false;
    cert.failing_weight = cert.interior_weight;
  }
  cert.note = cert.proper ? "degree-0 evaluations lie on the boundary; on the projective line every degree-0 "
                            "Q-divisor has a principal multiple"
                          : "a weight with degree below the properness bound exists";
  return cert;
}

/// A[C, D] = sum over m in dual(sigma) of H^0(C, O(floor D(m))) chi^m, for proper D.
class MultigradedAlgebra {
 public:
  explicit MultigradedAlgebra(PolyhedralDivisor d) : divisor_(std::move(d)), cert_(is_proper(divisor_)) {
    if (!cert_.proper) throw Error(ErrorCode::ImproperDivisor, "polyhedral divisor is not proper");
    if (divisor_.kind() == CurveKind::ProjectiveLine && divisor_.sigma().is_zero_cone()) {
      throw Error(ErrorCode::Internal, "elliptic algebra with zero tail cone");
    }
  }

  const PolyhedralDivisor& divisor() const { return divisor_; }
  const ProperCertificate& certificate() const { return cert_; }

 private:
  PolyhedralDivisor divisor_;
  ProperCertificate cert_;
};

inline SectionSpace graded_piece(const MultigradedAlgebra& a, const ZVec& m) {
  return global_sections(floor_divisor(evaluate(a.divisor(), m)));
}

namespace detail {

// div(f) + D >= 0 at every point where either side can be nonzero.
inline bool is_section_of(const RationalFunction& f, const QDivisor& d) {
  for (const auto& [p, c] : d.coefficients()) {
    if (f.order_at(p) + c < 0) return false;
  }
  for (const auto& [a, e] : f.factors()) {
    if (e < 0 && e + d.at(CurvePoint::finite(a)) < 0) return false;
  }
  if (d.kind() == CurveKind::ProjectiveLine) {
    const CurvePoint inf = CurvePoint::infinity();
    if (f.order_at(inf) + d.at(inf) < 0) return false;
  }
  return true;
}

}  // namespace detail

inline bool contains_element(const MultigradedAlgebra& a, const HomogeneousElement& g) {
  if (g.weight.size() != a.divisor().rank()) return false;
  if (!a.divisor().sigma().dual().contains(g.weight)) return false;
  return detail::is_section_of(g.function, evaluate(a.divisor(), g.weight));
}

/// A_0 = k exactly when the curve is projective.
inline bool is_elliptic(const MultigradedAlgebra& a) { return a.divisor().kind() == CurveKind::ProjectiveLine; }

}  // namespace tvar
