#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "tvar/errors.hpp"
#include "tvar/rational.hpp"

namespace tvar {

enum class CurveKind { AffineLine, ProjectiveLine };

inline const char* to_string(CurveKind k) { return k == CurveKind::AffineLine ? "affine" : "projective"; }

/// A rational point of the line, or the point at infinity. Finite points sort
/// by value and infinity sorts last.
struct CurvePoint {
  bool infinite = false;
  Rational a = 0;

  static CurvePoint finite(const Rational& x) { return {false, x}; }
  static CurvePoint infinity() { return {true, 0}; }

  bool operator==(const CurvePoint& o) const { return infinite == o.infinite && (infinite || a == o.a); }
  bool operator<(const CurvePoint& o) const {
    if (infinite != o.infinite) return o.infinite;
    return !infinite && a < o.a;
  }

  std::string str() const { return infinite ? "inf" : to_string(a); }
};

inline CurvePoint parse_point(const std::string& s) {
  if (s == "inf" || s == "infinity") return CurvePoint::infinity();
  return CurvePoint::finite(parse_rational(s));
}

/// unit * prod (z - a)^e, with nonzero exponents.
class RationalFunction {
 public:
  RationalFunction() = default;

  static RationalFunction constant(const Rational& c) {
    if (c == 0) throw Error(ErrorCode::InvalidArgument, "zero is not a unit of k(z)");
    RationalFunction f;
    f.unit_ = c;
    f.unit_.canonicalize();
    return f;
  }

  /// (z - a)^e
  static RationalFunction linear(const Rational& a, long e = 1) {
    RationalFunction f;
    if (e != 0) f.factors_[a] = e;
    return f;
  }

  static RationalFunction from_factors(const Rational& unit, const std::map<Rational, long>& factors) {
    RationalFunction f = constant(unit);
    for (const auto& [a, e] : factors) {
      if (e != 0) f.factors_[a] = e;
    }
    return f;
  }

  const Rational& unit() const { return unit_; }
  const std::map<Rational, long>& factors() const { return factors_; }

  /// Difference of the numerator and denominator degrees.
  long degree() const {
    long d = 0;
    for (const auto& [a, e] : factors_) d += e;
    return d;
  }

  long order_at(const CurvePoint& p) const {
    if (p.infinite) return -degree();
    auto it = factors_.find(p.a);
    return it == factors_.end() ? 0 : it->second;
  }

  RationalFunction operator*(const RationalFunction& o) const {
    RationalFunction f = *this;
    f.unit_ *= o.unit_;
    for (const auto& [a, e] : o.factors_) {
      long& slot = f.factors_[a];
      slot += e;
      if (slot == 0) f.factors_.erase(a);
    }
    return f;
  }

  RationalFunction inverse() const {
    RationalFunction f;
    f.unit_ = 1 / unit_;
    for (const auto& [a, e] : factors_) f.factors_[a] = -e;
    return f;
  }

  RationalFunction operator/(const RationalFunction& o) const { return *this * o.inverse(); }

  RationalFunction pow(long k) const {
    if (k == 0) return RationalFunction();
    RationalFunction f;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), unit_.get_num_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    mpz_pow_ui(den.get_mpz_t(), unit_.get_den_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    f.unit_ = k > 0 ? Rational(num, den) : Rational(den, num);
    f.unit_.canonicalize();
    for (const auto& [a, e] : factors_) f.factors_[a] = e * k;
    return f;
  }

  /// A polynomial in z: no negative exponents.
  bool is_polynomial() const {
    for (const auto& [a, e] : factors_) {
      if (e < 0) return false;
    }
    return true;
  }

  bool operator==(const RationalFunction& o) const { return unit_ == o.unit_ && factors_ == o.factors_; }
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = to_string(unit_);
    for (const auto& [a, e] : factors_) {
      s += "*(z";
      if (a > 0) s += "-" + to_string(a);
      if (a < 0) s += "+" + to_string(Rational(-a));
      s += ")";
      if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
  }

 private:
  Rational unit_ = 1;
  std::map<Rational, long> factors_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.str(); }

inline long order_at(const RationalFunction& f, const CurvePoint& p) { return f.order_at(p); }

/// Finitely supported Q-divisor; zero coefficients are never stored.
class QDivisor {
 public:
  explicit QDivisor(CurveKind kind = CurveKind::AffineLine) : kind_(kind) {}

  CurveKind kind() const { return kind_; }
  const std::map<CurvePoint, Rational>& coefficients() const { return coeffs_; }

  Rational at(const CurvePoint& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void set(const CurvePoint& p, const Rational& c) {
    if (p.infinite && kind_ == CurveKind::AffineLine) {
      throw Error(ErrorCode::InvalidArgument, "the affine line has no point at infinity");
    }
    if (c == 0) {
      coeffs_.erase(p);
    } else {
      coeffs_[p] = c;
    }
  }

  void add(const CurvePoint& p, const Rational& c) { set(p, at(p) + c); }

  QDivisor operator+(const QDivisor& o) const {
    check_kind(o);
    QDivisor d = *this;
    for (const auto& [p, c] : o.coeffs_) d.add(p, c);
    return d;
  }

  QDivisor operator-() const {
    QDivisor d(kind_);
    for (const auto& [p, c] : coeffs_) d.coeffs_[p] = -c;
    return d;
  }

  QDivisor operator-(const QDivisor& o) const { return *this + (-o); }

  bool is_integral() const {
    for (const auto& [p, c] : coeffs_) {
      if (!is_integer(c)) return false;
    }
    return true;
  }

  bool is_effective() const {
    for (const auto& [p, c] : coeffs_) {
      if (c < 0) return false;
    }
    return true;
  }

  bool operator==(const QDivisor& o) const { return kind_ == o.kind_ && coeffs_ == o.coeffs_; }
  bool operator!=(const QDivisor& o) const { return !(*this == o); }

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [p, c] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += to_string(c) + "*[" + p.str() + "]";
    }
    return s;
  }

 private:
  void check_kind(const QDivisor& o) const {
    if (kind_ != o.kind_) throw Error(ErrorCode::InvalidArgument, "divisors on different curves");
  }

  CurveKind kind_;
  std::map<CurvePoint, Rational> coeffs_;
};

inline QDivisor principal_divisor(const RationalFunction& f, CurveKind kind) {
  QDivisor d(kind);
  for (const auto& [a, e] : f.factors()) d.set(CurvePoint::finite(a), Rational(e));
  if (kind == CurveKind::ProjectiveLine) d.set(CurvePoint::infinity(), Rational(-f.degree()));
  return d;
}

inline Rational degree(const QDivisor& d) {
  if (d.kind() == CurveKind::AffineLine) {
    throw Error(ErrorCode::DegreeOnAffineCurve, "degree is defined on the projective line only");
  }
  Rational s = 0;
  for (const auto& [p, c] : d.coefficients()) s += c;
  return s;
}

inline QDivisor floor_divisor(const QDivisor& d) {
  QDivisor out(d.kind());
  for (const auto& [p, c] : d.coefficients()) out.set(p, rat(floor_of(c)));
  return out;
}

/// H^0(C, O(D)) for an integral divisor D.
///
/// On the affine line this is the free k[z]-module generated by
/// g0 = prod (z - a)^(-D_a). On the projective line it is the span of
/// g0 * z^j for j = 0..deg D (empty when deg D < 0).
struct SectionSpace {
  CurveKind kind = CurveKind::AffineLine;
  QDivisor divisor;
  RationalFunction generator;
  std::vector<RationalFunction> basis;

  /// Whether f lies in the module (affine) or the span (projective): f / g0
  /// must be a polynomial, of degree at most deg D on the projective line.
  bool contains(const RationalFunction& f) const {
    RationalFunction h = f / generator;
    if (!h.is_polynomial()) return false;
    if (kind == CurveKind::AffineLine) return true;
    return !basis.empty() && h.degree() <= static_cast<long>(basis.size()) - 1;
  }

  bool empty() const { return basis.empty(); }
};

inline SectionSpace global_sections(const QDivisor& d) {
  if (!d.is_integral()) throw Error(ErrorCode::InvalidArgument, "global sections of a non-integral divisor");
  SectionSpace s;
  s.kind = d.kind();
  s.divisor = d;
  for (const auto& [p, c] : d.coefficients()) {
    if (!p.infinite) s.generator = s.generator * RationalFunction::linear(p.a, -to_integer(c.get_num()));
  }
  if (d.kind() == CurveKind::AffineLine) {
    s.basis.push_back(s.generator);
    return s;
  }
  const Rational deg = degree(d);
  for (long j = 0; j <= deg; ++j) s.basis.push_back(s.generator * RationalFunction::linear(0, j));
  return s;
}

}  // namespace tvar
