#pragma once

// Exact scalars and vectors, plus the small amount of rational linear algebra
// the polyhedral kernel needs (rank, row echelon form, projections).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvar/errors.hpp"

namespace tvar {

using Rational = mpq_class;
using Integer = long long;

/// Point of N_Q or M_Q.
using QVec = std::vector<Rational>;
/// Point of the lattice N or M.
using ZVec = std::vector<Integer>;

inline Integer to_integer(const mpz_class& z) {
  if (!z.fits_slong_p()) {
    throw Error(ErrorCode::Internal, "integer coordinate overflows 64 bits");
  }
  return z.get_si();
}

inline Integer floor_of(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_integer(r);
}

inline Integer ceil_of(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return to_integer(r);
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational rat(Integer x) { return Rational(static_cast<long>(x)); }
inline Rational rat(Integer num, Integer den) {
  Rational q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return q;
}

inline QVec to_q(const ZVec& v) {
  QVec out;
  out.reserve(v.size());
  for (Integer x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

inline bool is_integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integer(q); });
}

/// Requires integral input.
inline ZVec to_z(const QVec& v) {
  ZVec out;
  out.reserve(v.size());
  for (const auto& q : v) {
    if (!is_integer(q)) throw Error(ErrorCode::Internal, "non-integral coordinate");
    out.push_back(to_integer(q.get_num()));
  }
  return out;
}

inline Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const ZVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

inline Integer dot(const ZVec& a, const ZVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

inline bool is_zero(const ZVec& v) {
  return std::all_of(v.begin(), v.end(), [](Integer x) { return x == 0; });
}

template <class V>
V add(const V& a, const V& b) {
  V out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class V>
V sub(const V& a, const V& b) {
  V out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class V, class S>
V scale(const V& a, const S& s) {
  V out(a);
  for (auto& x : out) x *= s;
  return out;
}

template <class V>
V negate(const V& a) {
  V out(a);
  for (auto& x : out) x = -x;
  return out;
}

/// Smallest positive rational multiple of `v` with coprime integer entries.
/// The zero vector maps to the zero vector.
inline ZVec primitive(const QVec& v) {
  mpz_class den = 1;
  for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> nums;
  nums.reserve(v.size());
  mpz_class g = 0;
  for (const auto& q : v) {
    mpz_class n = q.get_num() * (den / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    nums.push_back(n);
  }
  ZVec out(v.size(), 0);
  if (g == 0) return out;
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_integer(nums[i] / g);
  return out;
}

inline ZVec primitive(const ZVec& v) { return primitive(to_q(v)); }

/// Reduced row echelon form; zero rows removed.
inline std::vector<QVec> rref(std::vector<QVec> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

inline std::size_t rank_of(const std::vector<QVec>& rows) { return rref(rows).size(); }

inline std::size_t rank_of(const std::vector<ZVec>& rows) {
  std::vector<QVec> q;
  for (const auto& r : rows) q.push_back(to_q(r));
  return rank_of(q);
}

/// Basis of {x : row . x = 0 for every row}, `dim` = ambient dimension.
inline std::vector<QVec> kernel_basis(const std::vector<QVec>& rows, std::size_t dim) {
  auto e = rref(rows);
  std::vector<int> pivot_of_col(dim, -1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (e[i][c] != 0) {
        pivot_of_col[c] = static_cast<int>(i);
        break;
      }
    }
  }
  std::vector<QVec> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    QVec v(dim, 0);
    v[free] = 1;
    for (std::size_t c = 0; c < dim; ++c) {
      if (pivot_of_col[c] >= 0) v[c] = -e[pivot_of_col[c]][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Orthogonal projection of `v` onto the complement of span(`basis`).
inline QVec project_out(const QVec& v, const std::vector<QVec>& basis) {
  if (basis.empty()) return v;
  const std::size_t k = basis.size();
  // Solve (B B^T) c = B v, then v - B^T c.
  std::vector<QVec> aug(k, QVec(k + 1, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = dot(basis[i], basis[j]);
    aug[i][k] = dot(basis[i], v);
  }
  auto red = rref(aug);
  QVec out = v;
  for (const auto& row : red) {
    std::size_t c = 0;
    while (c < k && row[c] == 0) ++c;
    if (c == k) continue;
    for (std::size_t j = 0; j < v.size(); ++j) out[j] -= row[k] * basis[c][j];
  }
  return out;
}

/// Canonical integral basis of a linear subspace: primitive rows of its RREF.
inline std::vector<ZVec> canonical_subspace(const std::vector<QVec>& spanning) {
  std::vector<ZVec> out;
  for (const auto& row : rref(spanning)) out.push_back(primitive(row));
  return out;
}

/// Strict parser for "p", "-p", "p/q". Decimal points and exponents are rejected.
inline Rational parse_rational(const std::string& text) {
  static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(\s*/\s*([0-9]+))?\s*$)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw std::invalid_argument("malformed rational '" + text + "' (expected \"p\" or \"p/q\")");
  }
  mpz_class num(match[1].str());
  mpz_class den = 1;
  if (match[3].matched) den = mpz_class(match[3].str());
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const ZVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace tvar
