#pragma once

// Double description method over Q. Converts a homogeneous inequality system
// {x : a . x >= 0} into generators (extreme rays modulo lineality plus a basis of
// the lineality space). Constraints are inserted one at a time; lineality is
// consumed first, and ray pairs are combined only when they pass the
// combinatorial adjacency test on the processed constraints.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "tvar/errors.hpp"
#include "tvar/rational.hpp"

namespace tvar::dd {

struct Generators {
  std::vector<QVec> rays;
  std::vector<QVec> lineality;
};

namespace detail {

inline QVec integral_scaled(const QVec& v) { return to_q(primitive(v)); }

// `inner` is a subset of `outer` (both sorted index lists).
inline bool subset_of(const std::vector<std::size_t>& inner,
                      const std::vector<std::size_t>& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

}  // namespace detail

inline Generators generators_of(std::size_t dim, const std::vector<QVec>& inequalities) {
  if (dim == 0) throw Error(ErrorCode::EmptyInput, "double description in rank 0");
  Generators g;
  for (std::size_t i = 0; i < dim; ++i) {
    QVec e(dim, 0);
    e[i] = 1;
    g.lineality.push_back(std::move(e));
  }
  std::vector<QVec> processed;

  for (const auto& a : inequalities) {
    if (a.size() != dim) throw Error(ErrorCode::RankMismatch, "inequality has wrong length");
    if (is_zero(a)) continue;

    // Lineality step: some lineality direction is cut by `a`.
    std::size_t pick = g.lineality.size();
    for (std::size_t i = 0; i < g.lineality.size(); ++i) {
      if (dot(a, g.lineality[i]) != 0) {
        pick = i;
        break;
      }
    }
    if (pick != g.lineality.size()) {
      QVec l = g.lineality[pick];
      Rational al = dot(a, l);
      if (al < 0) {
        l = negate(l);
        al = -al;
      }
      g.lineality.erase(g.lineality.begin() + static_cast<std::ptrdiff_t>(pick));
      for (auto& other : g.lineality) {
        const Rational c = dot(a, other) / al;
        if (c != 0) other = sub(other, scale(l, c));
      }
      for (auto& r : g.rays) {
        const Rational c = dot(a, r) / al;
        if (c != 0) r = detail::integral_scaled(sub(r, scale(l, c)));
      }
      g.rays.push_back(detail::integral_scaled(l));
      processed.push_back(a);
      continue;
    }

    // Ray step.
    std::vector<Rational> val(g.rays.size());
    bool any_negative = false;
    for (std::size_t i = 0; i < g.rays.size(); ++i) {
      val[i] = dot(a, g.rays[i]);
      if (val[i] < 0) any_negative = true;
    }
    if (!any_negative) {
      processed.push_back(a);
      continue;
    }

    std::vector<std::vector<std::size_t>> zeros(g.rays.size());
    for (std::size_t i = 0; i < g.rays.size(); ++i) {
      for (std::size_t k = 0; k < processed.size(); ++k) {
        if (dot(processed[k], g.rays[i]) == 0) zeros[i].push_back(k);
      }
    }

    std::vector<QVec> next;
    for (std::size_t i = 0; i < g.rays.size(); ++i) {
      if (val[i] >= 0) next.push_back(g.rays[i]);
    }
    for (std::size_t p = 0; p < g.rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t n = 0; n < g.rays.size(); ++n) {
        if (val[n] >= 0) continue;
        std::vector<std::size_t> common;
        std::set_intersection(zeros[p].begin(), zeros[p].end(), zeros[n].begin(),
                              zeros[n].end(), std::back_inserter(common));
        bool adjacent = true;
        for (std::size_t r = 0; r < g.rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (detail::subset_of(common, zeros[r])) adjacent = false;
        }
        if (!adjacent) continue;
        QVec combo = add(scale(g.rays[n], val[p]), scale(g.rays[p], Rational(-val[n])));
        next.push_back(detail::integral_scaled(combo));
      }
    }
    g.rays = std::move(next);
    processed.push_back(a);
  }

  for (auto& r : g.rays) r = detail::integral_scaled(r);
  std::sort(g.rays.begin(), g.rays.end());
  g.rays.erase(std::unique(g.rays.begin(), g.rays.end()), g.rays.end());
  return g;
}

}  // namespace tvar::dd
