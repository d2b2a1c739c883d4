#pragma once

#include <random>
#include <string>
#include <vector>

#include "tvar/rational.hpp"

namespace tvar::test {

inline Rational q(const std::string& s) { return parse_rational(s); }

inline QVec qv(std::initializer_list<const char*> xs) {
  QVec v;
  for (const char* x : xs) v.push_back(parse_rational(x));
  return v;
}

inline QVec qv(std::initializer_list<int> xs) {
  QVec v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

/// Odometer over the integer box [lo, hi] (inclusive, coordinatewise).
template <class F>
void for_each_in_box(const ZVec& lo, const ZVec& hi, F&& f) {
  ZVec x = lo;
  const std::size_t n = lo.size();
  if (n == 0) {
    f(x);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (lo[i] > hi[i]) return;
  }
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < n) {
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = lo[i];
      ++i;
    }
    if (i == n) return;
  }
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

}  // namespace tvar::test
