#pragma once

// Test-only oracles. These evaluate the defining predicates pointwise and
// never go through the polyhedral construction they are used to check.

#include <random>
#include <vector>

#include "setrisk/scenario.hpp"

namespace setrisk::testing {

inline Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline std::vector<Vec> grid(std::size_t dim, long lo, long hi, long den) {
  std::vector<Vec> pts{Vec{}};
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<Vec> next;
    for (const auto& p : pts) {
      for (long i = lo * den; i <= hi * den; ++i) {
        Vec v = p;
        v.push_back(q(i, den));
        next.push_back(std::move(v));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

inline bool in_cone(const std::vector<Vec>& normals, std::span<const Rational> y) {
  for (const auto& n : normals) {
    if (dot(n, y) < 0) return false;
  }
  return true;
}

inline bool in_neg_interior(const std::vector<Vec>& normals, std::span<const Rational> y) {
  for (const auto& n : normals) {
    if (dot(n, y) >= 0) return false;
  }
  return true;
}

/// Rows of x + Bc.
inline std::vector<Vec> shifted_rows(const Market& m, const RandomVector& x, const Vec& c) {
  Vec u = zeros(m.d());
  for (std::size_t k = 0; k < m.m(); ++k)
    for (std::size_t j = 0; j < m.d(); ++j) u[j] += c[k] * m.subspace.basis()[k][j];
  std::vector<Vec> out;
  for (std::size_t i = 0; i < x.n(); ++i) out.push_back(add(x.row(i), u));
  return out;
}

inline bool wc_predicate(const Market& m, const std::vector<Vec>& normals, const RandomVector& x,
                         const Vec& c) {
  for (const auto& r : shifted_rows(m, x, c)) {
    if (!in_cone(normals, r)) return false;
  }
  return true;
}

/// P(x + u not in K) <= level
inline bool var_strong_predicate(const Market& m, const std::vector<Vec>& normals,
                                 const RandomVector& x, const Vec& c, const Rational& level) {
  auto rows = shifted_rows(m, x, c);
  Rational bad = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!in_cone(normals, rows[i])) bad += m.space.prob(i);
  }
  return bad <= level;
}

/// P(x + u in -int K) <= level
inline bool var_weak_predicate(const Market& m, const std::vector<Vec>& normals,
                               const RandomVector& x, const Vec& c, const Rational& level) {
  auto rows = shifted_rows(m, x, c);
  Rational bad = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (in_neg_interior(normals, rows[i])) bad += m.space.prob(i);
  }
  return bad <= level;
}

inline RandomVector random_position(std::mt19937_64& rng, std::size_t n, std::size_t d, long bound = 4,
                                    long den = 2) {
  std::uniform_int_distribution<long> dist(-bound * den, bound * den);
  RandomVector x(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) x.at(i, j) = q(dist(rng), den);
  return x;
}

}  // namespace setrisk::testing
