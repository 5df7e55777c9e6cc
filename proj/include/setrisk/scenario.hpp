#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "setrisk/cones.hpp"
#include "setrisk/rational.hpp"

namespace setrisk {

/// Finite probability space with strictly positive weights summing to one.
class ScenarioSpace {
 public:
  ScenarioSpace() = default;
  /// Throws Error{ProbabilitySum}.
  explicit ScenarioSpace(Vec probs);

  std::size_t n() const { return probs_.size(); }
  const Vec& probs() const { return probs_; }
  const Rational& prob(std::size_t i) const { return probs_[i]; }

 private:
  Vec probs_;
};

/// n x d matrix of payoffs; row i is the position in scenario i.
class RandomVector {
 public:
  RandomVector() = default;
  RandomVector(std::size_t n, std::size_t d);
  /// Throws Error{ShapeMismatch} on ragged rows.
  explicit RandomVector(const std::vector<Vec>& rows);
  static RandomVector constant(std::size_t n, std::span<const Rational> value);

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }
  std::span<const Rational> row(std::size_t i) const { return {values_.data() + i * d_, d_}; }
  std::span<Rational> row(std::size_t i) { return {values_.data() + i * d_, d_}; }
  Rational& at(std::size_t i, std::size_t j) { return values_[i * d_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return values_[i * d_ + j]; }
  std::vector<Vec> rows() const;

  friend RandomVector operator+(const RandomVector& a, const RandomVector& b);
  friend RandomVector operator-(const RandomVector& a, const RandomVector& b);
  friend RandomVector operator*(const Rational& t, const RandomVector& a);
  friend bool operator==(const RandomVector& a, const RandomVector& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.values_ == b.values_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  Vec values_;
};

using PortfolioVector = Vec;

/// Scenario space, solvency cone, and eligible subspace with K & M precomputed.
struct Market {
  ScenarioSpace space;
  SolvencyCone cone;
  EligibleSubspace subspace;
  ConeInM cone_in_m;

  std::size_t n() const { return space.n(); }
  std::size_t d() const { return cone.dim(); }
  std::size_t m() const { return subspace.m(); }
  const PolyhedralCone& recession() const { return cone_in_m.cone; }
};

/// Validates the standing assumptions (orthant in K, int(K & M) nonempty).
Market make_market(ScenarioSpace space, SolvencyCone cone, EligibleSubspace subspace);

/// Parses the JSON market document. Errors: ProbabilitySum, OrthantNotContained,
/// EmptyInterior, MalformedDocument.
Market load_market(std::string_view document);
/// Parses {"rows": [[...], ...]}.
RandomVector load_position(std::string_view document);

void require_shape(const Market& market, const RandomVector& x);

/// x - y has every row in K.
bool dominates(const Market& market, const RandomVector& x, const RandomVector& y);

/// t * x + u in every scenario.
RandomVector translate_and_scale(const RandomVector& x, const Rational& t,
                                 std::span<const Rational> u);

/// Componentwise maximum over scenarios.
PortfolioVector componentwise_sup(const RandomVector& x);

}  // namespace setrisk
