#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "setrisk/measures.hpp"

namespace setrisk {

enum class MeasureLaw {
  R1,
  R2,
  R3,
  R4,
  R5,
  R6,
  R6equiv_shrink,
  R6equiv_tgeq1,
  subadditive,
  lemma_KM_in_R0,
  convex_implies_star,
  sub_star_implies_ph,
};

enum class AcceptanceLaw { A1_translate, A2, A3, A4, A5, A6, A6equiv };

enum class Correspondence { R_eq_RAR, A_eq_ARA, transfer };

/// Throw Error{UnknownLaw} / Error{UnknownDirection} on unknown names.
MeasureLaw parse_measure_law(std::string_view name);
AcceptanceLaw parse_acceptance_law(std::string_view name);
Correspondence parse_correspondence(std::string_view name);
std::string_view to_string(MeasureLaw law);
std::string_view to_string(AcceptanceLaw law);
std::string_view to_string(Correspondence c);
const std::vector<MeasureLaw>& all_measure_laws();
const std::vector<AcceptanceLaw>& all_acceptance_laws();

struct SampleBudget {
  std::size_t count = 200;
  std::uint64_t seed = 0;
  /// Sampled entries are multiples of 1/2 in [-magnitude, magnitude].
  Rational magnitude = 4;
};

/// The inputs of one failed relation. `law` names the elementary check that
/// failed (for compound laws this is the inner check). For set inclusions,
/// `point` lies in the left-hand side and outside the right-hand side; for
/// equalities it lies in exactly one side; for R3 it lies either in K & M
/// outside R(0) or in R(0) and -int(K & M). Portfolios u and points are in
/// M-coordinates.
struct Witness {
  std::string law;
  std::string relation;
  std::optional<RandomVector> x, y, k;
  std::optional<Vec> u;
  std::optional<Rational> t, t2;
  std::optional<Vec> point;
};

struct LawReport {
  std::string law;
  bool pass = true;
  std::size_t samples = 0;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  std::optional<Witness> witness;
  /// Set when a hypothesis did not hold and the implication passed vacuously.
  std::string note;
};

using Subject = std::variant<MeasureExpr, AccExpr>;

LawReport check_measure_law(const Market& market, const MeasureExpr& r, MeasureLaw law,
                            const SampleBudget& budget);
LawReport check_acceptance_law(const Market& market, const AccExpr& a, AcceptanceLaw law,
                               const SampleBudget& budget);

/// Measures are paired with A_R and acceptance sets with R_A, so every
/// direction applies to either kind of subject.
LawReport check_correspondence(const Market& market, const Subject& subject, Correspondence direction,
                               const SampleBudget& budget);

/// b must be a subset of A, and tX + (1 - t)b must stay in A. Throws
/// Error{EmptyBaseSet}.
LawReport check_star_at(const Market& market, const AccExpr& a, const std::vector<RandomVector>& b,
                        const SampleBudget& budget);

/// Sampled x in A must have esssup x (a constant position) in A.
LawReport check_esssup(const Market& market, const AccExpr& a, const SampleBudget& budget);

/// Re-evaluates both sides of the witnessed relation; true iff the violation
/// (including the witness point, when present) is reproduced exactly.
bool reverify(const Market& market, const Subject& subject, const Witness& witness);

/// Seeded sampler of positions, eligible portfolios and scalars.
class Sampler {
 public:
  Sampler(const Market& market, const SampleBudget& budget);

  std::uint64_t below(std::uint64_t bound);
  bool coin(std::uint64_t one_in = 2) { return below(one_in) == 0; }
  Rational scalar();
  /// Either arbitrary, or of the form k - Bc with k scenario-wise in K, so
  /// that measures built from WC tend to have nonempty values.
  RandomVector position();
  /// Scenario-wise in K.
  RandomVector cone_position();
  /// Random M-coordinates.
  Vec eligible();
  /// In K & M (M-coordinates).
  Vec recession_point();
  /// In -int(K & M) (M-coordinates).
  Vec neg_interior_point();
  /// Dyadic in (0, 1).
  Rational unit_dyadic();
  /// Dyadic in (1, 9).
  Rational above_one();
  /// 2^k with -3 <= k <= 3.
  Rational power_of_two();
  /// A point of a nonempty upper set: a vertex of a piece plus a few rays.
  Vec point_of(const UpperSet& set);
  /// A position accepted by a, or none after a bounded number of attempts.
  std::optional<RandomVector> accepted(const AccExpr& a);

 private:
  const Market& market_;
  std::mt19937_64 rng_;
  Rational magnitude_;
};

/// Constant position Bu for M-coordinates u.
RandomVector eligible_position(const Market& market, const Vec& u);

}  // namespace setrisk
