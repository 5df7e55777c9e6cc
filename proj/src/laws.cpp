#include "setrisk/laws.hpp"

#include <array>
#include <functional>

#include "setrisk/error.hpp"

namespace setrisk {

namespace {

constexpr std::array<std::pair<MeasureLaw, std::string_view>, 12> kMeasureLaws{{
    {MeasureLaw::R1, "R1"},
    {MeasureLaw::R2, "R2"},
    {MeasureLaw::R3, "R3"},
    {MeasureLaw::R4, "R4"},
    {MeasureLaw::R5, "R5"},
    {MeasureLaw::R6, "R6"},
    {MeasureLaw::R6equiv_shrink, "R6equiv_shrink"},
    {MeasureLaw::R6equiv_tgeq1, "R6equiv_tgeq1"},
    {MeasureLaw::subadditive, "subadditive"},
    {MeasureLaw::lemma_KM_in_R0, "lemma_KM_in_R0"},
    {MeasureLaw::convex_implies_star, "convex_implies_star"},
    {MeasureLaw::sub_star_implies_ph, "sub_star_implies_ph"},
}};

constexpr std::array<std::pair<AcceptanceLaw, std::string_view>, 7> kAcceptanceLaws{{
    {AcceptanceLaw::A1_translate, "A1_translate"},
    {AcceptanceLaw::A2, "A2"},
    {AcceptanceLaw::A3, "A3"},
    {AcceptanceLaw::A4, "A4"},
    {AcceptanceLaw::A5, "A5"},
    {AcceptanceLaw::A6, "A6"},
    {AcceptanceLaw::A6equiv, "A6equiv"},
}};

constexpr std::array<std::pair<Correspondence, std::string_view>, 3> kCorrespondences{{
    {Correspondence::R_eq_RAR, "R_eq_RAR"},
    {Correspondence::A_eq_ARA, "A_eq_ARA"},
    {Correspondence::transfer, "transfer"},
}};

template <class Table>
auto lookup(const Table& table, std::string_view name, ErrorKind kind, const char* what) {
  for (const auto& [value, label] : table) {
    if (label == name) return value;
  }
  throw Error(kind, std::string("unknown ") + what + ": " + std::string(name));
}

template <class Table, class Value>
std::string_view label_of(const Table& table, Value v) {
  for (const auto& [value, label] : table) {
    if (value == v) return label;
  }
  return "?";
}

struct Outcome {
  bool violated = false;
  std::string relation;
  std::optional<Vec> point;
};

Outcome inclusion(std::string relation, const UpperSet& lhs, const UpperSet& rhs) {
  auto p = inclusion_witness(rhs, lhs);
  return {p.has_value(), std::move(relation), std::move(p)};
}

Outcome equality(std::string relation, const UpperSet& lhs, const UpperSet& rhs) {
  auto p = inclusion_witness(rhs, lhs);
  if (!p) p = inclusion_witness(lhs, rhs);
  return {p.has_value(), std::move(relation), std::move(p)};
}

Outcome membership(bool violated, std::string relation) { return {violated, std::move(relation), std::nullopt}; }

const RandomVector& need(const std::optional<RandomVector>& v, const char* name) {
  if (!v) throw Error(ErrorKind::MalformedDocument, std::string("witness lacks ") + name);
  return *v;
}
const Vec& need(const std::optional<Vec>& v, const char* name) {
  if (!v) throw Error(ErrorKind::MalformedDocument, std::string("witness lacks ") + name);
  return *v;
}
const Rational& need(const std::optional<Rational>& v, const char* name) {
  if (!v) throw Error(ErrorKind::MalformedDocument, std::string("witness lacks ") + name);
  return *v;
}

bool in_neg_interior(const Market& market, const Vec& u) {
  for (const auto& n : market.recession().normals) {
    if (dot(n, u) >= 0) return false;
  }
  return true;
}

Outcome km_in_r0(const Market& market, const MeasureExpr& r) {
  auto r0 = eval_measure(market, r, RandomVector(market.n(), market.d()));
  return inclusion("K&M ⊆ R(0)", UpperSet::of_cone(market.recession()), r0);
}

// Evaluates one elementary measure relation on the inputs held by w.
Outcome measure_relation(const Market& market, const MeasureExpr& r, const Witness& w) {
  auto R = [&](const RandomVector& x) { return eval_measure(market, r, x); };
  const auto& law = w.law;
  if (law == "R1") {
    const auto& x = need(w.x, "x");
    const auto& u = need(w.u, "u");
    return equality("R(x + u) = R(x) - u", R(x + eligible_position(market, u)), R(x).translated(negated(u)));
  }
  if (law == "R2") {
    const auto& x = need(w.x, "x");
    return inclusion("R(x) ⊆ R(x + k)", R(x), R(x + need(w.k, "k")));
  }
  if (law == "R3") {
    auto half = km_in_r0(market, r);
    if (half.violated) return half;
    auto r0 = eval_measure(market, r, RandomVector(market.n(), market.d()));
    for (const auto& piece : r0.pieces()) {
      auto rows = piece.halfspaces();
      for (auto& h : market.cone_in_m.neg_interior()) rows.push_back(h);
      if (auto p = find_point(rows, market.m())) return {true, "R(0) ∩ -int(K&M) = ∅", p};
    }
    return {};
  }
  if (law == "lemma_KM_in_R0") return km_in_r0(market, r);
  if (law == "R4") {
    const auto& x = need(w.x, "x");
    const auto& y = need(w.y, "y");
    const auto& t = need(w.t, "t");
    auto lhs = minkowski_add(scale(R(x), t), scale(R(y), 1 - t));
    return inclusion("t R(x) + (1-t) R(y) ⊆ R(t x + (1-t) y)", lhs, R(t * x + (1 - t) * y));
  }
  if (law == "R5") {
    const auto& x = need(w.x, "x");
    const auto& t = need(w.t, "t");
    return equality("t R(x) = R(t x)", scale(R(x), t), R(t * x));
  }
  if (law == "R6") {
    const auto& x = need(w.x, "x");
    const auto& t = need(w.t, "t");
    return inclusion("t R(x) ⊆ R(t x)", scale(R(x), t), R(t * x));
  }
  if (law == "R6equiv_tgeq1") {
    const auto& x = need(w.x, "x");
    const auto& t = need(w.t, "t");
    return inclusion("R(t x) ⊆ t R(x)", R(t * x), scale(R(x), t));
  }
  if (law == "R6equiv_shrink") {
    const auto& x = need(w.x, "x");
    const auto& b1 = need(w.t, "t");
    const auto& b2 = need(w.t2, "t2");
    return inclusion("R(t x)/t ⊆ R(t2 x)/t2", scale(R(b1 * x), 1 / b1), scale(R(b2 * x), 1 / b2));
  }
  if (law == "subadditive") {
    const auto& x = need(w.x, "x");
    const auto& y = need(w.y, "y");
    return inclusion("R(x) + R(y) ⊆ R(x + y)", minkowski_add(R(x), R(y)), R(x + y));
  }
  if (law == "R_eq_RAR") {
    const auto& x = need(w.x, "x");
    const auto& u = need(w.u, "u");
    bool lhs = R(x).contains(u);
    bool rhs = accepts(market, of_measure(r), x + eligible_position(market, u));
    return membership(lhs != rhs, "u ∈ R(x) ⟺ x + u ∈ A_R");
  }
  throw Error(ErrorKind::UnknownLaw, "not a measure relation: " + law);
}

Outcome acceptance_relation(const Market& market, const AccExpr& a, const Witness& w) {
  auto in = [&](const RandomVector& x) { return accepts(market, a, x); };
  const auto& law = w.law;
  if (law == "A1_translate") {
    const auto& x = need(w.x, "x");
    const auto& u = need(w.u, "u");
    bool premise = market.recession().contains(u) && in(x);
    return membership(premise && !in(x + eligible_position(market, u)), "x ∈ A, u ∈ K&M ⟹ x + u ∈ A");
  }
  if (law == "A2") {
    const auto& x = need(w.x, "x");
    const auto& k = need(w.k, "k");
    bool premise = in(x);
    for (std::size_t i = 0; i < k.n(); ++i) premise = premise && market.cone.contains(k.row(i));
    return membership(premise && !in(x + k), "x ∈ A, k ∈ L(K) ⟹ x + k ∈ A");
  }
  if (law == "A3") {
    const auto& u = need(w.u, "u");
    bool accepted = in(eligible_position(market, u));
    if (market.recession().contains(u) && !accepted) return membership(true, "u ∈ K&M ⟹ u ∈ A");
    if (in_neg_interior(market, u) && accepted) return membership(true, "u ∈ -int(K&M) ⟹ u ∉ A");
    return {};
  }
  if (law == "A4") {
    const auto& x = need(w.x, "x");
    const auto& y = need(w.y, "y");
    const auto& t = need(w.t, "t");
    return membership(in(x) && in(y) && !in(t * x + (1 - t) * y), "x, y ∈ A ⟹ t x + (1-t) y ∈ A");
  }
  if (law == "A5" || law == "A6") {
    const auto& x = need(w.x, "x");
    const auto& t = need(w.t, "t");
    return membership(in(x) && !in(t * x), "x ∈ A ⟹ t x ∈ A");
  }
  if (law == "A6equiv") {
    const auto& x = need(w.x, "x");
    const auto& t = need(w.t, "t");
    return membership(in(x) && !in(Rational(1 / t) * x), "A ⊆ t A");
  }
  if (law == "A_eq_ARA") {
    const auto& x = need(w.x, "x");
    bool lhs = in(x);
    bool rhs = eval_acceptance(market, a, x).contains(zeros(market.m()));
    return membership(lhs != rhs, "x ∈ A ⟺ 0 ∈ R_A(x)");
  }
  if (law == "esssup") {
    const auto& x = need(w.x, "x");
    auto sup = RandomVector::constant(market.n(), componentwise_sup(x));
    return membership(in(x) && !in(sup), "x ∈ A ⟹ esssup x ∈ A");
  }
  if (law == "star_at_base") return membership(!in(need(w.y, "y")), "b ∈ A");
  if (law == "star_at") {
    const auto& x = need(w.x, "x");
    const auto& b = need(w.y, "y");
    const auto& t = need(w.t, "t");
    return membership(in(x) && !in(t * x + (1 - t) * b), "x ∈ A ⟹ t x + (1-t) b ∈ A");
  }
  throw Error(ErrorKind::UnknownLaw, "not an acceptance relation: " + law);
}

bool is_measure_relation(std::string_view law) { return !law.empty() && (law[0] == 'R' || law == "subadditive" || law == "lemma_KM_in_R0"); }

MeasureExpr as_measure(const Subject& s) {
  if (auto* r = std::get_if<MeasureExpr>(&s)) return *r;
  return of_acceptance(std::get<AccExpr>(s));
}

AccExpr as_acceptance(const Subject& s) {
  if (auto* a = std::get_if<AccExpr>(&s)) return *a;
  return of_measure(std::get<MeasureExpr>(s));
}

Outcome relation(const Market& market, const Subject& subject, const Witness& w) {
  if (is_measure_relation(w.law)) return measure_relation(market, as_measure(subject), w);
  return acceptance_relation(market, as_acceptance(subject), w);
}

// Runs `draw` (which fills the inputs of a witness) count times and stops at
// the first violation.
LawReport sample_loop(const Market& market, const Subject& subject, std::string law, const SampleBudget& budget,
                      std::size_t count, const std::function<std::optional<Witness>(Sampler&)>& draw) {
  LawReport report;
  report.law = std::move(law);
  report.budget = budget.count;
  report.seed = budget.seed;
  Sampler sampler(market, budget);
  for (std::size_t i = 0; i < count; ++i) {
    auto w = draw(sampler);
    ++report.samples;
    if (!w) continue;
    auto out = relation(market, subject, *w);
    if (out.violated) {
      w->relation = std::move(out.relation);
      w->point = std::move(out.point);
      report.pass = false;
      report.witness = std::move(*w);
      break;
    }
  }
  return report;
}

Witness with_law(std::string law) {
  Witness w;
  w.law = std::move(law);
  return w;
}

LawReport elementary_measure_law(const Market& market, const MeasureExpr& r, MeasureLaw law,
                                 const SampleBudget& budget) {
  std::string name(to_string(law));
  const Subject subject = r;
  switch (law) {
    case MeasureLaw::R1:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        w.u = s.eligible();
        return std::optional(w);
      });
    case MeasureLaw::R2:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        w.k = s.cone_position();
        return std::optional(w);
      });
    case MeasureLaw::R3:
    case MeasureLaw::lemma_KM_in_R0:
      return sample_loop(market, subject, name, budget, 1, [&](Sampler&) { return std::optional(with_law(name)); });
    case MeasureLaw::R4:
    case MeasureLaw::subadditive:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        // y = x exposes nonconvex values directly.
        w.y = s.coin(4) ? *w.x : s.position();
        if (law == MeasureLaw::R4) w.t = s.coin() ? Rational(1, 2) : s.unit_dyadic();
        return std::optional(w);
      });
    case MeasureLaw::R5:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        w.t = s.coin() ? s.unit_dyadic() : s.above_one();
        return std::optional(w);
      });
    case MeasureLaw::R6:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        w.t = s.unit_dyadic();
        return std::optional(w);
      });
    case MeasureLaw::R6equiv_tgeq1:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        w.t = s.above_one();
        return std::optional(w);
      });
    case MeasureLaw::R6equiv_shrink:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        Rational b1 = s.power_of_two() * (1 + s.unit_dyadic());
        Rational b2 = b1 * s.unit_dyadic();
        w.t = b1;
        w.t2 = b2;
        return std::optional(w);
      });
    default:
      break;
  }
  throw Error(ErrorKind::UnknownLaw, "compound law");
}

LawReport vacuous(std::string law, const SampleBudget& budget, std::size_t samples, std::string note) {
  LawReport report;
  report.law = std::move(law);
  report.budget = budget.count;
  report.seed = budget.seed;
  report.samples = samples;
  report.note = std::move(note);
  return report;
}

LawReport renamed(LawReport inner, std::string law, std::size_t extra_samples) {
  inner.law = std::move(law);
  inner.samples += extra_samples;
  return inner;
}

}  // namespace

MeasureLaw parse_measure_law(std::string_view name) {
  return lookup(kMeasureLaws, name, ErrorKind::UnknownLaw, "measure law");
}
AcceptanceLaw parse_acceptance_law(std::string_view name) {
  return lookup(kAcceptanceLaws, name, ErrorKind::UnknownLaw, "acceptance law");
}
Correspondence parse_correspondence(std::string_view name) {
  return lookup(kCorrespondences, name, ErrorKind::UnknownDirection, "correspondence direction");
}
std::string_view to_string(MeasureLaw law) { return label_of(kMeasureLaws, law); }
std::string_view to_string(AcceptanceLaw law) { return label_of(kAcceptanceLaws, law); }
std::string_view to_string(Correspondence c) { return label_of(kCorrespondences, c); }

const std::vector<MeasureLaw>& all_measure_laws() {
  static const std::vector<MeasureLaw> laws = [] {
    std::vector<MeasureLaw> out;
    for (const auto& [law, label] : kMeasureLaws) out.push_back(law);
    return out;
  }();
  return laws;
}

const std::vector<AcceptanceLaw>& all_acceptance_laws() {
  static const std::vector<AcceptanceLaw> laws = [] {
    std::vector<AcceptanceLaw> out;
    for (const auto& [law, label] : kAcceptanceLaws) out.push_back(law);
    return out;
  }();
  return laws;
}

RandomVector eligible_position(const Market& market, const Vec& u) {
  return RandomVector::constant(market.n(), market.subspace.from_m(u));
}

Sampler::Sampler(const Market& market, const SampleBudget& budget)
    : market_(market), rng_(budget.seed), magnitude_(budget.magnitude) {
  if (budget.count == 0) throw Error(ErrorKind::MalformedDocument, "sample budget must be positive");
  if (magnitude_ < 0) throw Error(ErrorKind::MalformedDocument, "sample magnitude must be nonnegative");
}

// Plain modulo keeps the stream identical across standard libraries.
std::uint64_t Sampler::below(std::uint64_t bound) { return bound <= 1 ? 0 : rng_() % bound; }

Rational Sampler::scalar() {
  mpz_class top(Rational(magnitude_ * 2));  // truncates toward zero
  long half_steps = top.get_si();
  long v = static_cast<long>(below(static_cast<std::uint64_t>(2 * half_steps + 1))) - half_steps;
  Rational out(v, 2);
  out.canonicalize();
  return out;
}

RandomVector Sampler::cone_position() {
  const auto& rays = market_.cone.cone.rays;
  RandomVector k(market_.n(), market_.d());
  for (std::size_t i = 0; i < market_.n(); ++i) {
    Vec row = zeros(market_.d());
    for (const auto& g : rays) {
      if (coin()) continue;
      Rational c(static_cast<long>(below(5)), 2);
      c.canonicalize();
      row = add(row, scaled(g, c));
    }
    for (std::size_t j = 0; j < row.size(); ++j) k.at(i, j) = row[j];
  }
  return k;
}

Vec Sampler::eligible() {
  Vec u(market_.m());
  for (auto& v : u) v = scalar();
  return u;
}

RandomVector Sampler::position() {
  if (coin()) {
    RandomVector x(market_.n(), market_.d());
    for (std::size_t i = 0; i < x.n(); ++i)
      for (std::size_t j = 0; j < x.d(); ++j) x.at(i, j) = scalar();
    return x;
  }
  return cone_position() - eligible_position(market_, eligible());
}

Vec Sampler::recession_point() {
  Vec u = zeros(market_.m());
  for (const auto& g : market_.recession().rays) {
    Rational c(static_cast<long>(below(5)), 2);
    c.canonicalize();
    u = add(u, scaled(g, c));
  }
  return u;
}

Vec Sampler::neg_interior_point() {
  Vec u = market_.recession().interior_point();
  Rational c(static_cast<long>(1 + below(4)), 2);
  c.canonicalize();
  return negated(add(scaled(u, c), recession_point()));
}

Rational Sampler::unit_dyadic() {
  long j = 1 + static_cast<long>(below(4));
  long den = 1L << j;
  long num = 1 + static_cast<long>(below(static_cast<std::uint64_t>(den - 1)));
  Rational t(num, den);
  t.canonicalize();
  return t;
}

Rational Sampler::above_one() {
  Rational t = 1 + unit_dyadic() + static_cast<long>(below(8));
  return t;
}

Rational Sampler::power_of_two() {
  int k = static_cast<int>(below(7)) - 3;
  Rational t = 1;
  for (int i = 0; i < k; ++i) t *= 2;
  for (int i = 0; i > k; --i) t /= 2;
  return t;
}

Vec Sampler::point_of(const UpperSet& set) {
  const auto& pieces = set.pieces();
  const auto& piece = pieces[below(pieces.size())];
  auto gens = piece.generators();
  Vec p;
  if (gens.vertices.empty()) {
    p = *find_point(piece.halfspaces(), piece.dim());
  } else {
    p = gens.vertices[below(gens.vertices.size())];
  }
  for (const auto& r : gens.rays) {
    if (coin(3)) p = add(p, scaled(r, Rational(static_cast<long>(1 + below(2)))));
  }
  return p;
}

std::optional<RandomVector> Sampler::accepted(const AccExpr& a) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    auto x = position();
    auto value = eval_acceptance(market_, a, x);
    if (value.is_empty()) continue;
    auto shifted = x + eligible_position(market_, point_of(value));
    if (accepts(market_, a, shifted)) return shifted;
  }
  return std::nullopt;
}

LawReport check_measure_law(const Market& market, const MeasureExpr& r, MeasureLaw law,
                            const SampleBudget& budget) {
  std::string name(to_string(law));
  switch (law) {
    case MeasureLaw::lemma_KM_in_R0: {
      auto star = elementary_measure_law(market, r, MeasureLaw::R6, budget);
      if (!star.pass) return vacuous(name, budget, star.samples, "hypothesis R6 fails at this budget");
      return renamed(elementary_measure_law(market, r, law, budget), name, star.samples);
    }
    case MeasureLaw::convex_implies_star: {
      auto convex = elementary_measure_law(market, r, MeasureLaw::R4, budget);
      if (!convex.pass) return vacuous(name, budget, convex.samples, "hypothesis R4 fails at this budget");
      bool zero_in = eval_measure(market, r, RandomVector(market.n(), market.d())).contains(zeros(market.m()));
      if (!zero_in) return vacuous(name, budget, convex.samples, "hypothesis 0 ∈ R(0) fails");
      return renamed(elementary_measure_law(market, r, MeasureLaw::R6, budget), name, convex.samples);
    }
    case MeasureLaw::sub_star_implies_ph: {
      auto sub = elementary_measure_law(market, r, MeasureLaw::subadditive, budget);
      if (!sub.pass) return vacuous(name, budget, sub.samples, "hypothesis subadditive fails at this budget");
      auto star = elementary_measure_law(market, r, MeasureLaw::R6, budget);
      if (!star.pass)
        return vacuous(name, budget, sub.samples + star.samples, "hypothesis R6 fails at this budget");
      auto ph = sample_loop(market, r, "R5", budget, budget.count, [&](Sampler& s) {
        auto w = with_law("R5");
        w.x = s.position();
        w.t = s.power_of_two();
        return std::optional(w);
      });
      return renamed(std::move(ph), name, sub.samples + star.samples);
    }
    default:
      return elementary_measure_law(market, r, law, budget);
  }
}

LawReport check_acceptance_law(const Market& market, const AccExpr& a, AcceptanceLaw law,
                               const SampleBudget& budget) {
  std::string name(to_string(law));
  const Subject subject = a;
  auto accepted_then = [&](auto&& fill) {
    return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) -> std::optional<Witness> {
      auto x = s.accepted(a);
      if (!x) return std::nullopt;
      auto w = with_law(name);
      w.x = std::move(x);
      fill(s, w);
      return w;
    });
  };
  switch (law) {
    case AcceptanceLaw::A1_translate:
      return accepted_then([](Sampler& s, Witness& w) { w.u = s.recession_point(); });
    case AcceptanceLaw::A2:
      return accepted_then([](Sampler& s, Witness& w) { w.k = s.cone_position(); });
    case AcceptanceLaw::A3:
      return sample_loop(market, subject, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.u = s.coin() ? s.recession_point() : s.neg_interior_point();
        return std::optional(w);
      });
    case AcceptanceLaw::A4:
      return accepted_then([&](Sampler& s, Witness& w) {
        auto y = s.coin(4) ? std::optional(*w.x) : s.accepted(a);
        w.y = y ? *y : *w.x;
        w.t = s.coin() ? Rational(1, 2) : s.unit_dyadic();
      });
    case AcceptanceLaw::A5:
      return accepted_then([](Sampler& s, Witness& w) {
        w.t = s.coin() ? s.unit_dyadic() : (s.coin(4) ? Rational(0) : s.above_one());
      });
    case AcceptanceLaw::A6:
      return accepted_then([](Sampler& s, Witness& w) { w.t = s.coin(8) ? Rational(0) : s.unit_dyadic(); });
    case AcceptanceLaw::A6equiv:
      return accepted_then([](Sampler& s, Witness& w) { w.t = s.above_one(); });
  }
  throw Error(ErrorKind::UnknownLaw, "unknown acceptance law");
}

LawReport check_correspondence(const Market& market, const Subject& subject, Correspondence direction,
                               const SampleBudget& budget) {
  std::string name(to_string(direction));
  switch (direction) {
    case Correspondence::R_eq_RAR: {
      auto r = as_measure(subject);
      return sample_loop(market, r, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        w.x = s.position();
        auto value = eval_measure(market, r, *w.x);
        // Boundary points of the value are the informative ones.
        w.u = (!value.is_empty() && s.coin()) ? s.point_of(value) : s.eligible();
        return std::optional(w);
      });
    }
    case Correspondence::A_eq_ARA: {
      auto a = as_acceptance(subject);
      return sample_loop(market, a, name, budget, budget.count, [&](Sampler& s) {
        auto w = with_law(name);
        auto x = s.coin() ? s.accepted(a) : std::nullopt;
        w.x = x ? *x : s.position();
        return std::optional(w);
      });
    }
    case Correspondence::transfer: {
      auto a = as_acceptance(subject);
      auto r = of_acceptance(a);
      std::size_t used = 0;
      std::vector<std::string> notes;
      auto convex = check_acceptance_law(market, a, AcceptanceLaw::A4, budget);
      used += convex.samples;
      if (convex.pass) {
        auto r4 = elementary_measure_law(market, r, MeasureLaw::R4, budget);
        if (!r4.pass) return renamed(std::move(r4), name, used);
        used += r4.samples;
      } else {
        notes.push_back("A4 fails, convexity transfer vacuous");
      }
      auto star = check_acceptance_law(market, a, AcceptanceLaw::A6, budget);
      used += star.samples;
      if (star.pass) {
        auto r6 = elementary_measure_law(market, r, MeasureLaw::R6, budget);
        if (!r6.pass) return renamed(std::move(r6), name, used);
        used += r6.samples;
      } else {
        notes.push_back("A6 fails, star-shapedness transfer vacuous");
      }
      std::string note;
      for (const auto& n : notes) note += (note.empty() ? "" : "; ") + n;
      return vacuous(name, budget, used, note);
    }
  }
  throw Error(ErrorKind::UnknownDirection, "unknown correspondence direction");
}

LawReport check_star_at(const Market& market, const AccExpr& a, const std::vector<RandomVector>& b,
                        const SampleBudget& budget) {
  if (b.empty()) throw Error(ErrorKind::EmptyBaseSet, "star-shapedness needs a nonempty base set");
  for (const auto& y : b) require_shape(market, y);
  const Subject subject = a;
  LawReport report;
  report.law = "star_at";
  report.budget = budget.count;
  report.seed = budget.seed;
  for (const auto& y : b) {
    ++report.samples;
    auto w = with_law("star_at_base");
    w.y = y;
    auto out = acceptance_relation(market, a, w);
    if (out.violated) {
      w.relation = out.relation;
      report.pass = false;
      report.witness = std::move(w);
      return report;
    }
  }
  auto sampled = sample_loop(market, subject, "star_at", budget, budget.count,
                             [&](Sampler& s) -> std::optional<Witness> {
                               auto x = s.accepted(a);
                               if (!x) return std::nullopt;
                               auto w = with_law("star_at");
                               w.x = std::move(x);
                               w.y = b[s.below(b.size())];
                               w.t = s.unit_dyadic();
                               return w;
                             });
  sampled.samples += report.samples;
  return sampled;
}

LawReport check_esssup(const Market& market, const AccExpr& a, const SampleBudget& budget) {
  return sample_loop(market, a, "esssup", budget, budget.count, [&](Sampler& s) -> std::optional<Witness> {
    auto x = s.accepted(a);
    if (!x) return std::nullopt;
    auto w = with_law("esssup");
    w.x = std::move(x);
    return w;
  });
}

bool reverify(const Market& market, const Subject& subject, const Witness& witness) {
  auto out = relation(market, subject, witness);
  if (!out.violated) return false;
  return !witness.point || out.point == witness.point;
}

}  // namespace setrisk
