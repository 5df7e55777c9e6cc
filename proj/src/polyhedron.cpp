#include "setrisk/polyhedron.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <functional>
#include <map>
#include <utility>

#include "setrisk/error.hpp"
#include "setrisk/linalg.hpp"

namespace setrisk {

bool Halfspace::satisfied_by(std::span<const Rational> point) const {
  Rational lhs = dot(normal, point);
  return strict ? lhs > offset : lhs >= offset;
}

Halfspace Halfspace::complement() const { return {negated(normal), -offset, !strict}; }

int compare(const Halfspace& a, const Halfspace& b) {
  if (int c = compare(a.normal, b.normal); c != 0) return c;
  if (int c = cmp(a.offset, b.offset); c != 0) return c < 0 ? -1 : 1;
  if (a.strict != b.strict) return a.strict ? 1 : -1;
  return 0;
}

bool operator==(const Halfspace& a, const Halfspace& b) { return compare(a, b) == 0; }

int compare(const Polyhedron& a, const Polyhedron& b) {
  const auto& ha = a.halfspaces();
  const auto& hb = b.halfspaces();
  for (std::size_t i = 0; i < ha.size() && i < hb.size(); ++i) {
    if (int c = compare(ha[i], hb[i]); c != 0) return c;
  }
  if (ha.size() != hb.size()) return ha.size() < hb.size() ? -1 : 1;
  return 0;
}

namespace {

struct Row {
  Vec a;
  Rational b;
  bool strict = false;
  boost::dynamic_bitset<> history;
};

struct VecLess {
  bool operator()(const Vec& x, const Vec& y) const { return compare(x, y) < 0; }
};

// Outcome of a constant row 0 >= b (or 0 > b).
bool constant_row_holds(const Rational& b, bool strict) {
  return strict ? sgn(b) < 0 : sgn(b) <= 0;
}

// Tighter of two rows with identical normals.
bool tighter(const Row& x, const Row& y) {
  if (int c = cmp(x.b, y.b); c != 0) return c > 0;
  return x.strict && !y.strict;
}

// Normalizes, merges rows with equal normals, and drops satisfied constant
// rows. Returns false if some constant row is violated.
bool tidy(std::vector<Row>& rows) {
  std::map<Vec, Row, VecLess> best;
  for (auto& r : rows) {
    if (is_zero(r.a)) {
      if (!constant_row_holds(r.b, r.strict)) return false;
      continue;
    }
    make_primitive(r.a, r.b);
    auto it = best.find(r.a);
    if (it == best.end()) {
      best.emplace(r.a, std::move(r));
    } else if (tighter(r, it->second)) {
      it->second = std::move(r);
    }
  }
  rows.clear();
  for (auto& [key, r] : best) rows.push_back(std::move(r));
  return true;
}

// One Fourier-Motzkin step on `var`. `eliminated` counts variables removed so
// far in this run including `var` (Chernikov bound: history size <= eliminated + 1).
bool fm_step(std::vector<Row>& rows, std::size_t var, std::size_t eliminated) {
  std::vector<Row> pos, neg, out;
  for (auto& r : rows) {
    int s = sgn(r.a[var]);
    if (s > 0) pos.push_back(std::move(r));
    else if (s < 0) neg.push_back(std::move(r));
    else out.push_back(std::move(r));
  }
  for (const auto& p : pos) {
    for (const auto& n : neg) {
      auto history = p.history | n.history;
      if (history.count() > eliminated + 1) continue;
      Rational fp = -n.a[var];
      Rational fn = p.a[var];
      Row c;
      c.a.resize(p.a.size());
      for (std::size_t j = 0; j < p.a.size(); ++j) c.a[j] = p.a[j] * fp + n.a[j] * fn;
      c.a[var] = 0;
      c.b = p.b * fp + n.b * fn;
      c.strict = p.strict || n.strict;
      c.history = std::move(history);
      out.push_back(std::move(c));
    }
  }
  rows = std::move(out);
  return tidy(rows);
}

// Bound check when every row involves only `var`.
bool single_variable_feasible(const std::vector<Row>& rows, std::size_t var) {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
  for (const auto& r : rows) {
    Rational bound = r.b / r.a[var];
    if (sgn(r.a[var]) > 0) {
      if (!lo || bound > *lo) {
        lo = bound;
        lo_strict = r.strict;
      } else if (bound == *lo) {
        lo_strict = lo_strict || r.strict;
      }
    } else {
      if (!hi || bound < *hi) {
        hi = bound;
        hi_strict = r.strict;
      } else if (bound == *hi) {
        hi_strict = hi_strict || r.strict;
      }
    }
  }
  if (!lo || !hi) return true;
  if (*lo < *hi) return true;
  return *lo == *hi && !lo_strict && !hi_strict;
}

std::vector<Row> to_rows(const std::vector<Halfspace>& hs) {
  std::vector<Row> rows;
  rows.reserve(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    boost::dynamic_bitset<> h(hs.size());
    h.set(i);
    rows.push_back({hs[i].normal, hs[i].offset, hs[i].strict, std::move(h)});
  }
  return rows;
}

std::size_t pair_count(const std::vector<Row>& rows, std::size_t var) {
  std::size_t p = 0, n = 0;
  for (const auto& r : rows) {
    int s = sgn(r.a[var]);
    if (s > 0) ++p;
    else if (s < 0) ++n;
  }
  return p * n;
}

// Eliminates the listed variables (cheapest first). Returns false if the
// system became visibly infeasible.
bool eliminate_rows(std::vector<Row>& rows, std::vector<std::size_t> vars) {
  if (!tidy(rows)) return false;
  std::size_t eliminated = 0;
  while (!vars.empty()) {
    auto best = std::min_element(vars.begin(), vars.end(), [&](std::size_t x, std::size_t y) {
      return pair_count(rows, x) < pair_count(rows, y);
    });
    std::size_t var = *best;
    vars.erase(best);
    ++eliminated;
    if (!fm_step(rows, var, eliminated)) return false;
  }
  return true;
}

}  // namespace

bool feasible(const std::vector<Halfspace>& hs, std::size_t dim) {
  auto rows = to_rows(hs);
  if (!tidy(rows)) return false;
  std::vector<std::size_t> vars;
  for (std::size_t j = 0; j < dim; ++j) vars.push_back(j);
  std::size_t eliminated = 0;
  while (!rows.empty()) {
    std::vector<std::size_t> live;
    for (auto j : vars) {
      if (std::any_of(rows.begin(), rows.end(), [&](const Row& r) { return sgn(r.a[j]) != 0; }))
        live.push_back(j);
    }
    if (live.size() == 1) return single_variable_feasible(rows, live.front());
    auto best = std::min_element(live.begin(), live.end(), [&](std::size_t x, std::size_t y) {
      return pair_count(rows, x) < pair_count(rows, y);
    });
    std::size_t var = *best;
    vars.erase(std::find(vars.begin(), vars.end(), var));
    ++eliminated;
    if (!fm_step(rows, var, eliminated)) return false;
  }
  return true;
}

namespace {

// A value inside the interval given by lo/hi (absent means unbounded).
Rational pick_value(const std::optional<Rational>& lo, bool lo_strict, const std::optional<Rational>& hi,
                    bool hi_strict) {
  auto allows = [&](const Rational& v) {
    if (lo && (v < *lo || (lo_strict && v == *lo))) return false;
    if (hi && (v > *hi || (hi_strict && v == *hi))) return false;
    return true;
  };
  if (allows(0)) return 0;
  if (lo && allows(*lo)) return *lo;
  if (hi && allows(*hi)) return *hi;
  if (!hi) return *lo + 1;
  if (!lo) return *hi - 1;
  return (*lo + *hi) / 2;
}

}  // namespace

std::optional<Vec> find_point(const std::vector<Halfspace>& hs, std::size_t dim) {
  std::vector<Halfspace> current = hs;
  Vec point = zeros(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    auto rows = to_rows(current);
    std::vector<std::size_t> later;
    for (std::size_t j = k + 1; j < dim; ++j) later.push_back(j);
    if (!eliminate_rows(rows, later)) return std::nullopt;
    std::optional<Rational> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& r : rows) {
      if (sgn(r.a[k]) == 0) {
        if (!constant_row_holds(r.b, r.strict)) return std::nullopt;
        continue;
      }
      Rational bound = r.b / r.a[k];
      if (sgn(r.a[k]) > 0) {
        if (!lo || bound > *lo || (bound == *lo && r.strict)) {
          lo = bound;
          lo_strict = r.strict;
        }
      } else if (!hi || bound < *hi || (bound == *hi && r.strict)) {
        hi = bound;
        hi_strict = r.strict;
      }
    }
    if (lo && hi && (*lo > *hi || (*lo == *hi && (lo_strict || hi_strict)))) return std::nullopt;
    point[k] = pick_value(lo, lo_strict, hi, hi_strict);
    for (auto& h : current) {
      h.offset -= h.normal[k] * point[k];
      h.normal[k] = 0;
    }
  }
  for (const auto& h : hs) {
    if (!h.satisfied_by(point)) return std::nullopt;
  }
  return point;
}

Polyhedron::Polyhedron(std::size_t dim, std::vector<Halfspace> halfspaces)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
  for (const auto& h : halfspaces_) {
    if (h.normal.size() != dim_)
      throw Error(ErrorKind::DimensionMismatch, "halfspace normal has wrong dimension");
  }
}

Polyhedron Polyhedron::empty_set(std::size_t dim) {
  return Polyhedron(dim, {Halfspace{zeros(dim), Rational(1), false}});
}

bool Polyhedron::has_strict() const {
  return std::any_of(halfspaces_.begin(), halfspaces_.end(),
                     [](const Halfspace& h) { return h.strict; });
}

bool Polyhedron::contains(std::span<const Rational> point) const {
  if (point.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const Halfspace& h) { return h.satisfied_by(point); });
}

bool Polyhedron::is_empty() const { return !feasible(halfspaces_, dim_); }

bool Polyhedron::is_full_dimensional() const {
  std::vector<Halfspace> open;
  for (const auto& h : halfspaces_) {
    if (is_zero(h.normal)) {
      if (!constant_row_holds(h.offset, h.strict)) return false;
      continue;
    }
    open.push_back(h.strictified());
  }
  return feasible(open, dim_);
}

bool Polyhedron::recedes_along(std::span<const Rational> dir) const {
  return std::all_of(halfspaces_.begin(), halfspaces_.end(),
                     [&](const Halfspace& h) { return sgn(dot(h.normal, dir)) >= 0; });
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "intersect");
  auto hs = halfspaces_;
  hs.insert(hs.end(), other.halfspaces_.begin(), other.halfspaces_.end());
  return Polyhedron(dim_, std::move(hs));
}

Polyhedron Polyhedron::with(Halfspace h) const {
  auto hs = halfspaces_;
  hs.push_back(std::move(h));
  return Polyhedron(dim_, std::move(hs));
}

Polyhedron Polyhedron::translated(std::span<const Rational> shift) const {
  auto hs = halfspaces_;
  for (auto& h : hs) h.offset += dot(h.normal, shift);
  return Polyhedron(dim_, std::move(hs));
}

Polyhedron Polyhedron::scaled(const Rational& t) const {
  if (sgn(t) <= 0) throw Error(ErrorKind::NegativeScale, "polyhedron scale must be positive");
  auto hs = halfspaces_;
  for (auto& h : hs) h.offset *= t;
  return Polyhedron(dim_, std::move(hs));
}

Polyhedron Polyhedron::canonical() const {
  std::vector<Halfspace> rows;
  for (auto h : halfspaces_) {
    if (is_zero(h.normal)) {
      if (!constant_row_holds(h.offset, h.strict)) return empty_set(dim_);
      continue;
    }
    make_primitive(h.normal, h.offset);
    rows.push_back(std::move(h));
  }
  // Merge rows with equal normals.
  std::sort(rows.begin(), rows.end(), [](const Halfspace& x, const Halfspace& y) {
    if (int c = compare(x.normal, y.normal); c != 0) return c < 0;
    if (int c = cmp(x.offset, y.offset); c != 0) return c > 0;
    return x.strict && !y.strict;
  });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const Halfspace& x, const Halfspace& y) { return x.normal == y.normal; }),
             rows.end());
  if (!feasible(rows, dim_)) return empty_set(dim_);

  std::vector<bool> keep(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Halfspace> test;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != i && keep[j]) test.push_back(rows[j]);
    }
    test.push_back(rows[i].complement());
    if (!feasible(test, dim_)) keep[i] = false;
  }
  std::vector<Halfspace> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep[i]) out.push_back(std::move(rows[i]));
  }
  std::sort(out.begin(), out.end(),
            [](const Halfspace& x, const Halfspace& y) { return compare(x, y) < 0; });
  return Polyhedron(dim_, std::move(out));
}

namespace {

void for_each_combination(std::size_t n, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void push_unique(std::vector<Vec>& list, Vec v) {
  if (std::none_of(list.begin(), list.end(), [&](const Vec& w) { return w == v; }))
    list.push_back(std::move(v));
}

}  // namespace

ConeGenerators cone_generators(const std::vector<Vec>& normals, std::size_t dim) {
  ConeGenerators out;
  std::vector<Vec> rows;
  for (auto n : normals) {
    if (is_zero(n)) continue;
    make_primitive(n);
    push_unique(rows, std::move(n));
  }
  out.lines = linalg::nullspace(rows, dim);
  if (out.lines.size() == dim) return out;

  const std::size_t need = dim - 1 - out.lines.size();
  for_each_combination(rows.size(), need, [&](const std::vector<std::size_t>& pick) {
    linalg::Matrix tight = out.lines;
    for (auto i : pick) tight.push_back(rows[i]);
    if (linalg::rank(tight, dim) != dim - 1) return;
    auto ns = linalg::nullspace(tight, dim);
    for (int sign : {1, -1}) {
      Vec r = sign > 0 ? ns.front() : negated(ns.front());
      bool ok = std::all_of(rows.begin(), rows.end(),
                            [&](const Vec& n) { return sgn(dot(n, r)) >= 0; });
      if (ok) push_unique(out.rays, std::move(r));
    }
  });
  std::sort(out.rays.begin(), out.rays.end(),
            [](const Vec& x, const Vec& y) { return compare(x, y) < 0; });
  return out;
}

Generators Polyhedron::generators() const {
  if (vrep_) return *vrep_;
  if (has_strict())
    throw Error(ErrorKind::StrictUnsupported, "V-representation requested for a strict system");
  Generators g;
  if (is_empty()) return g;
  // Homogenize: (u, s) with normal . u - offset * s >= 0 and s >= 0.
  std::vector<Vec> rows;
  for (const auto& h : halfspaces_) {
    Vec r = h.normal;
    r.push_back(-h.offset);
    rows.push_back(std::move(r));
  }
  Vec s_row = zeros(dim_ + 1);
  s_row[dim_] = 1;
  rows.push_back(s_row);
  auto cone = cone_generators(rows, dim_ + 1);
  for (const auto& l : cone.lines) {
    Vec dir(l.begin(), l.end() - 1);
    g.rays.push_back(dir);
    g.rays.push_back(negated(dir));
  }
  for (const auto& r : cone.rays) {
    const Rational& s = r.back();
    Vec head(r.begin(), r.end() - 1);
    if (sgn(s) > 0) {
      g.vertices.push_back(setrisk::scaled(head, Rational(1 / s)));
    } else {
      g.rays.push_back(std::move(head));
    }
  }
  std::sort(g.vertices.begin(), g.vertices.end(),
            [](const Vec& x, const Vec& y) { return compare(x, y) < 0; });
  return g;
}

Polyhedron convert_rep(const Polyhedron& p) {
  Polyhedron out = p;
  out.vrep_ = p.generators();
  return out;
}

Polyhedron Polyhedron::from_generators(std::size_t dim, const Generators& gens) {
  if (gens.vertices.empty()) return empty_set(dim);
  // Valid inequalities (a, beta) form the cone a . v >= beta, a . r >= 0.
  std::vector<Vec> rows;
  for (const auto& v : gens.vertices) {
    Vec r = v;
    r.push_back(-1);
    rows.push_back(std::move(r));
  }
  for (const auto& ray : gens.rays) {
    Vec r = ray;
    r.push_back(0);
    rows.push_back(std::move(r));
  }
  auto polar = cone_generators(rows, dim + 1);
  std::vector<Halfspace> hs;
  auto split = [&](const Vec& g) {
    return Halfspace{Vec(g.begin(), g.end() - 1), g.back(), false};
  };
  for (const auto& l : polar.lines) {
    hs.push_back(split(l));
    hs.push_back(split(negated(l)));
  }
  for (const auto& r : polar.rays) {
    auto h = split(r);
    if (is_zero(h.normal)) continue;
    hs.push_back(std::move(h));
  }
  return Polyhedron(dim, std::move(hs)).canonical();
}

Polyhedron eliminate(const Polyhedron& p, std::span<const std::size_t> drop) {
  const std::size_t dim = p.dim();
  std::vector<bool> dropped(dim, false);
  for (auto j : drop) {
    if (j >= dim) throw Error(ErrorKind::DimensionMismatch, "eliminate: index out of range");
    dropped[j] = true;
  }
  std::size_t out_dim = 0;
  for (std::size_t j = 0; j < dim; ++j) out_dim += dropped[j] ? 0 : 1;

  auto rows = to_rows(p.halfspaces());
  if (!eliminate_rows(rows, {drop.begin(), drop.end()})) return Polyhedron::empty_set(out_dim);
  std::vector<Halfspace> hs;
  for (auto& r : rows) {
    Vec a;
    for (std::size_t j = 0; j < dim; ++j) {
      if (!dropped[j]) a.push_back(r.a[j]);
    }
    hs.push_back({std::move(a), r.b, r.strict});
  }
  return Polyhedron(out_dim, std::move(hs)).canonical();
}

}  // namespace setrisk
