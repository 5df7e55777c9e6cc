#include "setrisk/scenario.hpp"

#include <algorithm>

#include "json.hpp"
#include "setrisk/error.hpp"
#include "setrisk/io.hpp"

namespace setrisk {

ScenarioSpace::ScenarioSpace(Vec probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorKind::ProbabilitySum, "no scenarios");
  Rational total = 0;
  for (const auto& p : probs_) {
    if (sgn(p) <= 0) throw Error(ErrorKind::ProbabilitySum, "probabilities must be positive");
    total += p;
  }
  if (total != 1)
    throw Error(ErrorKind::ProbabilitySum, "probabilities sum to " + to_string(total) + ", not 1");
}

RandomVector::RandomVector(std::size_t n, std::size_t d) : n_(n), d_(d), values_(n * d, Rational(0)) {}

RandomVector::RandomVector(const std::vector<Vec>& rows) {
  n_ = rows.size();
  d_ = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != d_) throw Error(ErrorKind::ShapeMismatch, "ragged position rows");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

RandomVector RandomVector::constant(std::size_t n, std::span<const Rational> value) {
  RandomVector x(n, value.size());
  for (std::size_t i = 0; i < n; ++i) std::copy(value.begin(), value.end(), x.row(i).begin());
  return x;
}

std::vector<Vec> RandomVector::rows() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n_; ++i) out.emplace_back(row(i).begin(), row(i).end());
  return out;
}

namespace {

void same_shape(const RandomVector& a, const RandomVector& b) {
  if (a.n() != b.n() || a.d() != b.d())
    throw Error(ErrorKind::ShapeMismatch, "positions have different shapes");
}

}  // namespace

RandomVector operator+(const RandomVector& a, const RandomVector& b) {
  same_shape(a, b);
  RandomVector out = a;
  for (std::size_t k = 0; k < out.values_.size(); ++k) out.values_[k] += b.values_[k];
  return out;
}

RandomVector operator-(const RandomVector& a, const RandomVector& b) {
  same_shape(a, b);
  RandomVector out = a;
  for (std::size_t k = 0; k < out.values_.size(); ++k) out.values_[k] -= b.values_[k];
  return out;
}

RandomVector operator*(const Rational& t, const RandomVector& a) {
  RandomVector out = a;
  for (auto& v : out.values_) v *= t;
  return out;
}

Market make_market(ScenarioSpace space, SolvencyCone cone, EligibleSubspace subspace) {
  if (cone.dim() != subspace.d())
    throw Error(ErrorKind::MalformedDocument, "cone and subspace live in different dimensions");
  auto km = restrict_to_subspace(cone, subspace);
  return Market{std::move(space), std::move(cone), std::move(subspace), std::move(km)};
}

Market load_market(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedDocument, std::string("market document: ") + e.what());
  }
  try {
    const std::size_t d = doc.at("d").get<std::size_t>();
    if (d == 0) throw Error(ErrorKind::MalformedDocument, "d must be positive");
    ScenarioSpace space(io::rational_list(doc.at("probs")));

    const auto& cone_doc = doc.at("cone");
    SolvencyCone cone;
    if (cone_doc.contains("bidask")) {
      cone = bidask_cone(io::rational_matrix(cone_doc.at("bidask")));
    } else {
      cone = SolvencyCone::from_halfspaces(d, io::rational_matrix(cone_doc.at("halfspaces")));
    }
    if (cone.dim() != d) throw Error(ErrorKind::MalformedDocument, "cone dimension differs from d");

    const auto& sub_doc = doc.at("subspace");
    EligibleSubspace subspace;
    if (sub_doc.contains("coords")) {
      subspace = EligibleSubspace::coordinates(d, sub_doc.at("coords").get<std::vector<std::size_t>>());
    } else {
      subspace = EligibleSubspace(d, io::rational_matrix(sub_doc.at("basis")));
    }
    return make_market(std::move(space), std::move(cone), std::move(subspace));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, std::string("market document: ") + e.what());
  }
}

RandomVector load_position(std::string_view document) {
  using nlohmann::json;
  try {
    return io::position_from_json(json::parse(document));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedDocument, std::string("position document: ") + e.what());
  }
}

void require_shape(const Market& market, const RandomVector& x) {
  if (x.n() != market.n() || x.d() != market.d())
    throw Error(ErrorKind::ShapeMismatch, "position shape " + std::to_string(x.n()) + "x" +
                                              std::to_string(x.d()) + " does not match market " +
                                              std::to_string(market.n()) + "x" +
                                              std::to_string(market.d()));
}

bool dominates(const Market& market, const RandomVector& x, const RandomVector& y) {
  require_shape(market, x);
  require_shape(market, y);
  for (std::size_t i = 0; i < x.n(); ++i) {
    if (!market.cone.contains(sub(x.row(i), y.row(i)))) return false;
  }
  return true;
}

RandomVector translate_and_scale(const RandomVector& x, const Rational& t,
                                 std::span<const Rational> u) {
  if (u.size() != x.d()) throw Error(ErrorKind::ShapeMismatch, "portfolio length differs from d");
  RandomVector out = t * x;
  for (std::size_t i = 0; i < out.n(); ++i) {
    auto r = out.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] += u[j];
  }
  return out;
}

PortfolioVector componentwise_sup(const RandomVector& x) {
  if (x.n() == 0) throw Error(ErrorKind::ShapeMismatch, "position has no scenarios");
  PortfolioVector w(x.row(0).begin(), x.row(0).end());
  for (std::size_t i = 1; i < x.n(); ++i) {
    for (std::size_t j = 0; j < x.d(); ++j) w[j] = std::max(w[j], x.at(i, j));
  }
  return w;
}

}  // namespace setrisk
