#include "setrisk/rational.hpp"

#include <algorithm>
#include <cctype>

#include "setrisk/error.hpp"

namespace setrisk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ProbabilitySum: return "ProbabilitySum";
    case ErrorKind::OrthantNotContained: return "OrthantNotContained";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::StrictUnsupported: return "StrictUnsupported";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NegativeScale: return "NegativeScale";
    case ErrorKind::InvalidSpread: return "InvalidSpread";
    case ErrorKind::BadLevel: return "BadLevel";
    case ErrorKind::MembershipOnly: return "MembershipOnly";
    case ErrorKind::DimensionNotOne: return "DimensionNotOne";
    case ErrorKind::UnknownLaw: return "UnknownLaw";
    case ErrorKind::UnknownDirection: return "UnknownDirection";
    case ErrorKind::EmptyBaseSet: return "EmptyBaseSet";
    case ErrorKind::EmptyValue: return "EmptyValue";
    case ErrorKind::OnlyOrthogonalSeparators: return "OnlyOrthogonalSeparators";
    case ErrorKind::NotInIntersection: return "NotInIntersection";
    case ErrorKind::SubspaceNotFull: return "SubspaceNotFull";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorKind::MalformedDocument, "not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    mpz_class q{std::string(den)};
    if (q == 0) bad(text);
    value = Rational(mpz_class(std::string(num)), q);
  } else if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    auto whole = s.substr(0, dot_pos);
    auto frac = s.substr(dot_pos + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) bad(text);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    value = Rational(num, scale);
  } else {
    if (!all_digits(s)) bad(text);
    value = Rational(mpz_class(std::string(s)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(std::span<const Rational> values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i].get_str();
  }
  return out + ")";
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Vec add(std::span<const Rational> a, std::span<const Rational> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(std::span<const Rational> a, std::span<const Rational> b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scaled(std::span<const Rational> a, const Rational& t) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * t;
  return out;
}

Vec negated(std::span<const Rational> a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

bool is_zero(std::span<const Rational> a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& v) { return sgn(v) == 0; });
}

void make_primitive(Vec& a, Rational& b) {
  mpz_class lcm_den = b.get_den();
  for (const auto& v : a) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), v.get_den_mpz_t());
  mpz_class g = 0;
  auto absorb = [&](const Rational& v) {
    mpz_class num = v.get_num() * (lcm_den / v.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  };
  for (const auto& v : a) absorb(v);
  absorb(b);
  if (g == 0) return;
  Rational factor(lcm_den, g);
  factor.canonicalize();
  for (auto& v : a) v *= factor;
  b *= factor;
}

void make_primitive(Vec& a) {
  Rational zero = 0;
  make_primitive(a, zero);
}

int compare(std::span<const Rational> a, std::span<const Rational> b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (int c = cmp(a[i], b[i]); c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace setrisk
