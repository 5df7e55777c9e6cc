#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace setrisk {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

/// Parses "p/q", "-p/q", an integer, or a finite decimal such as "0.25".
/// Throws Error{MalformedDocument} on anything else.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& value);
std::string to_string(std::span<const Rational> values);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

Vec zeros(std::size_t n);
Vec add(std::span<const Rational> a, std::span<const Rational> b);
Vec sub(std::span<const Rational> a, std::span<const Rational> b);
Vec scaled(std::span<const Rational> a, const Rational& t);
Vec negated(std::span<const Rational> a);
bool is_zero(std::span<const Rational> a);

/// Positive rescaling of (a, b) to a primitive integer vector; identifies
/// rows that describe the same halfspace.
void make_primitive(Vec& a, Rational& b);
void make_primitive(Vec& a);

/// Lexicographic comparison of equal-length vectors.
int compare(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace setrisk
