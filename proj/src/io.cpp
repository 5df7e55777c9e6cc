#include "setrisk/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "setrisk/error.hpp"

namespace setrisk::io {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  throw Error(ErrorKind::MalformedDocument, "expected a rational string or integer, got " + j.dump());
}

json to_json(const Rational& r) { return to_string(r); }

Vec rational_list(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::MalformedDocument, "expected an array of rationals");
  Vec out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

std::vector<Vec> rational_matrix(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::MalformedDocument, "expected an array of rows");
  std::vector<Vec> out;
  for (const auto& row : j) out.push_back(rational_list(row));
  return out;
}

json to_json(std::span<const Rational> v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

RandomVector position_from_json(const json& j) {
  const json& rows = j.is_object() ? j.at("rows") : j;
  auto m = rational_matrix(rows);
  if (m.empty()) throw Error(ErrorKind::MalformedDocument, "position has no rows");
  return RandomVector(m);
}

json position_to_json(const RandomVector& x) {
  json rows = json::array();
  for (std::size_t i = 0; i < x.n(); ++i) rows.push_back(to_json(x.row(i)));
  return json{{"rows", rows}};
}

json upper_set_to_json(const UpperSet& set) {
  json pieces = json::array();
  for (const auto& p : set.pieces()) {
    json hs = json::array();
    for (const auto& h : p.halfspaces()) {
      Vec row = h.normal;
      row.push_back(h.offset);
      hs.push_back(to_json(row));
    }
    auto g = p.generators();
    json verts = json::array(), rays = json::array();
    for (const auto& v : g.vertices) verts.push_back(to_json(v));
    for (const auto& r : g.rays) rays.push_back(to_json(r));
    pieces.push_back({{"halfspaces", hs}, {"vertices", verts}, {"rays", rays}});
  }
  return json{{"pieces", pieces}};
}

UpperSet upper_set_from_json(const json& j, const PolyhedralCone& recession) {
  std::vector<Polyhedron> pieces;
  for (const auto& piece : j.at("pieces")) {
    std::vector<Halfspace> hs;
    for (const auto& row : piece.at("halfspaces")) {
      Vec r = rational_list(row);
      if (r.size() != recession.dim + 1)
        throw Error(ErrorKind::DimensionMismatch, "halfspace row length");
      Rational b = r.back();
      r.pop_back();
      hs.push_back({std::move(r), std::move(b), false});
    }
    pieces.emplace_back(recession.dim, std::move(hs));
  }
  return UpperSet(recession, std::move(pieces));
}

std::string vertex_csv(const UpperSet& set) {
  if (set.dim() > 2) throw Error(ErrorKind::DimensionMismatch, "csv-vertices output needs m <= 2");
  std::ostringstream out;
  out << "piece,kind";
  for (std::size_t k = 0; k < set.dim(); ++k) out << ",c" << (k + 1);
  out << '\n';
  for (std::size_t i = 0; i < set.pieces().size(); ++i) {
    auto g = set.pieces()[i].generators();
    auto emit = [&](const char* kind, const Vec& v) {
      out << i << ',' << kind;
      for (const auto& c : v) out << ',' << to_string(c);
      out << '\n';
    };
    for (const auto& v : g.vertices) emit("vertex", v);
    for (const auto& r : g.rays) emit("ray", r);
  }
  return out.str();
}

UpperSet upper_set_from_vertex_csv(std::string_view csv, const PolyhedralCone& recession) {
  std::map<std::size_t, Generators> by_piece;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 2 + recession.dim)
      throw Error(ErrorKind::MalformedDocument, "csv row has wrong arity: " + line);
    Vec v;
    for (std::size_t k = 2; k < cells.size(); ++k) v.push_back(parse_rational(cells[k]));
    auto& g = by_piece[std::stoul(cells[0])];
    if (cells[1] == "vertex") g.vertices.push_back(std::move(v));
    else if (cells[1] == "ray") g.rays.push_back(std::move(v));
    else throw Error(ErrorKind::MalformedDocument, "csv kind must be vertex or ray");
  }
  std::vector<Polyhedron> pieces;
  for (const auto& [idx, g] : by_piece) pieces.push_back(Polyhedron::from_generators(recession.dim, g));
  return UpperSet(recession, std::move(pieces));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedDocument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace setrisk::io
