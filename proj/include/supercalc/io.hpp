#pragma once

// JSON documents (schema 1) for polynomials, expressions, instances and
// verification reports.

#include "supercalc/verify.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace supercalc {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// "n|m"
inline Dims parse_dims(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw std::invalid_argument("malformed dims '" + std::string{text} + "'");
  auto number = [&](std::string_view s) {
    if (s.empty() || s.size() > 3 || s.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("malformed dims '" + std::string{text} + "'");
    }
    return std::stoi(std::string{s});
  };
  return {number(text.substr(0, bar)), number(text.substr(bar + 1))};
}

/// "n1|m1->n2|m2"; the unicode arrow is accepted too.
inline MapDims parse_map_dims(std::string_view text) {
  for (std::string_view arrow : {std::string_view{"->"}, std::string_view{"→"}}) {
    if (auto pos = text.find(arrow); pos != std::string_view::npos) {
      return {parse_dims(text.substr(0, pos)), parse_dims(text.substr(pos + arrow.size()))};
    }
  }
  throw std::invalid_argument("malformed map dims '" + std::string{text} + "' (expected n|m->n|m)");
}

/// Comma-separated coordinate tokens, left to right a_1..a_n.
inline IndexList parse_index_list(std::string_view text) {
  IndexList out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token.empty()) {
      if (text.find_first_not_of(' ') == std::string_view::npos) break;
      throw std::invalid_argument("empty token in index list '" + std::string{text} + "'");
    }
    out.push_back(parse_coordinate(token));
    start = end + 1;
  }
  return out;
}

inline std::string to_string(const IndexList& idx) {
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + to_token(idx[i]);
  return out;
}

// ---------------------------------------------------------------------------
// SuperPolynomial: [{even: {ordinal: exponent}, odd: [ordinals], coeff: "p/q"}]

inline json poly_to_json(const SuperPolynomial& p) {
  json out = json::array();
  for (const auto& [key, c] : p.terms()) {
    json even = json::object();
    for (auto [o, e] : key.even.powers()) even[std::to_string(o)] = e;
    out.push_back({{"even", even}, {"odd", key.odd.generators()}, {"coeff", to_string(c)}});
  }
  return out;
}

inline SuperPolynomial poly_from_json(const json& j, Dims dims) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array");
  SuperPolynomial p{dims};
  for (const auto& t : j) {
    std::map<int, int> exps;
    for (const auto& [k, v] : t.at("even").items()) {
      const int ordinal = std::stoi(k);
      if (exps.count(ordinal)) throw std::invalid_argument("repeated even ordinal");
      exps[ordinal] = v.get<int>();
    }
    GrassmannMonomial odd{t.at("odd").get<std::vector<int>>()};
    p.add_term({std::move(odd), EvenMonomial{exps}}, parse_rational(t.at("coeff").get<std::string>()));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Expression

inline std::string_view to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::component: return "component";
    case SymbolKind::plain: return "plain";
    case SymbolKind::composite: return "composite";
  }
  return "plain";
}

inline SymbolKind parse_symbol_kind(std::string_view s) {
  if (s == "component") return SymbolKind::component;
  if (s == "plain") return SymbolKind::plain;
  if (s == "composite") return SymbolKind::composite;
  throw std::invalid_argument("unknown symbol kind '" + std::string{s} + "'");
}

inline json jet_to_json(const Jet& j) {
  json out{{"symbol", j.symbol.name}, {"kind", to_string(j.symbol.kind)}};
  if (j.symbol.kind != SymbolKind::component) out["parity"] = to_string(j.symbol.parity);
  json indices = json::array();
  for (const auto& c : j.indices) indices.push_back(to_token(c));
  out["indices"] = indices;
  return out;
}

inline Jet jet_from_json(const json& j) {
  Jet jet;
  const auto kind = parse_symbol_kind(j.at("kind").get<std::string>());
  const auto name = j.at("symbol").get<std::string>();
  if (kind == SymbolKind::component) {
    const Coordinate b = parse_coordinate(name);
    if (b.space != Space::target) throw std::invalid_argument("component symbol must be a target coordinate");
    jet.symbol = Symbol::component(b);
  } else {
    const Parity parity = parse_parity(j.at("parity").get<std::string>());
    jet.symbol = kind == SymbolKind::plain ? Symbol::plain(name, parity) : Symbol::composite(name, parity);
  }
  for (const auto& t : j.at("indices")) jet.indices.push_back(parse_coordinate(t.get<std::string>()));
  return jet;
}

inline json expression_to_json(const Expression& e) {
  json terms = json::array();
  for (const auto& t : e.terms()) {
    json factors = json::array();
    for (const auto& f : t.factors) factors.push_back(jet_to_json(f));
    terms.push_back({{"coeff", to_string(t.coeff)}, {"factors", factors}});
  }
  return terms;
}

inline Expression expression_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expression terms must be a JSON array");
  std::vector<Term> terms;
  for (const auto& t : j) {
    Term term{parse_rational(t.at("coeff").get<std::string>()), {}};
    for (const auto& f : t.at("factors")) term.factors.push_back(jet_from_json(f));
    terms.push_back(std::move(term));
  }
  return Expression::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// Documents

inline void check_schema(const json& doc, std::string_view kind) {
  if (!doc.is_object() || !doc.contains("schema") || doc.at("schema") != kSchemaVersion) {
    throw std::invalid_argument("unsupported or missing schema version");
  }
  if (doc.value("kind", "") != kind) throw std::invalid_argument("expected a '" + std::string{kind} + "' document");
}

inline json expression_document(const Expression& e, const std::string& dims) {
  return {{"schema", kSchemaVersion}, {"kind", "expression"}, {"dims", dims}, {"terms", expression_to_json(e)}};
}

inline json polynomial_document(const SuperPolynomial& p) {
  return {{"schema", kSchemaVersion}, {"kind", "polynomial"}, {"dims", to_string(p.dims())}, {"terms", poly_to_json(p)}};
}

inline json instance_to_json(const Instance& inst) {
  json even = json::array(), odd = json::array();
  for (const auto& p : inst.map.even) even.push_back(poly_to_json(p));
  for (const auto& p : inst.map.odd) odd.push_back(poly_to_json(p));
  json idx = json::array();
  for (const auto& a : inst.idx) idx.push_back(to_token(a));
  return {{"schema", kSchemaVersion},
          {"kind", "instance"},
          {"id", inst.id},
          {"seed", inst.seed},
          {"source", to_string(inst.map.source)},
          {"target", to_string(inst.map.target)},
          {"map", {{"even", even}, {"odd", odd}}},
          {"f", {{"parity", to_string(inst.f_parity)}, {"terms", poly_to_json(inst.f)}}},
          {"idx", idx}};
}

inline Instance instance_from_json(const json& doc) {
  check_schema(doc, "instance");
  Instance inst;
  inst.id = doc.at("id").get<std::string>();
  inst.seed = doc.value("seed", std::uint64_t{0});
  const Dims source = parse_dims(doc.at("source").get<std::string>());
  const Dims target = parse_dims(doc.at("target").get<std::string>());
  inst.map = SuperMap{source, target, {}, {}};
  for (const auto& p : doc.at("map").at("even")) inst.map.even.push_back(poly_from_json(p, source));
  for (const auto& p : doc.at("map").at("odd")) inst.map.odd.push_back(poly_from_json(p, source));
  inst.f_parity = parse_parity(doc.at("f").at("parity").get<std::string>());
  inst.f = poly_from_json(doc.at("f").at("terms"), target);
  for (const auto& t : doc.at("idx")) inst.idx.push_back(parse_coordinate(t.get<std::string>()));
  validate_instance(inst);
  return inst;
}

/// Canonical forms are included for failing entries, or for all when `full`.
/// Timing is left out unless requested so that reports are reproducible.
inline json report_to_json(const std::vector<Report>& reports, bool full = false, bool timing = false) {
  json entries = json::array();
  std::size_t equal = 0;
  for (const auto& r : reports) {
    json e{{"id", r.id}, {"mode", to_string(r.mode)}, {"equal", r.equal}};
    if (full || !r.equal) {
      e["lhs"] = r.lhs;
      e["rhs"] = r.rhs;
    }
    if (timing) e["millis"] = r.millis;
    entries.push_back(std::move(e));
    if (r.equal) ++equal;
  }
  return {{"schema", kSchemaVersion},
          {"kind", "report"},
          {"total", reports.size()},
          {"equal", equal},
          {"reports", entries}};
}

inline std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in '" + path + "': " + e.what());
  }
}

}  // namespace supercalc
