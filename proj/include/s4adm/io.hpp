#pragma once

// JSON conversions and file helpers shared by the command-line tool and tests.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "s4adm/error.hpp"
#include "s4adm/formula.hpp"
#include "s4adm/kripke.hpp"
#include "s4adm/rnf.hpp"
#include "s4adm/sdecomp.hpp"
#include "s4adm/sequent.hpp"
#include "s4adm/supp.hpp"

namespace s4adm {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Derivations

namespace detail {

inline Multiset multiset_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw InputError(std::string("'") + field + "' must be an array");
  Multiset out;
  for (const auto& f : j) {
    if (!f.is_string()) throw InputError(std::string("'") + field + "' entries must be strings");
    out.push_back(parse(f.get<std::string>()));
  }
  return out;
}

inline Json multiset_to_json(const Multiset& m) {
  Json out = Json::array();
  for (const auto& f : m) out.push_back(print(f));
  return out;
}

}  // namespace detail

inline Derivation derivation_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("derivation node must be an object");
  if (!j.contains("rule") || !j["rule"].is_string()) throw InputError("derivation node lacks 'rule'");
  if (!j.contains("conclusion") || !j["conclusion"].is_object())
    throw InputError("derivation node lacks 'conclusion'");
  Derivation d;
  d.rule = parse_rule_name(j["rule"].get<std::string>());
  const Json& c = j["conclusion"];
  d.conclusion.ant = detail::multiset_from_json(c.value("ant", Json::array()), "ant");
  d.conclusion.suc = detail::multiset_from_json(c.value("suc", Json::array()), "suc");
  if (j.contains("principal")) d.principal = parse(j["principal"].get<std::string>());
  if (j.contains("premises")) {
    if (!j["premises"].is_array()) throw InputError("'premises' must be an array");
    for (const auto& p : j["premises"]) d.premises.push_back(derivation_from_json(p));
  }
  return d;
}

inline Json to_json(const Derivation& d) {
  Json j;
  j["rule"] = std::string(rule_name(d.rule));
  j["conclusion"] = {{"ant", detail::multiset_to_json(d.conclusion.ant)},
                     {"suc", detail::multiset_to_json(d.conclusion.suc)}};
  if (d.principal) j["principal"] = print(*d.principal);
  j["premises"] = Json::array();
  for (const auto& p : d.premises) j["premises"].push_back(to_json(p));
  return j;
}

// ---------------------------------------------------------------------------
// Kripke models

inline Json to_json(const KripkeModel& m) {
  Json worlds = Json::array(), edges = Json::array(), valuation = Json::object();
  for (auto label : m.labels()) worlds.push_back(label);
  for (auto [a, b] : m.edges()) edges.push_back({m.label(a), m.label(b)});
  for (VarIndex v : m.domain()) {
    Json truth = Json::array();
    for (std::size_t w = 0; w < m.size(); ++w)
      if (m.holds(v, w)) truth.push_back(m.label(w));
    valuation["p" + std::to_string(v)] = truth;
  }
  return {{"worlds", worlds}, {"edges", edges}, {"valuation", valuation}};
}

// ---------------------------------------------------------------------------
// Id sets, rules in reduced normal form, constraints and rule systems

inline Json to_json(const IdSet& ids) {
  Json out = Json::array();
  for (DisjunctId id : ids) out.push_back(id);
  return out;
}

inline IdSet ids_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw InputError(std::string("'") + field + "' must be an array of ids");
  IdSet out;
  for (const auto& x : j) {
    if (!x.is_number_unsigned()) throw InputError(std::string("'") + field + "' entries must be non-negative integers");
    out.push_back(x.get<DisjunctId>());
  }
  return normalize(out);
}

/// Accepts "[2,3]", "2,3" or "2 3".
inline IdSet parse_ids(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == '[' || c == ']' || c == ',') c = ' ';
  std::istringstream in(t);
  IdSet out;
  std::string tok;
  while (in >> tok) {
    if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
      throw InputError("bad id '" + tok + "'");
    out.push_back(static_cast<DisjunctId>(std::stoul(tok)));
  }
  return normalize(out);
}

inline Json to_json(const RnfRule& r) {
  Json conclusion;
  if (r.conclusion_var) {
    conclusion = {{"var", *r.conclusion_var}};
  } else {
    conclusion = {{"set", to_json(r.conclusion)}};
  }
  return {{"n", r.n}, {"premise", to_json(r.premise)}, {"conclusion", conclusion}};
}

inline RnfRule rnf_rule_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
    throw InputError("rule needs an unsigned 'n'");
  const unsigned n = j["n"].get<unsigned>();
  const IdSet premise = ids_from_json(j.value("premise", Json::array()), "premise");
  if (!j.contains("conclusion") || !j["conclusion"].is_object())
    throw InputError("rule needs a 'conclusion' object");
  const Json& c = j["conclusion"];
  if (c.contains("var")) {
    if (!c["var"].is_number_unsigned()) throw InputError("'var' must be a variable index");
    return make_rnf_rule(n, premise, VarIndex{c["var"].get<VarIndex>()});
  }
  if (c.contains("set")) return make_rnf_rule(n, premise, ids_from_json(c["set"], "set"));
  throw InputError("conclusion needs 'set' or 'var'");
}

inline Json to_json(const Witness& w) { return to_json(w.set); }

inline std::vector<SuppConstraint> constraints_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("constraints must be an array");
  std::vector<SuppConstraint> out;
  for (const auto& c : j) {
    if (!c.is_object()) throw InputError("constraint must be an object");
    out.push_back({ids_from_json(c.value("upper", Json::array()), "upper"),
                   ids_from_json(c.value("lower", Json::array()), "lower")});
  }
  return out;
}

inline Json to_json(const RuleSystem& a) {
  Json out = Json::array();
  for (const auto& e : a.entries) out.push_back({{"W", to_json(e.w)}, {"J", to_json(e.j)}});
  return out;
}

inline RuleSystem system_from_json(unsigned n, const Json& j) {
  if (!j.is_array()) throw InputError("rule system must be an array");
  std::vector<RuleEntry> es;
  for (const auto& e : j) {
    if (!e.is_object()) throw InputError("rule system entry must be an object");
    es.push_back({ids_from_json(e.value("W", Json::array()), "W"), ids_from_json(e.value("J", Json::array()), "J")});
  }
  return make_system(n, es);
}

inline Json to_json(const Decomposition& d) {
  Json leaves = Json::array();
  for (const auto& leaf : d.leaves)
    leaves.push_back({{"trace", leaf.trace}, {"kind", std::string(leaf_kind_name(leaf.kind))}, {"system", to_json(leaf.system)}});
  return {{"root", to_json(d.root)}, {"complete", d.complete}, {"steps", d.steps}, {"leaves", leaves}};
}

}  // namespace s4adm
