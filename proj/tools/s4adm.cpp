// s4adm: command-line front end for the prover, the G1s checker and the
// admissibility machinery. Exit 0 on any verdict, 2 on bad input, 3 on caps.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "s4adm/catalog.hpp"
#include "s4adm/decide.hpp"
#include "s4adm/io.hpp"
#include "s4adm/prover.hpp"
#include "s4adm/rnf.hpp"
#include "s4adm/sdecomp.hpp"
#include "s4adm/sequent.hpp"
#include "s4adm/supp.hpp"

using namespace s4adm;

namespace {

struct Options {
  bool json = false;
  std::size_t node_cap = kDefaultNodeCap;
  std::size_t step_cap = kDefaultStepCap;
  std::uint64_t subset_cap = kDefaultSubsetCap;
  unsigned n = 0;
};

void emit(const Options& o, const Json& j, const std::string& human) {
  if (o.json) {
    std::cout << j.dump() << '\n';
  } else {
    std::cout << human;
  }
}

std::string show(const IdSet& ids) {
  std::string out = "{";
  for (std::size_t k = 0; k < ids.size(); ++k) out += (k ? "," : "") + std::to_string(ids[k]);
  return out + "}";
}

std::string show(const RnfRule& r) {
  std::string out = "n=" + std::to_string(r.n) + "  " + show(r.premise) + " / ";
  if (r.conclusion_var) return out + "p" + std::to_string(*r.conclusion_var);
  return out + show(r.conclusion);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

/// Smallest n whose disjunct ids cover every id given; at least 1.
unsigned infer_n(const Options& o, const IdSet& ids) {
  if (o.n) return o.n;
  unsigned n = 1;
  for (DisjunctId id : ids)
    while (n < kMaxVariables && id >> (2 * n)) ++n;
  return n;
}

/// A rule argument is rule text, a file holding rule text, or a file holding RnfRule JSON.
struct RuleInput {
  std::optional<InferenceRule> text;
  std::optional<RnfRule> reduced;
};

RuleInput read_rule(const std::string& arg) {
  std::string body = arg;
  if (std::filesystem::is_regular_file(arg)) body = trim(read_file(arg));
  if (!body.empty() && body.front() == '{') return {std::nullopt, rnf_rule_from_json(parse_json(body))};
  return {parse_rule(body), std::nullopt};
}

Json names_json(const RnfTransform& t) {
  Json out = Json::array();
  for (const auto& [x, g] : t.names) out.push_back({{"var", x}, {"formula", print(g)}});
  return out;
}

int cmd_prove(const Options& o, const std::string& text) {
  const Formula f = parse(text);
  const ProofResult r = prove(f, o.node_cap);
  Json j{{"formula", print(f)}, {"theorem", r.theorem}, {"nodes", r.nodes}};
  std::string human = print(f) + (r.theorem ? " is a theorem\n" : " is not a theorem\n");
  if (r.countermodel) {
    j["countermodel"] = to_json(*r.countermodel);
    human += "countermodel (world 0 falsifies it):\n" + r.countermodel->to_dot();
  } else {
    j["countermodel"] = nullptr;
  }
  emit(o, j, human);
  return 0;
}

int cmd_check_proof(const Options& o, const std::string& path) {
  const Derivation d = derivation_from_json(parse_json(read_file(path)));
  const CheckResult r = check_derivation(d);
  Json j{{"ok", r.ok}, {"size", derivation_size(d)}, {"conclusion", print(d.conclusion)}};
  if (!r.ok) {
    j["node"] = r.node;
    j["reason"] = r.reason;
  }
  emit(o, j,
       r.ok ? "accepted: " + print(d.conclusion) + " (" + std::to_string(derivation_size(d)) + " nodes)\n"
            : "rejected at " + r.node + ": " + r.reason + "\n");
  return 0;
}

int cmd_to_rnf(const Options& o, const std::string& arg) {
  const RuleInput in = read_rule(arg);
  if (!in.text) throw InputError("to-rnf needs rule text, not a reduced rule");
  const RnfTransform t = to_rnf_transform({*in.text});
  const RnfRule& r = t.rules.front();
  std::string human = print(*in.text) + "\n  " + show(r) + "\n";
  for (const auto& [x, g] : t.names) human += "  p" + std::to_string(x) + " := " + print(g) + "\n";
  emit(o, {{"rule", print(*in.text)}, {"rnf", to_json(r)}, {"names", names_json(t)}}, human);
  return 0;
}

int cmd_decide(const Options& o, const std::string& arg, bool admissibility) {
  const RuleInput in = read_rule(arg);
  const RnfRule r = in.reduced ? *in.reduced : to_rnf(*in.text);
  const Verdict v = admissibility ? check_admissibility(r, o.subset_cap) : check_validity(r, o.subset_cap);
  const char* key = admissibility ? "admissible" : "valid";
  const std::string word = v.holds ? key : std::string(admissibility ? "inadmissible" : "invalid");
  Json j;
  j["rule"] = in.text ? Json(print(*in.text)) : Json(nullptr);
  j[key] = v.holds;
  j["verdict"] = word;
  j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
  if (v.witness) j["minimal"] = v.witness->minimal;
  j["rnf"] = to_json(r);
  std::string human = word + "\n  rnf " + show(r) + "\n";
  if (v.witness) human += "  witness " + show(v.witness->set) + (v.witness->minimal ? "\n" : " (not minimal)\n");
  emit(o, j, human);
  return 0;
}

int cmd_joint(const Options& o, const std::vector<std::string>& args) {
  std::vector<InferenceRule> texts;
  std::vector<RnfRule> reduced;
  for (const auto& a : args) {
    RuleInput in = read_rule(a);
    if (in.text) texts.push_back(*in.text);
    if (in.reduced) reduced.push_back(*in.reduced);
  }
  if (!texts.empty() && !reduced.empty()) throw InputError("joint: mix of rule text and reduced rules");
  const std::vector<RnfRule> rules = texts.empty() ? reduced : to_rnf_joint(texts);
  const Verdict valid = check_joint_validity(rules, o.subset_cap);
  const Verdict adm = check_joint_admissibility(rules, o.subset_cap);
  Json rj = Json::array();
  std::string human;
  for (const auto& r : rules) {
    rj.push_back(to_json(r));
    human += "  rnf " + show(r) + "\n";
  }
  human = std::string(valid.holds ? "no common model refutation\n" : "jointly invalid\n") +
          (adm.holds ? "no common rejecting substitution\n" : "jointly inadmissible\n") + human;
  if (adm.witness) human += "  witness " + show(adm.witness->set) + "\n";
  emit(o,
       {{"rules", rj},
        {"joint_invalid", !valid.holds},
        {"validity_witness", valid.witness ? to_json(*valid.witness) : Json(nullptr)},
        {"joint_inadmissible", !adm.holds},
        {"witness", adm.witness ? to_json(*adm.witness) : Json(nullptr)}},
       human);
  return 0;
}

int cmd_supp(const Options& o, Family f, unsigned n, const std::string& ids) {
  const IdSet w = parse_ids(ids);
  check_arity(n);
  if (w.empty()) throw InputError("world set is empty");
  const bool member = in_family(f, n, w);
  const char* name = f == Family::Supp1 ? "Supp1" : "Supp2";
  emit(o, {{"n", n}, {"family", name}, {"W", to_json(w)}, {"member", member}},
       show(w) + (member ? " is in " : " is not in ") + name + "\n");
  return 0;
}

int cmd_witness(const Options& o, const std::string& path) {
  const auto cs = constraints_from_json(parse_json(read_file(path)));
  IdSet all;
  for (const auto& c : cs) all = set_union(all, c.upper);
  const unsigned n = infer_n(o, all);
  const auto w = find_supp2_witness(n, cs, o.subset_cap);
  Json j{{"n", n}, {"witness", w ? to_json(*w) : Json(nullptr)}};
  if (w) j["minimal"] = w->minimal;
  emit(o, j, w ? "witness " + show(w->set) + (w->minimal ? "\n" : " (not minimal)\n") : "no witness\n");
  return 0;
}

int cmd_decompose(const Options& o, const std::string& path) {
  const Json j = parse_json(read_file(path));
  IdSet all;
  if (j.is_array())
    for (const auto& e : j)
      if (e.is_object()) all = set_union(all, ids_from_json(e.value("W", Json::array()), "W"));
  const RuleSystem root = system_from_json(infer_n(o, all), j);
  const Decomposition d = decompose(root, {o.step_cap, o.subset_cap});
  std::string human = std::to_string(d.leaves.size()) + " leaves, " + std::to_string(d.steps) + " steps" +
                      (d.complete ? "\n" : ", incomplete\n");
  for (const auto& leaf : d.leaves) {
    std::string trace;
    for (const auto& t : leaf.trace) trace += (trace.empty() ? "" : " ") + t;
    human += std::string(leaf_kind_name(leaf.kind)) + "  [" + trace + "]  " + to_json(leaf.system).dump() + "\n";
  }
  Json out = to_json(d);
  out["n"] = root.n;
  emit(o, out, human);
  return 0;
}

int cmd_catalog(const Options& o) {
  Json items = Json::array();
  std::string human;
  for (const auto& item : diamond_catalog()) {
    const bool theorem = is_theorem(item.formula, o.node_cap);
    const bool star = has_property_star(item.formula, o.node_cap);
    const bool star_star = has_property_star_star(item.formula, o.node_cap);
    items.push_back({{"number", item.number},
                     {"formula", print(item.formula)},
                     {"theorem", theorem},
                     {"star", star},
                     {"star_star", star_star}});
    human += std::to_string(item.number) + ". " + print(item.formula) + (theorem ? "  theorem" : "") +
             (star ? "  (*)" : "") + (star_star ? "  (**)" : "") + "\n";
  }
  emit(o, items, human);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide S4 theoremhood, rule validity and rule admissibility"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Print machine-readable JSON");
  app.add_option("--node-cap", o.node_cap, "Tableau node limit")->capture_default_str();
  app.add_option("--step-cap", o.step_cap, "Decomposition action limit")->capture_default_str();
  app.add_option("--subset-cap", o.subset_cap, "Witness enumeration limit")->capture_default_str();
  app.add_option("--n", o.n, "Variable count for id-level inputs (inferred when omitted)");

  int status = 0;
  std::string text, path;
  unsigned n = 0;
  std::vector<std::string> many;

  auto* prove_cmd = app.add_subcommand("prove", "Is the formula an S4 theorem? Prints a countermodel if not");
  prove_cmd->add_option("formula", text)->required();
  prove_cmd->callback([&] { status = cmd_prove(o, text); });

  auto* check_cmd = app.add_subcommand("check-proof", "Check a G1s derivation given as JSON");
  check_cmd->add_option("derivation", path)->required();
  check_cmd->callback([&] { status = cmd_check_proof(o, path); });

  auto* rnf_cmd = app.add_subcommand("to-rnf", "Reduce a rule to reduced normal form");
  rnf_cmd->add_option("rule", text)->required();
  rnf_cmd->callback([&] { status = cmd_to_rnf(o, text); });

  auto* valid_cmd = app.add_subcommand("valid", "Decide validity of a rule");
  valid_cmd->add_option("rule", text)->required();
  valid_cmd->callback([&] { status = cmd_decide(o, text, false); });

  auto* adm_cmd = app.add_subcommand("admissible", "Decide admissibility of a rule");
  adm_cmd->add_option("rule", text)->required();
  adm_cmd->callback([&] { status = cmd_decide(o, text, true); });

  auto* joint_cmd = app.add_subcommand("joint", "Decide whether rules fail together");
  joint_cmd->add_option("rules", many)->required();
  joint_cmd->callback([&] { status = cmd_joint(o, many); });

  for (Family f : {Family::Supp1, Family::Supp2}) {
    auto* cmd = app.add_subcommand(f == Family::Supp1 ? "supp1" : "supp2", "Membership of a world set");
    cmd->add_option("n", n)->required();
    cmd->add_option("ids", text)->required();
    cmd->callback([&, f] { status = cmd_supp(o, f, n, text); });
  }

  auto* witness_cmd = app.add_subcommand("witness", "Find a Supp2 witness for [{upper, lower}] constraints");
  witness_cmd->add_option("constraints", path)->required();
  witness_cmd->callback([&] { status = cmd_witness(o, path); });

  auto* dec_cmd = app.add_subcommand("decompose", "Decompose a rule system [{W, J}] into canonical leaves");
  dec_cmd->add_option("system", path)->required();
  dec_cmd->callback([&] { status = cmd_decompose(o, path); });

  auto* cat_cmd = app.add_subcommand("catalog", "Check the built-in formulas A with a provable <>A");
  cat_cmd->callback([&] { status = cmd_catalog(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "s4adm: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "s4adm: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "s4adm: " << e.what() << '\n';
    return 2;
  }
  return status;
}
