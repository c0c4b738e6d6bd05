#pragma once

// Fixed formula collections used by the `catalog` command and the tests.

#include <string>
#include <vector>

#include "s4adm/formula.hpp"

namespace s4adm {

struct CatalogItem {
  int number;
  std::string label;
  Formula formula;
  /// Expected S4 theoremhood of the formula itself.
  bool theorem;
};

/// Eighteen one-variable formulas A with ⊢◇A. Only items 12, 17 and 18 are theorems.
inline const std::vector<CatalogItem>& diamond_catalog() {
  static const std::vector<CatalogItem> items = [] {
    const char* texts[] = {
        "p1 -> []p1",
        "p1 -> []<>p1",
        "p1 -> <>[]p1",
        "p1 -> []<>[]p1",
        "p1 -> <>[]<>p1",
        "<>p1 -> []<>p1",
        "<>p1 -> <>[]<>p1",
        "<>[]p1 -> []<>[]p1",
        "<>[]<>p1 -> []<>p1",
        "[](p1 -> []<>p1)",
        "[](p1 -> <>[]<>p1)",
        "[]([]p1 -> []<>[]p1)",
        "[](<>p1 -> []<>p1)",
        "[](<>p1 -> <>[]<>p1)",
        "[](<>[]p1 -> []<>[]p1)",
        "[](<>[]<>p1 -> []<>p1)",
        "[]<>(p1 -> []<>[]p1)",
        "[]<>(<>p1 -> []<>p1)",
    };
    std::vector<CatalogItem> out;
    int number = 1;
    for (const char* text : texts) {
      out.push_back({number, text, parse(text), number == 12 || number == 17 || number == 18});
      ++number;
    }
    return out;
  }();
  return items;
}

/// Basic S4 facts instantiated with A := p1, B := p2; all are theorems.
inline const std::vector<CatalogItem>& known_theorems() {
  static const std::vector<CatalogItem> items = [] {
    const std::pair<const char*, const char*> rows[] = {
        {"box-implication-lifts-diamond", "[](p1 -> p2) -> (<>p1 -> <>p2)"},
        {"box-monotone", "[](p1 -> p2) -> ([]p1 -> []p2)"},
        {"diamond-monotone", "[](p1 -> p2) -> (<>p1 -> <>p2)"},
        {"box-idempotent", "[][]p1 <-> []p1"},
        {"diamond-idempotent", "<><>p1 <-> <>p1"},
        {"box-diamond-collapse", "[]<>[]<>p1 <-> []<>p1"},
        {"diamond-box-collapse", "<>[]<>[]p1 <-> <>[]p1"},
        {"box-to-diamond", "[]p1 -> <>p1"},
        {"box-to-box-diamond", "[]p1 -> []<>p1"},
        {"box-to-diamond-box", "[]p1 -> <>[]p1"},
        {"box-to-box-diamond-box", "[]p1 -> []<>[]p1"},
        {"box-to-diamond-box-diamond", "[]p1 -> <>[]<>p1"},
        {"box-to-box-box-diamond", "[]p1 -> [][]<>p1"},
        {"box-to-diamond-diamond-box", "[]p1 -> <><>[]p1"},
        {"box-antecedent-to-diamond", "([]p1 -> p2) -> <>(p1 -> p2)"},
        {"diamond-implication-under-box", "<>(p1 -> <>p2) -> ([]p1 -> <>p2)"},
        {"diamond-box-implication-is-boxed", "(<>p1 -> []p2) <-> [](<>p1 -> []p2)"},
        {"diamond-box-implication-persists", "(<>p1 -> []p2) -> [](p1 -> []p2)"},
        {"implication-boxed-when-stable",
         "(p1 <-> <>p1) & (p2 <-> []p2) -> ((p1 -> p2) <-> [](p1 -> p2))"},
        {"disjunction-boxed-when-stable",
         "(p1 <-> []p1) & (p2 <-> []p2) -> ((p1 | p2) <-> [](p1 | p2))"},
        {"boxed-disjunction-is-boxed", "([]p1 | []p2) <-> []([]p1 | []p2)"},
        {"boxed-disjunction-persists", "([]p1 | []p2) -> [](p1 | []p2)"},
    };
    std::vector<CatalogItem> out;
    int number = 1;
    for (const auto& [label, text] : rows) out.push_back({number++, label, parse(text), true});
    return out;
  }();
  return items;
}

}  // namespace s4adm
