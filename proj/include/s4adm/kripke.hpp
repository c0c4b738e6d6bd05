#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "s4adm/error.hpp"
#include "s4adm/formula.hpp"

namespace s4adm {

/// Finite Kripke model. Worlds are addressed by position 0..size()-1 and carry an
/// external label (a disjunct id for canonical models, a node number for
/// tableau countermodels).
class KripkeModel {
 public:
  using World = std::size_t;

  KripkeModel() = default;

  World add_world(std::uint32_t label) {
    labels_.push_back(label);
    for (auto& row : relation_) row.push_back(0);
    relation_.emplace_back(labels_.size(), 0);
    for (auto& [v, truth] : valuation_) truth.push_back(0);
    return labels_.size() - 1;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  std::uint32_t label(World w) const { return labels_.at(w); }
  const std::vector<std::uint32_t>& labels() const noexcept { return labels_; }

  void add_edge(World from, World to) {
    check_world(from);
    check_world(to);
    relation_[from][to] = 1;
  }
  bool relates(World from, World to) const { return relation_.at(from).at(to) != 0; }

  /// Declares `v` part of the valuation domain (false everywhere until set).
  void declare(VarIndex v) { valuation_.try_emplace(v, std::vector<char>(size(), 0)); }
  void set_true(VarIndex v, World w) {
    check_world(w);
    declare(v);
    valuation_[v][w] = 1;
  }
  bool holds(VarIndex v, World w) const {
    auto it = valuation_.find(v);
    if (it == valuation_.end())
      throw InputError("variable p" + std::to_string(v) + " outside the valuation domain");
    check_world(w);
    return it->second[w] != 0;
  }
  std::vector<VarIndex> domain() const {
    std::vector<VarIndex> out;
    for (const auto& [v, truth] : valuation_) out.push_back(v);
    return out;
  }

  bool s4() const noexcept { return s4_; }
  void set_s4(bool flag) { s4_ = flag; }

  bool is_reflexive() const {
    for (World w = 0; w < size(); ++w)
      if (!relation_[w][w]) return false;
    return true;
  }
  bool is_transitive() const {
    const std::size_t n = size();
    for (World a = 0; a < n; ++a)
      for (World b = 0; b < n; ++b)
        if (relation_[a][b])
          for (World c = 0; c < n; ++c)
            if (relation_[b][c] && !relation_[a][c]) return false;
    return true;
  }
  bool satisfies_s4_frame() const { return is_reflexive() && is_transitive(); }

  /// Replaces the relation by its reflexive-transitive closure and sets the S4 flag.
  void close_s4() {
    const std::size_t n = size();
    for (World w = 0; w < n; ++w) relation_[w][w] = 1;
    for (World k = 0; k < n; ++k)
      for (World i = 0; i < n; ++i)
        if (relation_[i][k])
          for (World j = 0; j < n; ++j)
            if (relation_[k][j]) relation_[i][j] = 1;
    s4_ = true;
  }

  std::vector<std::pair<World, World>> edges() const {
    std::vector<std::pair<World, World>> out;
    for (World a = 0; a < size(); ++a)
      for (World b = 0; b < size(); ++b)
        if (relation_[a][b]) out.emplace_back(a, b);
    return out;
  }

  /// Standard Kripke satisfaction: □ ranges over R-successors, ◇ is its dual.
  bool eval(World w, const Formula& f) const {
    check_world(w);
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Var: return holds(f.index(), w);
      case K::Bottom: return false;
      case K::Not: return !eval(w, f.child());
      case K::And: return eval(w, f.left()) && eval(w, f.right());
      case K::Or: return eval(w, f.left()) || eval(w, f.right());
      case K::Implies: return !eval(w, f.left()) || eval(w, f.right());
      case K::Iff: return eval(w, f.left()) == eval(w, f.right());
      case K::Box:
        for (World v = 0; v < size(); ++v)
          if (relation_[w][v] && !eval(v, f.child())) return false;
        return true;
      case K::Diamond:
        for (World v = 0; v < size(); ++v)
          if (relation_[w][v] && eval(v, f.child())) return true;
        return false;
    }
    return false;
  }

  /// True at every world.
  bool valid(const Formula& f) const {
    for (World w = 0; w < size(); ++w)
      if (!eval(w, f)) return false;
    return true;
  }

  std::string to_dot(const std::string& name = "M") const {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (World w = 0; w < size(); ++w) {
      os << "  w" << labels_[w] << " [label=\"" << labels_[w] << ":";
      bool first = true;
      for (const auto& [v, truth] : valuation_) {
        if (!truth[w]) continue;
        os << (first ? " " : ",") << "p" << v;
        first = false;
      }
      os << "\"];\n";
    }
    for (auto [a, b] : edges()) {
      if (a == b) continue;
      os << "  w" << labels_[a] << " -> w" << labels_[b] << ";\n";
    }
    os << "}\n";
    return os.str();
  }

 private:
  void check_world(World w) const {
    if (w >= size()) throw InputError("unknown world " + std::to_string(w));
  }

  std::vector<std::uint32_t> labels_;
  std::vector<std::vector<char>> relation_;
  std::map<VarIndex, std::vector<char>> valuation_;
  bool s4_ = false;
};

inline bool eval(const KripkeModel& m, KripkeModel::World w, const Formula& f) {
  return m.eval(w, f);
}

}  // namespace s4adm
