#pragma once

// Modal formulas over indexed propositional variables p1, p2, ...
//
// Text grammar (tightest binding first):
//   unary   ~A  []A  <>A
//   and     A & B          left associative
//   or      A | B          left associative
//   implies A -> B         right associative
//   iff     A <-> B        left associative
// Atoms are p<k> (k >= 1), _|_ and parenthesised formulas. The Unicode
// symbols ¬ ∧ ∨ → ↔ □ ◇ ⊥ ⊤ are accepted as alternatives; ⊤ reads as ~_|_.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "s4adm/error.hpp"

namespace s4adm {

using VarIndex = std::uint32_t;

class Formula {
 public:
  enum class Kind : std::uint8_t { Var, Bottom, Not, And, Or, Implies, Iff, Box, Diamond };

  /// The default formula is _|_.
  Formula() : node_(bottom_node()) {}

  static Formula var(VarIndex index) {
    if (index == 0) throw InputError("variable index must be >= 1");
    return Formula(make(Kind::Var, index, {}, {}));
  }
  static Formula bottom() { return Formula(); }
  static Formula top() { return neg(bottom()); }
  static Formula neg(Formula a) { return Formula(make(Kind::Not, 0, std::move(a), {})); }
  static Formula box(Formula a) { return Formula(make(Kind::Box, 0, std::move(a), {})); }
  static Formula diamond(Formula a) { return Formula(make(Kind::Diamond, 0, std::move(a), {})); }
  static Formula conj(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) {
    return binary(Kind::Implies, std::move(a), std::move(b));
  }
  static Formula iff(Formula a, Formula b) { return binary(Kind::Iff, std::move(a), std::move(b)); }

  static Formula unary(Kind kind, Formula a) {
    return Formula(make(kind, 0, std::move(a), {}));
  }
  static Formula binary(Kind kind, Formula a, Formula b) {
    return Formula(make(kind, 0, std::move(a), std::move(b)));
  }

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_unary() const noexcept {
    return kind() == Kind::Not || kind() == Kind::Box || kind() == Kind::Diamond;
  }
  bool is_binary() const noexcept {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies ||
           kind() == Kind::Iff;
  }

  /// Variable index; 0 for non-variables.
  VarIndex index() const noexcept;
  const Formula& child() const noexcept;
  const Formula& left() const noexcept;
  const Formula& right() const noexcept;

  std::size_t hash() const noexcept;
  /// Number of nodes in the tree.
  std::size_t size() const noexcept;

  bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Formula& x, const Formula& y) noexcept {
    if (x.hash() != y.hash()) return false;
    return compare(x, y) == 0;
  }
  friend std::strong_ordering operator<=>(const Formula& x, const Formula& y) noexcept {
    return compare(x, y) <=> 0;
  }

  /// Structural total order.
  static int compare(const Formula& x, const Formula& y) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<const Node> make(Kind kind, VarIndex index, Formula a, Formula b);
  static const std::shared_ptr<const Node>& bottom_node();

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Kind kind = Kind::Bottom;
  VarIndex index = 0;
  Formula a;
  Formula b;
  std::size_t hash = 0;
  std::size_t size = 1;

  Node(Kind k, VarIndex i) : kind(k), index(i), a(nullptr_tag()), b(nullptr_tag()) {}
  Node(Kind k, VarIndex i, Formula x, Formula y)
      : kind(k), index(i), a(std::move(x)), b(std::move(y)) {}

 private:
  // Children of leaves are never read; this avoids recursing into bottom_node().
  static Formula nullptr_tag() { return Formula(std::shared_ptr<const Node>()); }
};

inline Formula::Kind Formula::kind() const noexcept { return node_->kind; }
inline VarIndex Formula::index() const noexcept { return node_->index; }
inline const Formula& Formula::child() const noexcept { return node_->a; }
inline const Formula& Formula::left() const noexcept { return node_->a; }
inline const Formula& Formula::right() const noexcept { return node_->b; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }
inline std::size_t Formula::size() const noexcept { return node_->size; }

inline int Formula::compare(const Formula& x, const Formula& y) noexcept {
  if (x.node_ == y.node_) return 0;
  const Node& a = *x.node_;
  const Node& b = *y.node_;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.kind == Kind::Var) return a.index == b.index ? 0 : (a.index < b.index ? -1 : 1);
  if (a.kind == Kind::Bottom) return 0;
  if (a.size != b.size) return a.size < b.size ? -1 : 1;
  if (int c = compare(a.a, b.a); c != 0) return c;
  if (x.is_binary()) return compare(a.b, b.b);
  return 0;
}

inline const std::shared_ptr<const Formula::Node>& Formula::bottom_node() {
  static const std::shared_ptr<const Node> node = [] {
    auto n = std::make_shared<Node>(Kind::Bottom, 0);
    n->hash = 0x9e3779b97f4a7c15ULL;
    return std::shared_ptr<const Node>(std::move(n));
  }();
  return node;
}

inline std::shared_ptr<const Formula::Node> Formula::make(Kind kind, VarIndex index, Formula a,
                                                          Formula b) {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  std::shared_ptr<Node> n;
  std::size_t h = mix(static_cast<std::size_t>(kind) * 0x100000001b3ULL, index);
  std::size_t size = 1;
  switch (kind) {
    case Kind::Var:
    case Kind::Bottom:
      n = std::make_shared<Node>(kind, index);
      break;
    case Kind::Not:
    case Kind::Box:
    case Kind::Diamond:
      h = mix(h, a.hash());
      size += a.size();
      n = std::make_shared<Node>(kind, 0, std::move(a), Formula(std::shared_ptr<const Node>()));
      break;
    default:
      h = mix(mix(h, a.hash()), b.hash());
      size += a.size() + b.size();
      n = std::make_shared<Node>(kind, 0, std::move(a), std::move(b));
      break;
  }
  n->hash = h;
  n->size = size;
  return n;
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// ---------------------------------------------------------------------------
// Short constructors

inline Formula var(VarIndex k) { return Formula::var(k); }
inline Formula bottom() { return Formula::bottom(); }
inline Formula top() { return Formula::top(); }
inline Formula neg(Formula a) { return Formula::neg(std::move(a)); }
inline Formula box(Formula a) { return Formula::box(std::move(a)); }
inline Formula dia(Formula a) { return Formula::diamond(std::move(a)); }
inline Formula conj(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }
inline Formula imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
inline Formula iff(Formula a, Formula b) { return Formula::iff(std::move(a), std::move(b)); }

/// Left-nested conjunction; the empty conjunction is ⊤.
inline Formula conj_all(std::span<const Formula> parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

/// Left-nested disjunction; the empty disjunction is ⊥.
inline Formula disj_all(std::span<const Formula> parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Traversal helpers

inline void collect_variables(const Formula& f, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case Formula::Kind::Var:
      out.insert(f.index());
      return;
    case Formula::Kind::Bottom:
      return;
    default:
      collect_variables(f.left(), out);
      if (f.is_binary()) collect_variables(f.right(), out);
  }
}

inline std::set<VarIndex> variables(const Formula& f) {
  std::set<VarIndex> out;
  collect_variables(f, out);
  return out;
}

/// Largest variable index occurring in `f`, 0 if none.
inline VarIndex max_variable(const Formula& f) {
  auto vars = variables(f);
  return vars.empty() ? 0 : *vars.rbegin();
}

/// Rewrites every ◇A as ¬□¬A.
inline Formula expand_diamonds(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var:
    case Formula::Kind::Bottom:
      return f;
    case Formula::Kind::Diamond:
      return neg(box(neg(expand_diamonds(f.child()))));
    default:
      if (f.is_unary()) return Formula::unary(f.kind(), expand_diamonds(f.child()));
      return Formula::binary(f.kind(), expand_diamonds(f.left()), expand_diamonds(f.right()));
  }
}

/// Syntactic equality after identifying ◇A with ¬□¬A.
inline bool same_modulo_diamond(const Formula& a, const Formula& b) {
  return expand_diamonds(a) == expand_diamonds(b);
}

// ---------------------------------------------------------------------------
// Printing

enum class Notation { Ascii, Unicode };

namespace detail {

inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return 5;
    default: return 6;
  }
}

inline std::string_view symbol(Formula::Kind k, Notation style) {
  const bool u = style == Notation::Unicode;
  switch (k) {
    case Formula::Kind::Bottom: return u ? "⊥" : "_|_";
    case Formula::Kind::Not: return u ? "¬" : "~";
    case Formula::Kind::Box: return u ? "□" : "[]";
    case Formula::Kind::Diamond: return u ? "◇" : "<>";
    case Formula::Kind::And: return u ? " ∧ " : " & ";
    case Formula::Kind::Or: return u ? " ∨ " : " | ";
    case Formula::Kind::Implies: return u ? " → " : " -> ";
    case Formula::Kind::Iff: return u ? " ↔ " : " <-> ";
    default: return "";
  }
}

inline void print_to(std::string& out, const Formula& f, Notation style) {
  using K = Formula::Kind;
  auto sub = [&](const Formula& g, bool parens) {
    if (parens) out += '(';
    print_to(out, g, style);
    if (parens) out += ')';
  };
  const K k = f.kind();
  switch (k) {
    case K::Var:
      out += 'p';
      out += std::to_string(f.index());
      return;
    case K::Bottom:
      out += symbol(k, style);
      return;
    case K::Not:
    case K::Box:
    case K::Diamond:
      out += symbol(k, style);
      sub(f.child(), precedence(f.child().kind()) < 5);
      return;
    default:
      break;
  }
  const int p = precedence(k);
  const int lp = precedence(f.left().kind());
  const int rp = precedence(f.right().kind());
  const bool right_assoc = k == K::Implies;
  sub(f.left(), right_assoc ? lp <= p : lp < p);
  out += symbol(k, style);
  sub(f.right(), right_assoc ? rp < p : rp <= p);
}

}  // namespace detail

/// Minimal-parenthesis rendering; `parse(print(f)) == f` for every f.
inline std::string print(const Formula& f, Notation style = Notation::Ascii) {
  std::string out;
  detail::print_to(out, f, style);
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << print(f); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) { advance(); }

  Formula parse_all() {
    Formula f = parse_iff();
    if (tok_ != Tok::End) fail("unexpected token '" + std::string(lexeme_) + "'");
    return f;
  }

 private:
  enum class Tok { Var, Bot, Top, Not, And, Or, Imp, Iff, Box, Dia, LParen, RParen, End };

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, tok_pos_); }

  bool eat(std::string_view s) {
    if (text_.substr(pos_).starts_with(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  void advance() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
    tok_pos_ = pos_;
    if (pos_ >= text_.size()) {
      tok_ = Tok::End;
      lexeme_ = "end of input";
      return;
    }
    static constexpr std::pair<std::string_view, Tok> table[] = {
        {"<->", Tok::Iff}, {"->", Tok::Imp}, {"<>", Tok::Dia}, {"[]", Tok::Box},
        {"_|_", Tok::Bot}, {"~", Tok::Not},  {"&", Tok::And},  {"|", Tok::Or},
        {"(", Tok::LParen}, {")", Tok::RParen}, {"¬", Tok::Not}, {"∧", Tok::And},
        {"∨", Tok::Or},    {"→", Tok::Imp}, {"↔", Tok::Iff}, {"□", Tok::Box},
        {"◇", Tok::Dia},   {"◊", Tok::Dia}, {"⊥", Tok::Bot}, {"⊤", Tok::Top},
    };
    for (const auto& [spelling, tok] : table) {
      if (eat(spelling)) {
        tok_ = tok;
        lexeme_ = spelling;
        return;
      }
    }
    if (text_[pos_] == 'p') {
      std::size_t start = pos_++;
      std::uint64_t value = 0;
      std::size_t digits = 0;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
        if (value > 0xFFFFFFFFULL) throw ParseError("variable index too large", start);
        ++pos_;
        ++digits;
      }
      if (digits == 0) throw ParseError("expected digits after 'p'", start);
      if (value == 0) throw ParseError("variable index must be >= 1", start);
      tok_ = Tok::Var;
      var_ = static_cast<VarIndex>(value);
      lexeme_ = text_.substr(start, pos_ - start);
      return;
    }
    // Report one whole UTF-8 sequence.
    std::size_t len = 1;
    const auto lead = static_cast<unsigned char>(text_[pos_]);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    lexeme_ = text_.substr(pos_, std::min(len, text_.size() - pos_));
    fail("unexpected character '" + std::string(lexeme_) + "'");
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    while (tok_ == Tok::Iff) {
      advance();
      lhs = iff(lhs, parse_imp());
    }
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (tok_ == Tok::Imp) {
      advance();
      return imp(lhs, parse_imp());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (tok_ == Tok::Or) {
      advance();
      lhs = disj(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (tok_ == Tok::And) {
      advance();
      lhs = conj(lhs, parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    switch (tok_) {
      case Tok::Not: advance(); return neg(parse_unary());
      case Tok::Box: advance(); return box(parse_unary());
      case Tok::Dia: advance(); return dia(parse_unary());
      case Tok::Var: {
        VarIndex k = var_;
        advance();
        return var(k);
      }
      case Tok::Bot: advance(); return bottom();
      case Tok::Top: advance(); return top();
      case Tok::LParen: {
        advance();
        Formula inner = parse_iff();
        if (tok_ != Tok::RParen) fail("expected ')'");
        advance();
        return inner;
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected token '" + std::string(lexeme_) + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t tok_pos_ = 0;
  Tok tok_ = Tok::End;
  std::string_view lexeme_;
  VarIndex var_ = 0;
};

}  // namespace detail

inline Formula parse(std::string_view text) { return detail::FormulaParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Substitutions

/// Finite map from variables to formulas; variables outside the domain map to themselves.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<const VarIndex, Formula>> images)
      : images_(images) {}

  void set(VarIndex v, Formula image) { images_.insert_or_assign(v, std::move(image)); }

  Formula operator()(VarIndex v) const {
    auto it = images_.find(v);
    return it == images_.end() ? var(v) : it->second;
  }

  const std::map<VarIndex, Formula>& images() const noexcept { return images_; }

  Formula apply(const Formula& f) const {
    switch (f.kind()) {
      case Formula::Kind::Var: {
        auto it = images_.find(f.index());
        return it == images_.end() ? f : it->second;
      }
      case Formula::Kind::Bottom:
        return f;
      default:
        break;
    }
    Formula a = apply(f.left());
    if (f.is_unary()) return a.same_node(f.left()) ? f : Formula::unary(f.kind(), std::move(a));
    Formula b = apply(f.right());
    if (a.same_node(f.left()) && b.same_node(f.right())) return f;
    return Formula::binary(f.kind(), std::move(a), std::move(b));
  }

  /// `outer ∘ this`: first this substitution, then `outer`.
  Substitution then(const Substitution& outer) const {
    Substitution out = outer;
    for (const auto& [v, image] : images_) out.set(v, outer.apply(image));
    return out;
  }

 private:
  std::map<VarIndex, Formula> images_;
};

inline Formula apply_substitution(const Substitution& sigma, const Formula& f) {
  return sigma.apply(f);
}

}  // namespace s4adm

template <>
struct std::hash<s4adm::Formula> {
  std::size_t operator()(const s4adm::Formula& f) const noexcept { return f.hash(); }
};
