#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "paraprob/errors.hpp"

namespace paraprob {

// Propositional expressions over atoms and the connectives {not, and, or},
// plus the constants top/bottom that only rewriting introduces. Values are
// immutable and share structure, so everything here is pure and safe to use
// from any number of threads.
//
// The defined forms of the underlying calculus expand eagerly into the
// primitive node kinds:
//   noncontra(a)  =  not(and(a, not(a)))          -- "a obeys non-contradiction"
//   contra(a)     =  not(noncontra(a))
//   strong_neg(a) =  and(not(a), noncontra(a))
//   nc_part(a)    =  and(a, noncontra(a))
class PropExpr {
 public:
  enum class Kind { Atom, Not, And, Or, Top, Bottom };

  static constexpr int kMaxDepth = 64;

  static PropExpr atom(std::string label) {
    require(!label.empty(), ErrorCode::InvalidInput, "atom label must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->label = std::move(label);
    n->depth = 1;
    n->count = 1;
    return PropExpr(std::move(n));
  }

  static PropExpr negation(const PropExpr& a) { return make(Kind::Not, a, a); }
  static PropExpr conjunction(const PropExpr& l, const PropExpr& r) { return make(Kind::And, l, r); }
  static PropExpr disjunction(const PropExpr& l, const PropExpr& r) { return make(Kind::Or, l, r); }

  // Constants; produced by rewriting, not part of the user-facing builders.
  static PropExpr truth() {
    static const PropExpr t = constant(Kind::Top);
    return t;
  }
  static PropExpr absurd() {
    static const PropExpr b = constant(Kind::Bottom);
    return b;
  }

  Kind kind() const { return n_->kind; }
  const std::string& label() const {
    require(kind() == Kind::Atom, ErrorCode::InvalidInput, "label() on non-atom");
    return n_->label;
  }
  PropExpr child() const {
    require(kind() == Kind::Not, ErrorCode::InvalidInput, "child() on non-negation");
    return PropExpr(n_->a);
  }
  PropExpr left() const {
    require(kind() == Kind::And || kind() == Kind::Or, ErrorCode::InvalidInput, "left() on leaf");
    return PropExpr(n_->a);
  }
  PropExpr right() const {
    require(kind() == Kind::And || kind() == Kind::Or, ErrorCode::InvalidInput, "right() on leaf");
    return PropExpr(n_->b);
  }

  int depth() const { return n_->depth; }
  std::size_t node_count() const { return n_->count; }

  friend bool operator==(const PropExpr& x, const PropExpr& y) { return equal(x.n_.get(), y.n_.get()); }
  friend bool operator!=(const PropExpr& x, const PropExpr& y) { return !(x == y); }

 private:
  struct Node {
    Kind kind = Kind::Top;
    std::string label;                    // Atom
    std::shared_ptr<const Node> a, b;     // Not: a; And/Or: a, b
    int depth = 1;
    std::size_t count = 1;
  };

  explicit PropExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  static PropExpr constant(Kind k) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    return PropExpr(std::move(n));
  }

  static PropExpr make(Kind k, const PropExpr& a, const PropExpr& b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = a.n_;
    if (k == Kind::Not) {
      n->depth = a.depth() + 1;
      n->count = a.node_count() + 1;
    } else {
      n->b = b.n_;
      n->depth = std::max(a.depth(), b.depth()) + 1;
      n->count = a.node_count() + b.node_count() + 1;
    }
    require(n->depth <= kMaxDepth, ErrorCode::DepthExceeded,
            "expression depth exceeds " + std::to_string(kMaxDepth));
    return PropExpr(std::move(n));
  }

  static bool equal(const Node* x, const Node* y) {
    if (x == y) return true;
    if (x->kind != y->kind) return false;
    switch (x->kind) {
      case Kind::Atom: return x->label == y->label;
      case Kind::Not: return equal(x->a.get(), y->a.get());
      case Kind::And:
      case Kind::Or: return equal(x->a.get(), y->a.get()) && equal(x->b.get(), y->b.get());
      case Kind::Top:
      case Kind::Bottom: return true;
    }
    return false;
  }

  std::shared_ptr<const Node> n_;
};

// ---- defined forms ----

inline PropExpr noncontra(const PropExpr& a) {
  return PropExpr::negation(PropExpr::conjunction(a, PropExpr::negation(a)));
}

inline PropExpr contra(const PropExpr& a) { return PropExpr::negation(noncontra(a)); }

inline PropExpr strong_neg(const PropExpr& a) {
  return PropExpr::conjunction(PropExpr::negation(a), noncontra(a));
}

inline PropExpr nc_part(const PropExpr& a) { return PropExpr::conjunction(a, noncontra(a)); }

// ---- rewriting ----

struct SimplifyStats {
  enum Rule {
    kDoubleNegation = 0,       // not(not(x)) -> x
    kNegateConstant,           // not(top) -> bottom, not(bottom) -> top
    kConjUnit,                 // and with top/bottom
    kDisjUnit,                 // or with top/bottom
    kArruda,                   // noncontra(noncontra(x)) -> top
    kArrudaDual,               // contradiction pair of a noncontra(x) -> bottom
    kContraAbsorbsAffirm,      // and(contra(x), x) -> contra(x)
    kContraAbsorbsNegation,    // and(contra(x), not(x)) -> contra(x)
    kNcPartContraClash,        // and(nc_part(x), contra(x)) -> bottom
    kRuleCount
  };

  std::array<std::size_t, kRuleCount> fired{};
  std::size_t steps = 0;
};

namespace detail {

// A contradiction conjunction in normal form: and(x, not(x)), or the
// double-negation image and(not(y), y) that arises when x is itself a
// negation. In both orientations the left operand is the base proposition.
inline bool is_contra_pair(const PropExpr& e, PropExpr* base = nullptr) {
  if (e.kind() != PropExpr::Kind::And) return false;
  const PropExpr l = e.left();
  const PropExpr r = e.right();
  const bool plain = r.kind() == PropExpr::Kind::Not && r.child() == l;
  const bool mirrored = l.kind() == PropExpr::Kind::Not && l.child() == r;
  if (!plain && !mirrored) return false;
  if (base) *base = l;
  return true;
}

// e is the normal form of not(x), i.e. not(x) itself or, when x = not(y),
// the stripped y.
inline bool matches_negation_of(const PropExpr& e, const PropExpr& x) {
  if (e.kind() == PropExpr::Kind::Not && e.child() == x) return true;
  if (x.kind() == PropExpr::Kind::Not && x.child() == e) return true;
  return false;
}

// e is the normal form of noncontra(x): not(K) with K the contradiction
// conjunction of x.
inline bool is_noncontra_of(const PropExpr& e, const PropExpr& x) {
  if (e.kind() != PropExpr::Kind::Not) return false;
  PropExpr base = x;
  return is_contra_pair(e.child(), &base) && base == x;
}

// Tries the rewrite rules at the root of e (children assumed normal).
inline std::optional<std::pair<PropExpr, SimplifyStats::Rule>> rewrite_head(const PropExpr& e) {
  using K = PropExpr::Kind;
  using R = SimplifyStats;
  switch (e.kind()) {
    case K::Not: {
      const PropExpr c = e.child();
      if (c.kind() == K::Top) return {{PropExpr::absurd(), R::kNegateConstant}};
      if (c.kind() == K::Bottom) return {{PropExpr::truth(), R::kNegateConstant}};
      if (c.kind() == K::Not) return {{c.child(), R::kDoubleNegation}};
      if (c.kind() == K::And) {
        // noncontra(noncontra(x)) normalizes to not(and(not(K), K)); it is a
        // theorem exactly when K is a contradiction conjunction.
        const PropExpr l = c.left();
        const PropExpr r = c.right();
        if (l.kind() == K::Not && l.child() == r && is_contra_pair(r))
          return {{PropExpr::truth(), R::kArruda}};
      }
      return std::nullopt;
    }
    case K::And: {
      const PropExpr l = e.left();
      const PropExpr r = e.right();
      if (l.kind() == K::Bottom || r.kind() == K::Bottom)
        return {{PropExpr::absurd(), R::kConjUnit}};
      if (l.kind() == K::Top) return {{r, R::kConjUnit}};
      if (r.kind() == K::Top) return {{l, R::kConjUnit}};
      PropExpr base = l;
      // The contradiction pair of a non-contradictoriness is absurd: together
      // with the rule under negation below this closes the critical pair that
      // double negation opens on top of it.
      if (is_contra_pair(e, &base) && base.kind() == K::Not && is_contra_pair(base.child()))
        return {{PropExpr::absurd(), R::kArrudaDual}};
      // and(nc_part(x), contra(x)) -> bottom: the non-contradictory part of x
      // excludes the contradictoriness of x.
      if (is_contra_pair(r, &base) && l.kind() == K::And && l.left() == base &&
          is_noncontra_of(l.right(), base))
        return {{PropExpr::absurd(), R::kNcPartContraClash}};
      // and(contra(x), x) -> contra(x) and and(contra(x), not(x)) -> contra(x)
      if (is_contra_pair(l, &base)) {
        if (r == base) return {{l, R::kContraAbsorbsAffirm}};
        if (matches_negation_of(r, base)) return {{l, R::kContraAbsorbsNegation}};
      }
      return std::nullopt;
    }
    case K::Or: {
      const PropExpr l = e.left();
      const PropExpr r = e.right();
      if (l.kind() == K::Top || r.kind() == K::Top) return {{PropExpr::truth(), R::kDisjUnit}};
      if (l.kind() == K::Bottom) return {{r, R::kDisjUnit}};
      if (r.kind() == K::Bottom) return {{l, R::kDisjUnit}};
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

inline PropExpr simplify_rec(const PropExpr& e, SimplifyStats& st) {
  using K = PropExpr::Kind;
  PropExpr cur = e;
  switch (e.kind()) {
    case K::Not: {
      const PropExpr c = simplify_rec(e.child(), st);
      cur = (c == e.child()) ? e : PropExpr::negation(c);
      break;
    }
    case K::And:
    case K::Or: {
      const PropExpr l = simplify_rec(e.left(), st);
      const PropExpr r = simplify_rec(e.right(), st);
      if (!(l == e.left() && r == e.right()))
        cur = (e.kind() == K::And) ? PropExpr::conjunction(l, r) : PropExpr::disjunction(l, r);
      break;
    }
    default:
      break;
  }
  while (auto rw = rewrite_head(cur)) {
    ++st.fired[rw->second];
    ++st.steps;
    cur = rw->first;
  }
  return cur;
}

}  // namespace detail

// Normal form under the fixed rewrite system. Rewriting is applied bottom-up;
// every rule replaces a node by one of its (already normal) subterms or by a
// constant, so a single pass reaches the fixpoint. Total on all expressions.
inline PropExpr simplify(const PropExpr& e, SimplifyStats& stats) {
  return detail::simplify_rec(e, stats);
}

inline PropExpr simplify(const PropExpr& e) {
  SimplifyStats st;
  return detail::simplify_rec(e, st);
}

// Recognizes the decomposition of a proposition into its non-contradictory
// and contradictory parts, or(nc_part(x), contra(x)), and returns x. Input is
// normalized first.
inline std::optional<PropExpr> decomposition_base(const PropExpr& e) {
  const PropExpr n = simplify(e);
  if (n.kind() != PropExpr::Kind::Or) return std::nullopt;
  const PropExpr l = n.left();
  const PropExpr r = n.right();
  PropExpr base = l;
  if (!detail::is_contra_pair(r, &base)) return std::nullopt;
  if (l.kind() != PropExpr::Kind::And) return std::nullopt;
  if (!(l.left() == base) || !detail::is_noncontra_of(l.right(), base)) return std::nullopt;
  return base;
}

// ---- textual form ----
//
//   expr := atom | "top" | "bottom"
//         | "(" "not" expr ")" | "(" "and" expr expr ")" | "(" "or" expr expr ")"
//         | "(" unary-form expr ")"
//   unary-form := "noncontra" | "contra" | "strongneg" | "ncpart"
//   atom := [A-Za-z_][A-Za-z0-9_']*   (keywords excluded)
//
// The unary forms are parsing sugar and expand eagerly.

inline std::string to_sexpr(const PropExpr& e) {
  using K = PropExpr::Kind;
  switch (e.kind()) {
    case K::Atom: return e.label();
    case K::Top: return "top";
    case K::Bottom: return "bottom";
    case K::Not: return "(not " + to_sexpr(e.child()) + ")";
    case K::And: return "(and " + to_sexpr(e.left()) + " " + to_sexpr(e.right()) + ")";
    case K::Or: return "(or " + to_sexpr(e.left()) + " " + to_sexpr(e.right()) + ")";
  }
  return {};
}

namespace detail {

struct SexprParser {
  std::string_view in;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < in.size() && std::isspace(static_cast<unsigned char>(in[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos));
  }

  static bool symbol_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool symbol_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  std::string_view read_symbol() {
    if (pos >= in.size() || !symbol_start(in[pos])) fail("expected symbol");
    const std::size_t start = pos;
    while (pos < in.size() && symbol_char(in[pos])) ++pos;
    return in.substr(start, pos - start);
  }

  PropExpr parse_expr() {
    skip_ws();
    if (pos >= in.size()) fail("unexpected end of input");
    if (in[pos] == '(') {
      ++pos;
      skip_ws();
      const std::string_view op = read_symbol();
      PropExpr result = PropExpr::truth();
      if (op == "not" || op == "noncontra" || op == "contra" || op == "strongneg" ||
          op == "ncpart") {
        const PropExpr a = parse_expr();
        if (op == "not") result = PropExpr::negation(a);
        else if (op == "noncontra") result = noncontra(a);
        else if (op == "contra") result = contra(a);
        else if (op == "strongneg") result = strong_neg(a);
        else result = nc_part(a);
      } else if (op == "and" || op == "or") {
        const PropExpr l = parse_expr();
        const PropExpr r = parse_expr();
        result = (op == "and") ? PropExpr::conjunction(l, r) : PropExpr::disjunction(l, r);
      } else {
        fail("unknown operator '" + std::string(op) + "'");
      }
      skip_ws();
      if (pos >= in.size() || in[pos] != ')') fail("expected ')'");
      ++pos;
      return result;
    }
    const std::string_view sym = read_symbol();
    if (sym == "top") return PropExpr::truth();
    if (sym == "bottom") return PropExpr::absurd();
    if (sym == "not" || sym == "and" || sym == "or" || sym == "noncontra" || sym == "contra" ||
        sym == "strongneg" || sym == "ncpart")
      fail("keyword '" + std::string(sym) + "' cannot be an atom");
    return PropExpr::atom(std::string(sym));
  }
};

}  // namespace detail

inline PropExpr parse_sexpr(std::string_view text) {
  detail::SexprParser p{text};
  const PropExpr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return e;
}

}  // namespace paraprob
