#include <algorithm>
#include <cctype>

#include "coexpr/error.hh"
#include "coexpr/instances.hh"
#include "surface_lexer.hh"

namespace coexpr {

using detail::SurfaceLexer;

namespace {

LtsTerm lts_node(LtsKind k, std::string name = {}, LtsTerm a = nullptr, LtsTerm b = nullptr) {
  return std::make_shared<const LtsNode>(LtsNode{k, std::move(name), std::move(a), std::move(b)});
}

class LtsParser {
 public:
  explicit LtsParser(std::string_view t) : lex_(t) {}
  LtsTerm parse() {
    LtsTerm p = sum();
    if (!lex_.done()) throw ParseError("unexpected input in process term", lex_.pos());
    return p;
  }

 private:
  LtsTerm sum() {
    LtsTerm p = prefix();
    if (lex_.accept("+")) return lts_sum(p, sum());
    return p;
  }
  LtsTerm prefix() {
    if (lex_.accept("(")) {
      LtsTerm p = sum();
      lex_.expect(")");
      return p;
    }
    std::size_t at = lex_.pos();
    std::string w = lex_.word();
    if (w == "nil") return lts_nil();
    if (w == "dead") return lts_dead();
    if (w == "tick") return lts_tick();
    if (w == "mu") {
      std::string x = lex_.word();
      lex_.expect(".");
      return lts_mu(x, sum());
    }
    if (lex_.accept(".")) return lts_prefix(w, prefix());
    if (w.empty()) throw ParseError("expected process term", at);
    return lts_var(w);
  }
  SurfaceLexer lex_;
};

std::string print_lts(const LtsTerm& p, bool in_sum_left) {
  switch (p->kind) {
    case LtsKind::Nil: return "nil";
    case LtsKind::Dead: return "dead";
    case LtsKind::Tick: return "tick";
    case LtsKind::Var: return p->name;
    case LtsKind::Prefix: {
      const bool paren = p->a->kind == LtsKind::Sum || p->a->kind == LtsKind::Mu;
      std::string inner = print_lts(p->a, false);
      return p->name + "." + (paren ? "(" + inner + ")" : inner);
    }
    case LtsKind::Sum: {
      std::string s = print_lts(p->a, true) + " + " + print_lts(p->b, false);
      return in_sum_left ? "(" + s + ")" : s;
    }
    case LtsKind::Mu: {
      std::string s = "mu " + p->name + ". " + print_lts(p->a, false);
      return in_sum_left ? "(" + s + ")" : s;
    }
  }
  return "?";
}

// Variables with an occurrence not below a prefix.
void unguarded(const LtsTerm& p, std::vector<std::string>& out) {
  switch (p->kind) {
    case LtsKind::Var: out.push_back(p->name); return;
    case LtsKind::Sum:
      unguarded(p->a, out);
      unguarded(p->b, out);
      return;
    case LtsKind::Mu: {
      std::vector<std::string> inner;
      unguarded(p->a, inner);
      for (auto& v : inner)
        if (v != p->name) out.push_back(v);
      return;
    }
    default: return;
  }
}

void check_lts(const LtsTerm& p, std::vector<std::string>& bound) {
  switch (p->kind) {
    case LtsKind::Var:
      if (std::find(bound.begin(), bound.end(), p->name) == bound.end())
        throw TypeError("free variable " + p->name + " in process term");
      return;
    case LtsKind::Mu: {
      std::vector<std::string> u;
      unguarded(p->a, u);
      if (std::find(u.begin(), u.end(), p->name) != u.end())
        throw TypeError("variable " + p->name + " is not guarded by a prefix");
      bound.push_back(p->name);
      check_lts(p->a, bound);
      bound.pop_back();
      return;
    }
    default:
      if (p->a) check_lts(p->a, bound);
      if (p->b) check_lts(p->b, bound);
  }
}

Expr to_core(const LtsTerm& p) {
  switch (p->kind) {
    case LtsKind::Nil: return mk_empty();
    case LtsKind::Sum: return mk_plus(to_core(p->a), to_core(p->b));
    case LtsKind::Mu: return mk_mu(p->name, to_core(p->a));
    case LtsKind::Var: return mk_var(p->name);
    case LtsKind::Prefix: return mk_sum_r(mk_act(p->name, mk_single(to_core(p->a))));
    case LtsKind::Tick: return mk_sum_l(mk_elem("*"));
    case LtsKind::Dead: return mk_sum_r(mk_empty());
  }
  return mk_empty();
}

TypeError not_lts(const Expr& e) { return TypeError("not a process expression: " + to_string(e)); }

LtsTerm from_core(const Expr& e);

LtsTerm from_left(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Empty: return lts_tick();
    case ExprKind::LatElem: return lts_tick();
    case ExprKind::Plus: return lts_sum(from_left(e->a), from_left(e->b));
    default: throw not_lts(e);
  }
}

LtsTerm from_action(const std::string& a, const Expr& e) {
  switch (e->kind) {
    case ExprKind::Empty: return lts_dead();
    case ExprKind::Plus: return lts_sum(from_action(a, e->a), from_action(a, e->b));
    case ExprKind::Single: return lts_prefix(a, from_core(e->a));
    default: throw not_lts(e);
  }
}

LtsTerm from_right(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Empty: return lts_dead();
    case ExprKind::Plus: return lts_sum(from_right(e->a), from_right(e->b));
    case ExprKind::Act: return from_action(e->name, e->a);
    default: throw not_lts(e);
  }
}

LtsTerm from_core(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Empty: return lts_nil();
    case ExprKind::Plus: return lts_sum(from_core(e->a), from_core(e->b));
    case ExprKind::Mu: return lts_mu(e->name, from_core(e->a));
    case ExprKind::Var: return lts_var(e->name);
    case ExprKind::SumL: return from_left(e->a);
    case ExprKind::SumR: return from_right(e->a);
    default: throw not_lts(e);
  }
}

}  // namespace

LtsTerm lts_nil() { return lts_node(LtsKind::Nil); }
LtsTerm lts_dead() { return lts_node(LtsKind::Dead); }
LtsTerm lts_tick() { return lts_node(LtsKind::Tick); }
LtsTerm lts_sum(LtsTerm a, LtsTerm b) { return lts_node(LtsKind::Sum, {}, std::move(a), std::move(b)); }
LtsTerm lts_prefix(std::string action, LtsTerm p) { return lts_node(LtsKind::Prefix, std::move(action), std::move(p)); }
LtsTerm lts_mu(std::string x, LtsTerm p) { return lts_node(LtsKind::Mu, std::move(x), std::move(p)); }
LtsTerm lts_var(std::string x) { return lts_node(LtsKind::Var, std::move(x)); }

LtsTerm parse_lts(std::string_view text) { return LtsParser(text).parse(); }
std::string to_string(const LtsTerm& p) { return print_lts(p, false); }

bool lts_equal(const LtsTerm& a, const LtsTerm& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->name != b->name) return false;
  if (a->a && !lts_equal(a->a, b->a)) return false;
  if (a->b && !lts_equal(a->b, b->b)) return false;
  return true;
}

Expr lts_to_core(const LtsTerm& p) {
  std::vector<std::string> bound;
  check_lts(p, bound);
  return to_core(p);
}

LtsTerm core_to_lts(const Expr& e) { return from_core(e); }

}  // namespace coexpr
