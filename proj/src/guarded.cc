#include <algorithm>

#include "coexpr/error.hh"
#include "coexpr/instances.hh"
#include "surface_lexer.hh"

namespace coexpr {

using detail::SurfaceLexer;

namespace {

GsTerm gs_node(GsKind k, std::string test = {}, std::string name = {}, GsTerm a = nullptr, GsTerm b = nullptr) {
  return std::make_shared<const GsNode>(GsNode{k, std::move(test), std::move(name), std::move(a), std::move(b)});
}

class GsParser {
 public:
  explicit GsParser(std::string_view t) : lex_(t) {}
  GsTerm parse() {
    GsTerm p = sum();
    if (!lex_.done()) throw ParseError("unexpected input in guarded-string term", lex_.pos());
    return p;
  }

 private:
  GsTerm sum() {
    GsTerm p = prefix();
    if (lex_.accept("+")) return gs_sum(p, sum());
    return p;
  }
  GsTerm prefix() {
    if (lex_.accept("(")) {
      GsTerm p = sum();
      lex_.expect(")");
      return p;
    }
    if (lex_.accept("<")) {
      std::string b = lex_.word();
      lex_.expect(">");
      return gs_out(b);
    }
    std::string w = lex_.word();
    if (lex_.accept("->")) {
      std::string a = lex_.word();
      lex_.expect(".");
      return gs_guard(w, a, prefix());
    }
    if (w == "nil") return gs_nil();
    if (w == "mu") {
      std::string x = lex_.word();
      lex_.expect(".");
      return gs_mu(x, sum());
    }
    return gs_var(w);
  }
  SurfaceLexer lex_;
};

std::string print_gs(const GsTerm& p, bool in_sum_left) {
  switch (p->kind) {
    case GsKind::Nil: return "nil";
    case GsKind::Out: return "<" + p->test + ">";
    case GsKind::Var: return p->name;
    case GsKind::Guard: {
      const bool paren = p->a->kind == GsKind::Sum || p->a->kind == GsKind::Mu;
      std::string inner = print_gs(p->a, false);
      return p->test + " -> " + p->name + "." + (paren ? "(" + inner + ")" : inner);
    }
    case GsKind::Sum: {
      std::string s = print_gs(p->a, true) + " + " + print_gs(p->b, false);
      return in_sum_left ? "(" + s + ")" : s;
    }
    case GsKind::Mu: {
      std::string s = "mu " + p->name + ". " + print_gs(p->a, false);
      return in_sum_left ? "(" + s + ")" : s;
    }
  }
  return "?";
}

void gs_unguarded(const GsTerm& p, std::vector<std::string>& out) {
  switch (p->kind) {
    case GsKind::Var: out.push_back(p->name); return;
    case GsKind::Sum:
      gs_unguarded(p->a, out);
      gs_unguarded(p->b, out);
      return;
    case GsKind::Mu: {
      std::vector<std::string> inner;
      gs_unguarded(p->a, inner);
      for (auto& v : inner)
        if (v != p->name) out.push_back(v);
      return;
    }
    default: return;
  }
}

class GsTranslator {
 public:
  GsTranslator(const JoinSemilattice& tests, const std::vector<std::string>& atoms,
               const std::vector<std::string>& actions)
      : tests_(tests), atoms_(atoms), actions_(actions) {}

  Expr run(const GsTerm& p) {
    switch (p->kind) {
      case GsKind::Nil: return mk_empty();
      case GsKind::Out:
        if (!tests_.index_of(p->test)) throw TypeError("unknown test '" + p->test + "'");
        return mk_prod_l(mk_elem(p->test));
      case GsKind::Sum: return mk_plus(run(p->a), run(p->b));
      case GsKind::Var:
        if (std::find(bound_.begin(), bound_.end(), p->name) == bound_.end())
          throw TypeError("free variable " + p->name + " in guarded-string term");
        return mk_var(p->name);
      case GsKind::Mu: {
        std::vector<std::string> u;
        gs_unguarded(p->a, u);
        if (std::find(u.begin(), u.end(), p->name) != u.end())
          throw TypeError("variable " + p->name + " is not guarded");
        bound_.push_back(p->name);
        Expr body = run(p->a);
        bound_.pop_back();
        return mk_mu(p->name, body);
      }
      case GsKind::Guard: {
        auto b = tests_.index_of(p->test);
        if (!b) throw TypeError("unknown test '" + p->test + "'");
        if (std::find(actions_.begin(), actions_.end(), p->name) == actions_.end())
          throw TypeError("unknown action '" + p->name + "'");
        Expr body = run(p->a);
        std::vector<Expr> parts;
        for (const auto& atom : atoms_)
          if (tests_.leq(tests_.require(atom), *b)) parts.push_back(mk_prod_r(mk_act(atom + "." + p->name, body)));
        return mk_sum_of(parts);
      }
    }
    return mk_empty();
  }

 private:
  const JoinSemilattice& tests_;
  const std::vector<std::string>& atoms_;
  const std::vector<std::string>& actions_;
  std::vector<std::string> bound_;
};

}  // namespace

GsTerm gs_nil() { return gs_node(GsKind::Nil); }
GsTerm gs_out(std::string b) { return gs_node(GsKind::Out, std::move(b)); }
GsTerm gs_sum(GsTerm a, GsTerm b) { return gs_node(GsKind::Sum, {}, {}, std::move(a), std::move(b)); }
GsTerm gs_guard(std::string b, std::string action, GsTerm p) {
  return gs_node(GsKind::Guard, std::move(b), std::move(action), std::move(p));
}
GsTerm gs_mu(std::string x, GsTerm p) { return gs_node(GsKind::Mu, {}, std::move(x), std::move(p)); }
GsTerm gs_var(std::string x) { return gs_node(GsKind::Var, {}, std::move(x)); }

GsTerm parse_gs(std::string_view text) { return GsParser(text).parse(); }
std::string to_string(const GsTerm& p) { return print_gs(p, false); }

Expr gs_to_core(const GsTerm& p, const JoinSemilattice& tests, const std::vector<std::string>& atoms,
                const std::vector<std::string>& actions) {
  return GsTranslator(tests, atoms, actions).run(p);
}

}  // namespace coexpr
