#include "coexpr/expr.hh"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "coexpr/error.hh"

namespace coexpr {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::vector<std::string> merge(const std::vector<std::string>& x, const std::vector<std::string>& y) {
  if (x.empty()) return y;
  if (y.empty()) return x;
  std::vector<std::string> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

Expr make(ExprKind kind, std::string name, Expr a, Expr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->name = std::move(name);
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(n->name));
  if (a) h = mix(h, a->hash);
  if (b) h = mix(h, b->hash);
  n->hash = h;
  switch (kind) {
    case ExprKind::Var: n->free = {n->name}; break;
    case ExprKind::Plus: n->free = merge(a->free, b->free); break;
    case ExprKind::Mu:
      n->free = a->free;
      if (auto it = std::lower_bound(n->free.begin(), n->free.end(), n->name); it != n->free.end() && *it == n->name)
        n->free.erase(it);
      break;
    default:
      if (a) n->free = a->free;
  }
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

Expr mk_empty() {
  static const Expr e = make(ExprKind::Empty, "", nullptr, nullptr);
  return e;
}
Expr mk_var(std::string name) { return make(ExprKind::Var, std::move(name), nullptr, nullptr); }
Expr mk_plus(Expr l, Expr r) { return make(ExprKind::Plus, "", std::move(l), std::move(r)); }
Expr mk_mu(std::string binder, Expr body) { return make(ExprKind::Mu, std::move(binder), std::move(body), nullptr); }
Expr mk_elem(std::string element) { return make(ExprKind::LatElem, std::move(element), nullptr, nullptr); }
Expr mk_prod_l(Expr e) { return make(ExprKind::ProdL, "", std::move(e), nullptr); }
Expr mk_prod_r(Expr e) { return make(ExprKind::ProdR, "", std::move(e), nullptr); }
Expr mk_sum_l(Expr e) { return make(ExprKind::SumL, "", std::move(e), nullptr); }
Expr mk_sum_r(Expr e) { return make(ExprKind::SumR, "", std::move(e), nullptr); }
Expr mk_act(std::string letter, Expr e) { return make(ExprKind::Act, std::move(letter), std::move(e), nullptr); }
Expr mk_single(Expr e) { return make(ExprKind::Single, "", std::move(e), nullptr); }

Expr with_children(const Expr& e, Expr a, Expr b) {
  if (a == e->a && b == e->b) return e;
  return make(e->kind, e->name, std::move(a), std::move(b));
}

Expr mk_sum_of(const std::vector<Expr>& summands) {
  if (summands.empty()) return mk_empty();
  Expr acc = summands.back();
  for (std::size_t i = summands.size() - 1; i-- > 0;) acc = mk_plus(summands[i], acc);
  return acc;
}

bool is_guard(ExprKind k) {
  switch (k) {
    case ExprKind::ProdL:
    case ExprKind::ProdR:
    case ExprKind::SumL:
    case ExprKind::SumR:
    case ExprKind::Act:
    case ExprKind::Single: return true;
    default: return false;
  }
}

bool expr_equal(const Expr& x, const Expr& y) {
  if (x == y) return true;
  if (x->hash != y->hash || x->kind != y->kind || x->name != y->name) return false;
  if (x->a && !expr_equal(x->a, y->a)) return false;
  if (x->b && !expr_equal(x->b, y->b)) return false;
  return true;
}

int compare(const Expr& x, const Expr& y, const TermOrder& order) {
  if (x == y) return 0;
  if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
  int c = 0;
  switch (x->kind) {
    case ExprKind::Empty: return 0;
    case ExprKind::LatElem: return order.compare_elements(x->name, y->name);
    case ExprKind::Var: return x->name.compare(y->name) < 0 ? -1 : (x->name == y->name ? 0 : 1);
    case ExprKind::Act:
      c = order.compare_letters(x->name, y->name);
      if (c) return c;
      return compare(x->a, y->a, order);
    case ExprKind::Mu:
      if (x->name != y->name) return x->name < y->name ? -1 : 1;
      return compare(x->a, y->a, order);
    case ExprKind::Plus:
      c = compare(x->a, y->a, order);
      if (c) return c;
      return compare(x->b, y->b, order);
    default: return compare(x->a, y->a, order);
  }
}

namespace {

void print(const Expr& e, std::string& out) {
  switch (e->kind) {
    case ExprKind::Empty: out += "empty"; return;
    case ExprKind::Var: out += e->name; return;
    case ExprKind::LatElem: out += '#'; out += e->name; return;
    case ExprKind::Plus: {
      bool paren = e->a->kind == ExprKind::Plus || e->a->kind == ExprKind::Mu;
      if (paren) out += '(';
      print(e->a, out);
      if (paren) out += ')';
      out += " + ";
      print(e->b, out);
      return;
    }
    case ExprKind::Mu: out += "mu " + e->name + ". "; print(e->a, out); return;
    case ExprKind::ProdL: out += "l<"; print(e->a, out); out += '>'; return;
    case ExprKind::ProdR: out += "r<"; print(e->a, out); out += '>'; return;
    case ExprKind::SumL: out += "l["; print(e->a, out); out += ']'; return;
    case ExprKind::SumR: out += "r["; print(e->a, out); out += ']'; return;
    case ExprKind::Act: out += e->name + "("; print(e->a, out); out += ')'; return;
    case ExprKind::Single: out += '{'; print(e->a, out); out += '}'; return;
  }
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : t_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (p_ != t_.size()) throw ParseError("unexpected input in expression", p_);
    return e;
  }

 private:
  void skip() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }
  char peek() {
    skip();
    return p_ < t_.size() ? t_[p_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", p_);
    ++p_;
  }
  static bool alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
  static bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  static bool elem_char(char c) { return word_char(c) || c == '*'; }

  std::string ident() {
    skip();
    std::size_t start = p_;
    if (p_ < t_.size() && alpha(t_[p_]))
      while (p_ < t_.size() && word_char(t_[p_])) ++p_;
    if (start == p_) throw ParseError("expected identifier", p_);
    return std::string(t_.substr(start, p_ - start));
  }

  bool keyword(std::string_view kw) {
    skip();
    if (t_.substr(p_, kw.size()) != kw) return false;
    std::size_t end = p_ + kw.size();
    if (end < t_.size() && word_char(t_[end])) return false;
    p_ = end;
    return true;
  }

  Expr expr() {
    if (keyword("mu")) {
      std::string x = ident();
      if (peek() != '.') throw ParseError("expected '.' after mu binder", p_);
      ++p_;
      return mk_mu(std::move(x), expr());
    }
    Expr left = atom();
    if (peek() == '+') {
      ++p_;
      return mk_plus(std::move(left), expr());
    }
    return left;
  }

  Expr inner(char close) {
    Expr e = expr();
    expect(close);
    return e;
  }

  Expr atom() {
    char c = peek();
    std::size_t at = p_;
    if (c == '(') {
      ++p_;
      return inner(')');
    }
    if (c == '{') {
      ++p_;
      return mk_single(inner('}'));
    }
    if (c == '#' || c == '*' || std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '#') ++p_;
      std::size_t start = p_;
      while (p_ < t_.size() && elem_char(t_[p_])) ++p_;
      if (start == p_) throw ParseError("expected lattice element", p_);
      return mk_elem(std::string(t_.substr(start, p_ - start)));
    }
    if (!alpha(c)) throw ParseError("unexpected character in expression", at);
    std::string word = ident();
    if (word == "empty") return mk_empty();
    if (word == "mu") throw ParseError("mu must start an expression or be parenthesized", at);
    if (word == "l" || word == "r") {
      char n = peek();
      if (n == '<') {
        ++p_;
        Expr e = inner('>');
        return word == "l" ? mk_prod_l(e) : mk_prod_r(e);
      }
      if (n == '[') {
        ++p_;
        Expr e = inner(']');
        return word == "l" ? mk_sum_l(e) : mk_sum_r(e);
      }
    }
    // Dotted names are letters only (product alphabets such as t.p).
    while (p_ + 1 < t_.size() && t_[p_] == '.' && alpha(t_[p_ + 1])) {
      ++p_;
      word += '.';
      word += ident();
    }
    if (peek() == '(') {
      ++p_;
      return mk_act(std::move(word), inner(')'));
    }
    if (word.find('.') != std::string::npos) throw ParseError("dotted name '" + word + "' must be applied", at);
    return mk_var(std::move(word));
  }

  std::string_view t_;
  std::size_t p_ = 0;
};

struct PtrPairHash {
  std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept {
    return mix(std::hash<const void*>{}(p.first), std::hash<const void*>{}(p.second));
  }
};

class Substituter {
 public:
  Substituter(const Expr& e, std::string x, Expr r, SubstMode mode)
      : root_(e), x_(std::move(x)), r_(std::move(r)), mode_(mode) {}

  Expr run(const Expr& e) {
    if (!occurs_free(e, x_)) return e;
    auto it = memo_.find(e.get());
    if (it != memo_.end()) return it->second;
    Expr out;
    switch (e->kind) {
      case ExprKind::Var: out = r_; break;
      case ExprKind::Mu: {
        if (mode_ == SubstMode::capture_avoiding && occurs_free(r_, e->name)) {
          std::string z = fresh();
          Expr body = substitute(e->a, e->name, mk_var(z), SubstMode::capture_avoiding);
          out = mk_mu(z, run(body));
        } else {
          out = with_children(e, run(e->a));
        }
        break;
      }
      case ExprKind::Plus: out = with_children(e, run(e->a), run(e->b)); break;
      default: out = with_children(e, run(e->a)); break;
    }
    memo_.emplace(e.get(), out);
    return out;
  }

 private:
  static void scan(const Expr& e, std::size_t& next, std::unordered_set<const ExprNode*>& seen) {
    if (!seen.insert(e.get()).second) return;
    if ((e->kind == ExprKind::Var || e->kind == ExprKind::Mu) && e->name.rfind("_v", 0) == 0) {
      const std::string digits = e->name.substr(2);
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
        next = std::max(next, static_cast<std::size_t>(std::stoull(digits)) + 1);
    }
    if (e->a) scan(e->a, next, seen);
    if (e->b) scan(e->b, next, seen);
  }

  std::string fresh() {
    if (!next_) {
      std::size_t n = 0;
      std::unordered_set<const ExprNode*> seen;
      scan(root_, n, seen);
      scan(r_, n, seen);
      next_ = n;
    }
    return "_v" + std::to_string((*next_)++);
  }

  Expr root_;
  std::string x_;
  Expr r_;
  SubstMode mode_;
  std::optional<std::size_t> next_;
  std::unordered_map<const ExprNode*, Expr> memo_;
};

void collect_unguarded(const Expr& e, std::vector<std::string>& out) {
  switch (e->kind) {
    case ExprKind::Var: out.push_back(e->name); return;
    case ExprKind::Plus:
      collect_unguarded(e->a, out);
      collect_unguarded(e->b, out);
      return;
    case ExprKind::Mu: {
      std::vector<std::string> inner;
      collect_unguarded(e->a, inner);
      for (auto& v : inner)
        if (v != e->name) out.push_back(std::move(v));
      return;
    }
    default: return;
  }
}

class TypeChecker {
 public:
  explicit TypeChecker(Functor g) : g_(std::move(g)) {}

  TypeCheckResult check(const Expr& e, const Functor& f) {
    auto key = std::make_pair(static_cast<const void*>(e.get()), static_cast<const void*>(f.get()));
    if (done_.count(key)) return {};
    TypeCheckResult r = check_once(e, f);
    if (r.ok) done_.insert(key);
    return r;
  }

 private:
  TypeCheckResult fail(const Expr& e, const Functor& f, const std::string& why) {
    return {false, "ill-typed subterm " + to_string(e) + " at " + to_string(f) + " <| " + to_string(g_) + ": " + why};
  }

  bool is_g(const Functor& f) const { return functor_equal(f, g_); }

  TypeCheckResult check_once(const Expr& e, const Functor& f) {
    if (e->kind == ExprKind::Empty) return {};
    if (e->kind == ExprKind::Plus) {
      if (auto r = check(e->a, f); !r) return r;
      return check(e->b, f);
    }
    // Id <| G is reached only below a guard; the rule sends it back to G <| G.
    if (f->kind == FunctorKind::Id && g_->kind != FunctorKind::Id) return check(e, g_);
    switch (e->kind) {
      case ExprKind::Var:
        if (!is_g(f)) return fail(e, f, "variables have type G <| G only");
        return {};
      case ExprKind::Mu:
        if (!is_g(f)) return fail(e, f, "fixed points are only allowed at the outermost type G <| G");
        if (auto r = check(e->a, f); !r) return r;
        if (std::vector<std::string> u = unguarded_vars(e->a);
            std::find(u.begin(), u.end(), e->name) != u.end())
          return {false, "variable " + e->name + " occurs unguarded in " + to_string(e)};
        return {};
      case ExprKind::LatElem:
        if (f->kind != FunctorKind::Const) return fail(e, f, "expected a lattice type");
        if (!f->lattice->index_of(e->name)) return fail(e, f, "'" + e->name + "' is not an element of " + f->lattice->name());
        return {};
      case ExprKind::ProdL:
      case ExprKind::ProdR:
        if (f->kind != FunctorKind::Product) return fail(e, f, "expected a product type");
        return check(e->a, e->kind == ExprKind::ProdL ? f->left : f->right);
      case ExprKind::SumL:
      case ExprKind::SumR:
        if (f->kind != FunctorKind::Sum) return fail(e, f, "expected a biased sum type");
        return check(e->a, e->kind == ExprKind::SumL ? f->left : f->right);
      case ExprKind::Act:
        if (f->kind != FunctorKind::Exp) return fail(e, f, "expected an exponent type");
        if (std::find(f->alphabet.begin(), f->alphabet.end(), e->name) == f->alphabet.end())
          return fail(e, f, "letter '" + e->name + "' not in alphabet");
        return check(e->a, f->left);
      case ExprKind::Single:
        if (f->kind != FunctorKind::Pow) return fail(e, f, "expected a powerset type");
        return check(e->a, f->left);
      default: return fail(e, f, "unexpected expression");
    }
  }

  Functor g_;
  std::unordered_set<std::pair<const void*, const void*>, PtrPairHash> done_;
};

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

Expr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

bool occurs_free(const Expr& e, std::string_view x) {
  return std::binary_search(e->free.begin(), e->free.end(), x, std::less<>{});
}

Expr substitute(const Expr& e, const std::string& x, const Expr& r, SubstMode mode) {
  Substituter s(e, x, r, mode);
  return s.run(e);
}

Expr unfold(const Expr& mu_e) { return substitute(mu_e->a, mu_e->name, mu_e); }

std::vector<std::string> unguarded_vars(const Expr& e) {
  std::vector<std::string> out;
  collect_unguarded(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_guarded(const Expr& e) {
  std::unordered_set<const ExprNode*> seen;
  std::function<bool(const Expr&)> go = [&](const Expr& x) {
    if (!seen.insert(x.get()).second) return true;
    if (x->kind == ExprKind::Mu) {
      auto u = unguarded_vars(x->a);
      if (std::binary_search(u.begin(), u.end(), x->name)) return false;
    }
    return (!x->a || go(x->a)) && (!x->b || go(x->b));
  };
  return go(e);
}

TypeCheckResult typecheck(const Expr& e, const Functor& f, const Functor& g) {
  if (!ingredient_check(f, g)) return {false, to_string(f) + " is not an ingredient of " + to_string(g)};
  if (!is_closed(e)) return {false, "free variable " + e->free.front() + " in " + to_string(e)};
  return TypeChecker(g).check(e, f);
}

std::size_t measure_n(const Expr& e) {
  switch (e->kind) {
    case ExprKind::Plus: return 1 + std::max(measure_n(e->a), measure_n(e->b));
    case ExprKind::Mu: return 1 + measure_n(e->a);
    default: return 0;
  }
}

std::vector<Expr> closure_cl(const Expr& e) {
  std::vector<Expr> out;
  std::unordered_set<Expr, ExprHash, ExprEq> seen;
  std::vector<Expr> work{e};
  while (!work.empty()) {
    Expr x = work.back();
    work.pop_back();
    if (!seen.insert(x).second) continue;
    out.push_back(x);
    if (x->kind == ExprKind::Mu) {
      work.push_back(unfold(x));
    } else {
      if (x->b) work.push_back(x->b);
      if (x->a) work.push_back(x->a);
    }
  }
  return out;
}

std::size_t tree_size(const Expr& e) {
  std::unordered_map<const ExprNode*, std::size_t> memo;
  constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
  std::function<std::size_t(const Expr&)> go = [&](const Expr& x) -> std::size_t {
    if (auto it = memo.find(x.get()); it != memo.end()) return it->second;
    std::size_t n = 1;
    for (const Expr* c : {&x->a, &x->b})
      if (*c) {
        std::size_t k = go(*c);
        n = (k > cap - n) ? cap : n + k;
      }
    memo.emplace(x.get(), n);
    return n;
  };
  return go(e);
}

}  // namespace coexpr
