#include <cctype>
#include <map>
#include <unordered_map>

#include "coexpr/derivative.hh"
#include "coexpr/error.hh"
#include "coexpr/instances.hh"

namespace coexpr {

namespace {

Regex node(RegexKind k, std::string letter = {}, Regex a = nullptr, Regex b = nullptr) {
  return std::make_shared<const RegexNode>(RegexNode{k, std::move(letter), std::move(a), std::move(b)});
}

bool is_zero(const Regex& r) { return r->kind == RegexKind::Zero; }
bool is_one(const Regex& r) { return r->kind == RegexKind::One; }

// Simplifying constructors; they only apply laws valid for languages.
Regex s_sum(const Regex& a, const Regex& b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  if (regex_equal(a, b)) return a;
  return re_sum(a, b);
}
Regex s_cat(const Regex& a, const Regex& b) {
  if (is_zero(a) || is_zero(b)) return re_zero();
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  return re_cat(a, b);
}
Regex s_star(const Regex& a) {
  if (is_zero(a) || is_one(a)) return re_one();
  if (a->kind == RegexKind::Star) return a;
  return re_star(a);
}

class RegexParser {
 public:
  explicit RegexParser(std::string_view t) : t_(t) {}
  Regex parse() {
    Regex r = sum();
    if (peek() != '\0') throw ParseError("unexpected input in regular expression", p_);
    return r;
  }

 private:
  char peek() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
    return p_ < t_.size() ? t_[p_] : '\0';
  }
  static bool starts_atom(char c) { return c == '(' || c == '0' || c == '1' || std::isalpha(static_cast<unsigned char>(c)); }
  Regex sum() {
    Regex r = cat();
    while (peek() == '+') {
      ++p_;
      r = re_sum(r, cat());
    }
    return r;
  }
  Regex cat() {
    Regex r = star();
    while (true) {
      char c = peek();
      if (c == '.') {
        ++p_;
        r = re_cat(r, star());
      } else if (starts_atom(c)) {
        r = re_cat(r, star());
      } else {
        return r;
      }
    }
  }
  Regex star() {
    Regex r = atom();
    while (peek() == '*') {
      ++p_;
      r = re_star(r);
    }
    return r;
  }
  Regex atom() {
    char c = peek();
    if (c == '(') {
      ++p_;
      Regex r = sum();
      if (peek() != ')') throw ParseError("expected ')' in regular expression", p_);
      ++p_;
      return r;
    }
    if (c == '0') return ++p_, re_zero();
    if (c == '1') return ++p_, re_one();
    if (std::isalpha(static_cast<unsigned char>(c))) return ++p_, re_letter(std::string(1, c));
    throw ParseError("unexpected character in regular expression", p_);
  }

  std::string_view t_;
  std::size_t p_ = 0;
};

std::string print(const Regex& r, int ctx) {
  switch (r->kind) {
    case RegexKind::Zero: return "0";
    case RegexKind::One: return "1";
    case RegexKind::Letter: return r->letter;
    case RegexKind::Sum: {
      std::string s = print(r->a, 0) + "+" + print(r->b, 0);
      return ctx > 0 ? "(" + s + ")" : s;
    }
    case RegexKind::Cat: {
      std::string s = print(r->a, 1) + print(r->b, 1);
      return ctx > 1 ? "(" + s + ")" : s;
    }
    case RegexKind::Star: return print(r->a, 2) + "*";
  }
  return "?";
}

Regex nullable_free(const Regex& r) {
  switch (r->kind) {
    case RegexKind::Zero:
    case RegexKind::One: return re_zero();
    case RegexKind::Letter: return r;
    case RegexKind::Sum: return s_sum(nullable_free(r->a), nullable_free(r->b));
    case RegexKind::Cat:
      return s_sum(s_cat(nullable_free(r->a), r->b), nullable(r->a) ? nullable_free(r->b) : re_zero());
    case RegexKind::Star: return s_cat(nullable_free(r->a), r);
  }
  return r;
}

// Replaces every occurrence of the subterm l<#1>.
Expr replace_exit(const Expr& e, const Expr& with) {
  if (e->kind == ExprKind::ProdL && e->a->kind == ExprKind::LatElem && e->a->name == "1") return with;
  switch (e->kind) {
    case ExprKind::Empty:
    case ExprKind::Var:
    case ExprKind::LatElem: return e;
    case ExprKind::Plus: return with_children(e, replace_exit(e->a, with), replace_exit(e->b, with));
    default: return with_children(e, replace_exit(e->a, with));
  }
}

Expr exit_term() { return mk_prod_l(mk_elem("1")); }

Expr to_det(const Regex& r, std::size_t& counter) {
  switch (r->kind) {
    case RegexKind::Zero: return mk_empty();
    case RegexKind::One: return exit_term();
    case RegexKind::Letter: return mk_prod_r(mk_act(r->letter, exit_term()));
    case RegexKind::Sum: return mk_plus(to_det(r->a, counter), to_det(r->b, counter));
    case RegexKind::Cat: {
      Expr first = to_det(r->a, counter);
      return replace_exit(first, to_det(r->b, counter));
    }
    case RegexKind::Star: {
      std::string x = "x" + std::to_string(++counter);
      Regex body = nullable(r->a) ? nullable_free(r->a) : r->a;
      return mk_mu(x, mk_plus(replace_exit(to_det(body, counter), mk_var(x)), exit_term()));
    }
  }
  return mk_empty();
}

// A linear form c + sum_j coef[j] x_j over regular expressions.
struct Linear {
  Regex constant = re_zero();
  std::map<std::size_t, Regex> coef;
};

void add_into(Linear& acc, const Linear& x) {
  acc.constant = s_sum(acc.constant, x.constant);
  for (const auto& [j, r] : x.coef) {
    auto it = acc.coef.find(j);
    if (it == acc.coef.end()) acc.coef.emplace(j, r);
    else it->second = s_sum(it->second, r);
  }
}

Linear scale(const Regex& left, const Linear& x) {
  Linear out;
  out.constant = s_cat(left, x.constant);
  for (const auto& [j, r] : x.coef) {
    Regex c = s_cat(left, r);
    if (!is_zero(c)) out.coef.emplace(j, c);
  }
  return out;
}

class EquationBuilder {
 public:
  std::vector<Linear> eqs;

  Linear top(const Expr& e) { return level_g(e); }

 private:
  Linear level_g(const Expr& e) {
    Linear out;
    switch (e->kind) {
      case ExprKind::Empty: return out;
      case ExprKind::Plus:
        out = level_g(e->a);
        add_into(out, level_g(e->b));
        return out;
      case ExprKind::Var:
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == e->name) {
            out.coef.emplace(it->second, re_one());
            return out;
          }
        throw TypeError("free variable " + e->name);
      case ExprKind::Mu: {
        std::size_t id = eqs.size();
        eqs.emplace_back();
        scope_.emplace_back(e->name, id);
        Linear body = level_g(e->a);
        scope_.pop_back();
        eqs[id] = std::move(body);
        out.coef.emplace(id, re_one());
        return out;
      }
      case ExprKind::ProdL: out.constant = level_output(e->a); return out;
      case ExprKind::ProdR: return level_next(e->a);
      default: throw TypeError("not a deterministic expression: " + to_string(e));
    }
  }

  Regex level_output(const Expr& e) {
    switch (e->kind) {
      case ExprKind::Empty: return re_zero();
      case ExprKind::Plus: return s_sum(level_output(e->a), level_output(e->b));
      case ExprKind::LatElem: return e->name == "1" ? re_one() : re_zero();
      default: throw TypeError("not an output expression: " + to_string(e));
    }
  }

  Linear level_next(const Expr& e) {
    Linear out;
    switch (e->kind) {
      case ExprKind::Empty: return out;
      case ExprKind::Plus:
        out = level_next(e->a);
        add_into(out, level_next(e->b));
        return out;
      case ExprKind::Act: return scale(re_letter(e->name), level_g(e->a));
      default: throw TypeError("not a transition expression: " + to_string(e));
    }
  }

  std::vector<std::pair<std::string, std::size_t>> scope_;
};

}  // namespace

Regex re_zero() {
  static const Regex r = node(RegexKind::Zero);
  return r;
}
Regex re_one() {
  static const Regex r = node(RegexKind::One);
  return r;
}
Regex re_letter(std::string a) { return node(RegexKind::Letter, std::move(a)); }
Regex re_sum(Regex a, Regex b) { return node(RegexKind::Sum, {}, std::move(a), std::move(b)); }
Regex re_cat(Regex a, Regex b) { return node(RegexKind::Cat, {}, std::move(a), std::move(b)); }
Regex re_star(Regex a) { return node(RegexKind::Star, {}, std::move(a)); }

Regex parse_regex(std::string_view text) { return RegexParser(text).parse(); }
std::string to_string(const Regex& r) { return print(r, 0); }

bool regex_equal(const Regex& a, const Regex& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->letter != b->letter) return false;
  if (a->a && !regex_equal(a->a, b->a)) return false;
  if (a->b && !regex_equal(a->b, b->b)) return false;
  return true;
}

bool nullable(const Regex& r) {
  switch (r->kind) {
    case RegexKind::Zero:
    case RegexKind::Letter: return false;
    case RegexKind::One:
    case RegexKind::Star: return true;
    case RegexKind::Sum: return nullable(r->a) || nullable(r->b);
    case RegexKind::Cat: return nullable(r->a) && nullable(r->b);
  }
  return false;
}

Regex brzozowski(const Regex& r, const std::string& a) {
  switch (r->kind) {
    case RegexKind::Zero:
    case RegexKind::One: return re_zero();
    case RegexKind::Letter: return r->letter == a ? re_one() : re_zero();
    case RegexKind::Sum: return s_sum(brzozowski(r->a, a), brzozowski(r->b, a));
    case RegexKind::Cat: {
      Regex left = s_cat(brzozowski(r->a, a), r->b);
      return nullable(r->a) ? s_sum(left, brzozowski(r->b, a)) : left;
    }
    case RegexKind::Star: return s_cat(brzozowski(r->a, a), r);
  }
  return re_zero();
}

bool regex_accepts(const Regex& r, const std::vector<std::string>& word) {
  Regex cur = r;
  for (const auto& a : word) cur = brzozowski(cur, a);
  return nullable(cur);
}

Expr regex_to_det(const Regex& r) {
  std::size_t counter = 0;
  return to_det(r, counter);
}

Regex det_to_regex(const Functor& d, const Expr& e) {
  if (auto r = typecheck(e, d, d); !r) throw TypeError(r.message);
  EquationBuilder b;
  Linear top = b.top(e);
  auto& eqs = b.eqs;
  // Eliminate the innermost unknowns first; x = r x + t becomes x = r* t.
  for (std::size_t i = eqs.size(); i-- > 0;) {
    Linear& eq = eqs[i];
    if (auto self = eq.coef.find(i); self != eq.coef.end()) {
      Regex loop = s_star(self->second);
      eq.coef.erase(self);
      eq = scale(loop, eq);
    }
    auto subst = [&](Linear& target) {
      auto it = target.coef.find(i);
      if (it == target.coef.end()) return;
      Regex c = it->second;
      target.coef.erase(it);
      add_into(target, scale(c, eq));
    };
    for (std::size_t k = 0; k < i; ++k) subst(eqs[k]);
    subst(top);
  }
  if (!top.coef.empty()) throw TypeError("unsolved equation system");
  return top.constant;
}

bool det_accepts(const Functor& d, const Expr& e, const std::vector<std::string>& word) {
  if (auto r = typecheck(e, d, d); !r) throw TypeError(r.message);
  if (d->kind != FunctorKind::Product || d->left->kind != FunctorKind::Const || d->right->kind != FunctorKind::Exp)
    throw TypeError("det_accepts needs a functor of the form B * Id^A");
  Derivative delta(d);
  Expr cur = e;
  for (const auto& a : word) cur = delta(cur).kids[1].at(a).item;
  const FValue<Expr> v = delta(cur);
  return v.kids[0].lattice->element(v.kids[0].element) == "1";
}

std::vector<std::string> split_word(std::string_view text) {
  std::vector<std::string> out;
  if (text.find(',') != std::string_view::npos) {
    std::string cur;
    for (char c : text) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  }
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.emplace_back(1, c);
  return out;
}

}  // namespace coexpr
