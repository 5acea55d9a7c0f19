#include "coexpr/synthesis.hh"

#include <algorithm>
#include <deque>

#include "coexpr/derivative.hh"
#include "coexpr/error.hh"

namespace coexpr {

void AcieNormalizer::flatten(const Expr& e, std::vector<Expr>& out) {
  if (e->kind == ExprKind::Plus) {
    flatten(e->a, out);
    flatten(e->b, out);
  } else if (e->kind != ExprKind::Empty) {
    out.push_back(e);
  }
}

Expr AcieNormalizer::operator()(const Expr& e) {
  if (auto it = memo_.find(e.get()); it != memo_.end()) return it->second.second;
  Expr out;
  switch (e->kind) {
    case ExprKind::Empty:
    case ExprKind::Var:
    case ExprKind::LatElem: out = e; break;
    case ExprKind::Plus: {
      std::vector<Expr> parts;
      flatten((*this)(e->a), parts);
      flatten((*this)(e->b), parts);
      ExprLess less{&order_};
      std::sort(parts.begin(), parts.end(), less);
      parts.erase(std::unique(parts.begin(), parts.end(), ExprEq{}), parts.end());
      out = mk_sum_of(parts);
      break;
    }
    default: out = with_children(e, (*this)(e->a)); break;
  }
  memo_.emplace(e.get(), std::make_pair(e, out));
  return out;
}

Expr acie_normal_form(const Expr& e, const TermOrder& order) { return AcieNormalizer(order)(e); }

namespace {

Expr rename_binders(const Expr& e, std::size_t depth, std::vector<std::pair<std::string, std::string>>& scope) {
  switch (e->kind) {
    case ExprKind::Var:
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == e->name) return mk_var(it->second);
      return e;
    case ExprKind::Mu: {
      std::string fresh = "_d" + std::to_string(depth);
      scope.emplace_back(e->name, fresh);
      Expr body = rename_binders(e->a, depth + 1, scope);
      scope.pop_back();
      return mk_mu(fresh, body);
    }
    case ExprKind::Plus:
      return with_children(e, rename_binders(e->a, depth, scope), rename_binders(e->b, depth, scope));
    case ExprKind::Empty:
    case ExprKind::LatElem: return e;
    default: return with_children(e, rename_binders(e->a, depth, scope));
  }
}

}  // namespace

Expr alpha_normalize(const Expr& e) {
  std::vector<std::pair<std::string, std::string>> scope;
  return rename_binders(e, 0, scope);
}

bool acie_alpha_equal(const Expr& a, const Expr& b, const TermOrder& order) {
  return expr_equal(acie_normal_form(alpha_normalize(a), order), acie_normal_form(alpha_normalize(b), order));
}

Coalgebra synthesize(const Functor& g, const Expr& e, const SynthesisOptions& options) {
  if (auto r = typecheck(e, g, g); !r) throw TypeError(r.message);
  TermOrder order(g);
  Derivative delta(g, order);
  AcieNormalizer nf(order);

  Coalgebra c;
  c.functor = g;
  std::unordered_map<Expr, StateId, ExprHash, ExprEq> index;
  auto state_of = [&](const Expr& x) {
    Expr n = nf(x);
    auto [it, fresh] = index.emplace(n, static_cast<StateId>(c.labels.size()));
    if (fresh) {
      if (options.max_states && c.labels.size() >= options.max_states)
        throw CoalgebraError("synthesis exceeded " + std::to_string(options.max_states) + " states");
      c.labels.push_back(n);
      c.names.push_back("q" + std::to_string(it->second));
    }
    return it->second;
  };
  c.point = state_of(e);
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    Expr s = c.labels[i];
    FValue<Expr> d = delta(s);
    c.transition.push_back(fmap<StateId>(d, state_of, TermOrder()));
  }
  return c;
}

}  // namespace coexpr
