#include "coexpr/extraction.hh"

#include <algorithm>

#include "coexpr/error.hh"

namespace coexpr {

Expr gamma_of(const Functor& f, const StateValue& c, const std::function<std::string(StateId)>& var,
              const TermOrder& order) {
  auto mismatch = [&] { return ShapeError("gamma: value does not have shape " + to_string(f)); };
  switch (f->kind) {
    case FunctorKind::Id:
      if (c.kind != FKind::Carrier) throw mismatch();
      return mk_var(var(c.item));
    case FunctorKind::Const:
      if (c.kind != FKind::Const) throw mismatch();
      return mk_elem(f->lattice->element(c.element));
    case FunctorKind::Product:
      if (c.kind != FKind::Pair) throw mismatch();
      return mk_plus(mk_prod_l(gamma_of(f->left, c.kids[0], var, order)),
                     mk_prod_r(gamma_of(f->right, c.kids[1], var, order)));
    case FunctorKind::Sum:
      switch (c.kind) {
        case FKind::Inl: return mk_sum_l(gamma_of(f->left, c.kids[0], var, order));
        case FKind::Inr: return mk_sum_r(gamma_of(f->right, c.kids[0], var, order));
        case FKind::Bot: return mk_empty();
        case FKind::Top: return mk_plus(mk_sum_l(mk_empty()), mk_sum_r(mk_empty()));
        default: throw mismatch();
      }
    case FunctorKind::Exp: {
      if (c.kind != FKind::Fun || c.kids.size() != f->alphabet.size()) throw mismatch();
      std::vector<Expr> parts;
      for (std::size_t i = 0; i < f->alphabet.size(); ++i)
        parts.push_back(mk_act(f->alphabet[i], gamma_of(f->left, c.at(f->alphabet[i]), var, order)));
      return mk_sum_of(parts);
    }
    case FunctorKind::Pow: {
      if (c.kind != FKind::Set) throw mismatch();
      std::vector<Expr> parts;
      for (const auto& m : c.kids) parts.push_back(mk_single(gamma_of(f->left, m, var, order)));
      std::sort(parts.begin(), parts.end(), ExprLess{&order});
      return mk_sum_of(parts);
    }
  }
  throw mismatch();
}

Extraction extract_all(const Coalgebra& c, StateId start, const std::optional<std::vector<StateId>>& order) {
  std::vector<StateId> states = bfs_order(c, start);
  if (order) {
    std::vector<StateId> a = *order, b = states;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (order->empty() || order->front() != start || a != b)
      throw CoalgebraError("enumeration must list the reachable states, start first");
    states = *order;
  }
  const std::size_t n = states.size();
  Extraction out;
  out.states = states;
  std::vector<std::size_t> pos(c.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    pos[states[i]] = i;
    out.variables.push_back("x" + std::to_string(i + 1));
  }
  if (c.functor->kind == FunctorKind::Id) {
    out.expressions.assign(n, mk_empty());
    return out;
  }
  TermOrder term_order(c.functor);
  auto var = [&](StateId s) { return out.variables[pos[s]]; };
  std::vector<Expr> a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = mk_mu(out.variables[i], gamma_of(c.functor, c.transition[states[i]], var, term_order));
  // A_i^{k+1} = A_i^k {A_{k+1}^k / x_{k+1}}, textual replacement.
  for (std::size_t k = 0; k < n; ++k) {
    Expr r = a[k];
    for (std::size_t i = 0; i < n; ++i)
      if (i != k) a[i] = substitute(a[i], out.variables[k], r, SubstMode::syntactic);
  }
  out.expressions = std::move(a);
  return out;
}

Expr extract(const Coalgebra& c, StateId s) { return extract_all(c, s).expressions.front(); }

}  // namespace coexpr
