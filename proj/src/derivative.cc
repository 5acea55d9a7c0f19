#include "coexpr/derivative.hh"

#include "coexpr/error.hh"

namespace coexpr {

Derivative::Derivative(Functor g) : Derivative(g, TermOrder(g)) {}

Derivative::Derivative(Functor g, TermOrder order) : g_(std::move(g)), order_(std::move(order)) {}

FValue<Expr> Derivative::operator()(const Functor& f, const Expr& e) {
  auto key = std::make_pair(f.get(), e);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  FValue<Expr> v = compute(f, e);
  memo_.emplace(std::move(key), v);
  return v;
}

FValue<Expr> Derivative::compute(const Functor& f, const Expr& e) {
  using V = FValue<Expr>;
  auto ill = [&] { return TypeError("delta: " + to_string(e) + " is not of type " + to_string(f)); };
  if (e->kind == ExprKind::Empty) return empty_lift(f);
  if (e->kind == ExprKind::Plus) return plus_lift(f, (*this)(f, e->a), (*this)(f, e->b), order_);
  if (f->kind == FunctorKind::Id && g_->kind != FunctorKind::Id) return V::carrier(e);
  switch (e->kind) {
    case ExprKind::Mu:
      if (!functor_equal(f, g_)) throw ill();
      return (*this)(f, unfold(e));
    case ExprKind::LatElem:
      if (f->kind != FunctorKind::Const) throw ill();
      return V::constant(f->lattice, f->lattice->require(e->name));
    case ExprKind::ProdL:
      if (f->kind != FunctorKind::Product) throw ill();
      return V::pair((*this)(f->left, e->a), empty_lift(f->right));
    case ExprKind::ProdR:
      if (f->kind != FunctorKind::Product) throw ill();
      return V::pair(empty_lift(f->left), (*this)(f->right, e->a));
    case ExprKind::SumL:
      if (f->kind != FunctorKind::Sum) throw ill();
      return V::inl((*this)(f->left, e->a));
    case ExprKind::SumR:
      if (f->kind != FunctorKind::Sum) throw ill();
      return V::inr((*this)(f->right, e->a));
    case ExprKind::Act: {
      if (f->kind != FunctorKind::Exp) throw ill();
      std::vector<V> vals;
      vals.reserve(f->alphabet.size());
      bool found = false;
      for (const auto& a : f->alphabet) {
        if (a == e->name) {
          vals.push_back((*this)(f->left, e->a));
          found = true;
        } else {
          vals.push_back(empty_lift(f->left));
        }
      }
      if (!found) throw ill();
      return V::fun(f->alphabet, std::move(vals));
    }
    case ExprKind::Single:
      if (f->kind != FunctorKind::Pow) throw ill();
      return V::set({(*this)(f->left, e->a)}, FValueCmp<Expr>{&order_});
    default: throw ill();
  }
}

FValue<Expr> delta(const Functor& f, const Functor& g, const Expr& e) {
  if (auto r = typecheck(e, f, g); !r) throw TypeError(r.message);
  return Derivative(g)(f, e);
}

}  // namespace coexpr
