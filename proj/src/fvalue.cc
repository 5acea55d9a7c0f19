#include "coexpr/fvalue.hh"

namespace coexpr {

FValue<Expr> empty_lift(const Functor& f) {
  using V = FValue<Expr>;
  switch (f->kind) {
    case FunctorKind::Id: return V::carrier(mk_empty());
    case FunctorKind::Const: return V::constant(f->lattice, f->lattice->bottom());
    case FunctorKind::Product: return V::pair(empty_lift(f->left), empty_lift(f->right));
    case FunctorKind::Sum: return V::bot();
    case FunctorKind::Exp: return V::fun(f->alphabet, std::vector<V>(f->alphabet.size(), empty_lift(f->left)));
    case FunctorKind::Pow: {
      V v;
      v.kind = FKind::Set;
      return v;
    }
  }
  throw ShapeError("unknown functor");
}

FValue<Expr> plus_lift(const Functor& f, const FValue<Expr>& u, const FValue<Expr>& v, const TermOrder& order) {
  using V = FValue<Expr>;
  auto mismatch = [&] { return ShapeError("plus: values not shaped by " + to_string(f)); };
  switch (f->kind) {
    case FunctorKind::Id:
      if (u.kind != FKind::Carrier || v.kind != FKind::Carrier) throw mismatch();
      return V::carrier(mk_plus(u.item, v.item));
    case FunctorKind::Const:
      if (u.kind != FKind::Const || v.kind != FKind::Const) throw mismatch();
      return V::constant(f->lattice, f->lattice->join(u.element, v.element));
    case FunctorKind::Product:
      if (u.kind != FKind::Pair || v.kind != FKind::Pair) throw mismatch();
      return V::pair(plus_lift(f->left, u.kids[0], v.kids[0], order), plus_lift(f->right, u.kids[1], v.kids[1], order));
    case FunctorKind::Sum:
      if (u.kind == FKind::Bot) return v;
      if (v.kind == FKind::Bot) return u;
      if (u.kind == FKind::Top || v.kind == FKind::Top) return V::top();
      if (u.kind != v.kind) {
        if ((u.kind == FKind::Inl || u.kind == FKind::Inr) && (v.kind == FKind::Inl || v.kind == FKind::Inr))
          return V::top();
        throw mismatch();
      }
      if (u.kind == FKind::Inl) return V::inl(plus_lift(f->left, u.kids[0], v.kids[0], order));
      if (u.kind == FKind::Inr) return V::inr(plus_lift(f->right, u.kids[0], v.kids[0], order));
      throw mismatch();
    case FunctorKind::Exp: {
      if (u.kind != FKind::Fun || v.kind != FKind::Fun || u.kids.size() != v.kids.size()) throw mismatch();
      std::vector<V> vals;
      vals.reserve(u.kids.size());
      for (std::size_t i = 0; i < u.kids.size(); ++i) vals.push_back(plus_lift(f->left, u.kids[i], v.kids[i], order));
      return V::fun(f->alphabet, std::move(vals));
    }
    case FunctorKind::Pow: {
      if (u.kind != FKind::Set || v.kind != FKind::Set) throw mismatch();
      std::vector<V> members = u.kids;
      members.insert(members.end(), v.kids.begin(), v.kids.end());
      return V::set(std::move(members), FValueCmp<Expr>{&order});
    }
  }
  throw mismatch();
}

}  // namespace coexpr
