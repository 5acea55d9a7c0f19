#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "coexpr/error.hh"
#include "coexpr/expr.hh"
#include "coexpr/functor.hh"

namespace coexpr {

using StateId = std::uint32_t;

/// Declaration order is the rank used when ordering values inside sets.
enum class FKind : std::uint8_t { Bot, Const, Carrier, Pair, Inl, Inr, Fun, Set, Top };

/// An element of F(C). `kids` holds both components of a Pair, the payload of
/// Inl/Inr, the values of a Fun (aligned with `letters`) and the members of a
/// Set (sorted and duplicate-free).
template <class C>
struct FValue {
  FKind kind = FKind::Bot;
  C item{};
  Lattice lattice;
  std::size_t element = 0;
  std::vector<std::string> letters;
  std::vector<FValue> kids;

  static FValue carrier(C c) {
    FValue v;
    v.kind = FKind::Carrier;
    v.item = std::move(c);
    return v;
  }
  static FValue constant(Lattice l, std::size_t element) {
    FValue v;
    v.kind = FKind::Const;
    v.lattice = std::move(l);
    v.element = element;
    return v;
  }
  static FValue pair(FValue l, FValue r) {
    FValue v;
    v.kind = FKind::Pair;
    v.kids.reserve(2);
    v.kids.push_back(std::move(l));
    v.kids.push_back(std::move(r));
    return v;
  }
  static FValue inl(FValue x) { return inject(FKind::Inl, std::move(x)); }
  static FValue inr(FValue x) { return inject(FKind::Inr, std::move(x)); }
  static FValue bot() { return FValue{}; }
  static FValue top() {
    FValue v;
    v.kind = FKind::Top;
    return v;
  }
  static FValue fun(std::vector<std::string> letters, std::vector<FValue> values) {
    FValue v;
    v.kind = FKind::Fun;
    v.letters = std::move(letters);
    v.kids = std::move(values);
    return v;
  }
  /// Members are sorted and deduplicated with `cmp` (a three-way comparison).
  template <class Cmp>
  static FValue set(std::vector<FValue> members, Cmp&& cmp) {
    FValue v;
    v.kind = FKind::Set;
    std::sort(members.begin(), members.end(), [&](const FValue& a, const FValue& b) { return cmp(a, b) < 0; });
    members.erase(std::unique(members.begin(), members.end(),
                              [&](const FValue& a, const FValue& b) { return cmp(a, b) == 0; }),
                  members.end());
    v.kids = std::move(members);
    return v;
  }

  const FValue& at(const std::string& letter) const {
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (letters[i] == letter) return kids[i];
    throw ShapeError("letter '" + letter + "' missing from function value");
  }

 private:
  static FValue inject(FKind k, FValue x) {
    FValue v;
    v.kind = k;
    v.kids.push_back(std::move(x));
    return v;
  }
};

inline int compare_carrier(StateId a, StateId b, const TermOrder&) { return a < b ? -1 : (a == b ? 0 : 1); }
inline int compare_carrier(const Expr& a, const Expr& b, const TermOrder& order) { return compare(a, b, order); }

/// Total order on values of the same carrier.
template <class C>
int fvalue_compare(const FValue<C>& u, const FValue<C>& v, const TermOrder& order) {
  if (u.kind != v.kind) return u.kind < v.kind ? -1 : 1;
  switch (u.kind) {
    case FKind::Bot:
    case FKind::Top: return 0;
    case FKind::Carrier: return compare_carrier(u.item, v.item, order);
    case FKind::Const:
      if (u.element != v.element) return u.element < v.element ? -1 : 1;
      return u.lattice->name().compare(v.lattice->name()) < 0 ? -1 : (u.lattice->name() == v.lattice->name() ? 0 : 1);
    case FKind::Fun:
      for (std::size_t i = 0; i < std::min(u.letters.size(), v.letters.size()); ++i) {
        if (int c = order.compare_letters(u.letters[i], v.letters[i])) return c;
        if (int c = fvalue_compare(u.kids[i], v.kids[i], order)) return c;
      }
      return u.letters.size() < v.letters.size() ? -1 : (u.letters.size() == v.letters.size() ? 0 : 1);
    default:
      for (std::size_t i = 0; i < std::min(u.kids.size(), v.kids.size()); ++i)
        if (int c = fvalue_compare(u.kids[i], v.kids[i], order)) return c;
      return u.kids.size() < v.kids.size() ? -1 : (u.kids.size() == v.kids.size() ? 0 : 1);
  }
}

template <class C>
bool fvalue_equal(const FValue<C>& u, const FValue<C>& v) {
  static const TermOrder plain;
  return fvalue_compare(u, v, plain) == 0;
}

template <class C>
struct FValueCmp {
  const TermOrder* order;
  int operator()(const FValue<C>& a, const FValue<C>& b) const { return fvalue_compare(a, b, *order); }
};

/// Checks that `v` is shaped by `f`; `carrier_ok` validates Carrier leaves.
/// On failure returns false and describes the first mismatch in `why`.
template <class C, class Pred>
bool has_shape(const FValue<C>& v, const Functor& f, Pred&& carrier_ok, std::string* why = nullptr) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  switch (f->kind) {
    case FunctorKind::Id:
      if (v.kind != FKind::Carrier) return bad("expected a carrier element for Id");
      if (!carrier_ok(v.item)) return bad("invalid carrier element");
      return true;
    case FunctorKind::Const:
      if (v.kind != FKind::Const) return bad("expected an element of " + f->lattice->name());
      if (!v.lattice || !(*v.lattice == *f->lattice) || v.element >= f->lattice->size())
        return bad("element does not belong to " + f->lattice->name());
      return true;
    case FunctorKind::Product:
      if (v.kind != FKind::Pair || v.kids.size() != 2) return bad("expected a pair");
      return has_shape(v.kids[0], f->left, carrier_ok, why) && has_shape(v.kids[1], f->right, carrier_ok, why);
    case FunctorKind::Sum:
      if (v.kind == FKind::Bot || v.kind == FKind::Top) return true;
      if (v.kind == FKind::Inl && v.kids.size() == 1) return has_shape(v.kids[0], f->left, carrier_ok, why);
      if (v.kind == FKind::Inr && v.kids.size() == 1) return has_shape(v.kids[0], f->right, carrier_ok, why);
      return bad("expected inl, inr, bot or top");
    case FunctorKind::Exp:
      if (v.kind != FKind::Fun) return bad("expected a function value");
      if (v.letters != f->alphabet || v.kids.size() != f->alphabet.size())
        return bad("function value not total over the alphabet");
      for (const auto& k : v.kids)
        if (!has_shape(k, f->left, carrier_ok, why)) return false;
      return true;
    case FunctorKind::Pow:
      if (v.kind != FKind::Set) return bad("expected a set");
      for (const auto& k : v.kids)
        if (!has_shape(k, f->left, carrier_ok, why)) return false;
      return true;
  }
  return bad("unknown functor");
}

template <class C>
bool has_shape(const FValue<C>& v, const Functor& f) {
  return has_shape(v, f, [](const C&) { return true; });
}

/// F(h): applies `h` under Carrier leaves and re-normalizes sets.
template <class B, class A, class H>
FValue<B> fmap(const FValue<A>& v, H&& h, const TermOrder& order = TermOrder()) {
  FValue<B> out;
  out.kind = v.kind;
  switch (v.kind) {
    case FKind::Carrier: out.item = h(v.item); return out;
    case FKind::Const:
      out.lattice = v.lattice;
      out.element = v.element;
      return out;
    case FKind::Bot:
    case FKind::Top: return out;
    case FKind::Set: {
      std::vector<FValue<B>> members;
      members.reserve(v.kids.size());
      for (const auto& k : v.kids) members.push_back(fmap<B>(k, h, order));
      return FValue<B>::set(std::move(members), FValueCmp<B>{&order});
    }
    default:
      out.letters = v.letters;
      out.kids.reserve(v.kids.size());
      for (const auto& k : v.kids) out.kids.push_back(fmap<B>(k, h, order));
      return out;
  }
}

/// Membership of (u, v) in the lifting of `rel` along F.
template <class A, class B, class Rel>
bool lifted_related(const Functor& f, Rel&& rel, const FValue<A>& u, const FValue<B>& v) {
  switch (f->kind) {
    case FunctorKind::Id:
      if (u.kind != FKind::Carrier || v.kind != FKind::Carrier) throw ShapeError("expected carrier elements");
      return rel(u.item, v.item);
    case FunctorKind::Const:
      if (u.kind != FKind::Const || v.kind != FKind::Const) throw ShapeError("expected lattice elements");
      return u.element == v.element;
    case FunctorKind::Product:
      if (u.kind != FKind::Pair || v.kind != FKind::Pair) throw ShapeError("expected pairs");
      return lifted_related(f->left, rel, u.kids[0], v.kids[0]) && lifted_related(f->right, rel, u.kids[1], v.kids[1]);
    case FunctorKind::Sum:
      if (u.kind != v.kind) return false;
      if (u.kind == FKind::Inl) return lifted_related(f->left, rel, u.kids[0], v.kids[0]);
      if (u.kind == FKind::Inr) return lifted_related(f->right, rel, u.kids[0], v.kids[0]);
      return u.kind == FKind::Bot || u.kind == FKind::Top;
    case FunctorKind::Exp:
      if (u.kind != FKind::Fun || v.kind != FKind::Fun) throw ShapeError("expected function values");
      for (std::size_t i = 0; i < u.kids.size(); ++i)
        if (!lifted_related(f->left, rel, u.kids[i], v.kids[i])) return false;
      return true;
    case FunctorKind::Pow: {
      if (u.kind != FKind::Set || v.kind != FKind::Set) throw ShapeError("expected sets");
      for (const auto& x : u.kids) {
        bool found = false;
        for (const auto& y : v.kids)
          if ((found = lifted_related(f->left, rel, x, y))) break;
        if (!found) return false;
      }
      for (const auto& y : v.kids) {
        bool found = false;
        for (const auto& x : u.kids)
          if ((found = lifted_related(f->left, rel, x, y))) break;
        if (!found) return false;
      }
      return true;
    }
  }
  return false;
}

/// Empty_{F<|G}.
FValue<Expr> empty_lift(const Functor& f);
/// Plus_{F<|G}; throws ShapeError when u, v are not both shaped by F.
FValue<Expr> plus_lift(const Functor& f, const FValue<Expr>& u, const FValue<Expr>& v,
                       const TermOrder& order = TermOrder());

/// Text rendering, for example `(#1, {a: q1, b: q0})`.
template <class C, class P>
std::string fvalue_to_string(const FValue<C>& v, P&& print_carrier) {
  switch (v.kind) {
    case FKind::Carrier: return print_carrier(v.item);
    case FKind::Const: return "#" + v.lattice->element(v.element);
    case FKind::Bot: return "bot";
    case FKind::Top: return "top";
    case FKind::Pair:
      return "(" + fvalue_to_string(v.kids[0], print_carrier) + ", " + fvalue_to_string(v.kids[1], print_carrier) + ")";
    case FKind::Inl: return "inl(" + fvalue_to_string(v.kids[0], print_carrier) + ")";
    case FKind::Inr: return "inr(" + fvalue_to_string(v.kids[0], print_carrier) + ")";
    case FKind::Fun: {
      std::string s = "[";
      for (std::size_t i = 0; i < v.kids.size(); ++i)
        s += (i ? ", " : "") + v.letters[i] + ": " + fvalue_to_string(v.kids[i], print_carrier);
      return s + "]";
    }
    case FKind::Set: {
      std::string s = "{";
      for (std::size_t i = 0; i < v.kids.size(); ++i) s += (i ? ", " : "") + fvalue_to_string(v.kids[i], print_carrier);
      return s + "}";
    }
  }
  return "?";
}

inline std::string fvalue_to_string(const FValue<Expr>& v) {
  return fvalue_to_string(v, [](const Expr& e) { return to_string(e); });
}

}  // namespace coexpr
