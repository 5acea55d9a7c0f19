#pragma once

#include <unordered_map>
#include <utility>

#include "coexpr/expr.hh"
#include "coexpr/fvalue.hh"
#include "coexpr/functor.hh"

namespace coexpr {

/// delta_{F<|G} with a memo table that lives as long as the object. Inputs
/// are assumed to be well-typed; use `delta` for the checked entry point.
class Derivative {
 public:
  explicit Derivative(Functor g);
  Derivative(Functor g, TermOrder order);

  const Functor& ambient() const noexcept { return g_; }
  const TermOrder& order() const noexcept { return order_; }

  FValue<Expr> operator()(const Functor& f, const Expr& e);
  FValue<Expr> operator()(const Expr& e) { return (*this)(g_, e); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<const FunctorNode*, Expr>& k) const noexcept {
      return std::hash<const void*>{}(k.first) ^ (k.second->hash * 31);
    }
  };
  struct KeyEq {
    bool operator()(const std::pair<const FunctorNode*, Expr>& a, const std::pair<const FunctorNode*, Expr>& b) const {
      return a.first == b.first && expr_equal(a.second, b.second);
    }
  };

  FValue<Expr> compute(const Functor& f, const Expr& e);

  Functor g_;
  TermOrder order_;
  std::unordered_map<std::pair<const FunctorNode*, Expr>, FValue<Expr>, KeyHash, KeyEq> memo_;
};

/// Typechecks `e` at F <| G (throwing TypeError) and returns delta_{F<|G}(e).
FValue<Expr> delta(const Functor& f, const Functor& g, const Expr& e);

}  // namespace coexpr
