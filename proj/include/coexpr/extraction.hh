#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coexpr/coalgebra.hh"
#include "coexpr/expr.hh"

namespace coexpr {

/// gamma^F_c: the expression read off one transition value, with state `s`
/// written as the variable `var(s)`.
Expr gamma_of(const Functor& f, const StateValue& c, const std::function<std::string(StateId)>& var,
              const TermOrder& order = TermOrder());

struct Extraction {
  /// Reachable states in the enumeration used (first = the start state).
  std::vector<StateId> states;
  /// Variable x_i used for states[i-1].
  std::vector<std::string> variables;
  /// expressions[i] is the expression for states[i].
  std::vector<Expr> expressions;
};

/// Expressions for every state reachable from `start`, computed with the
/// enumeration `order` when given (it must list exactly the reachable states,
/// `start` first) and breadth-first order otherwise.
Extraction extract_all(const Coalgebra& c, StateId start, const std::optional<std::vector<StateId>>& order = std::nullopt);

/// The expression for `s`, enumerating from `s` itself.
Expr extract(const Coalgebra& c, StateId s);

}  // namespace coexpr
