#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coexpr/expr.hh"
#include "coexpr/fvalue.hh"
#include "coexpr/functor.hh"

namespace coexpr {

using StateValue = FValue<StateId>;

/// A finite G-coalgebra. States are addressed by index; `names` gives their
/// identifiers and `labels`, when non-empty, the expression each state
/// stands for (set by synthesis).
struct Coalgebra {
  Functor functor;
  std::vector<std::string> names;
  std::vector<StateValue> transition;
  std::optional<StateId> point;
  std::vector<Expr> labels;

  std::size_t size() const noexcept { return names.size(); }
  std::optional<StateId> find_state(std::string_view name) const;
  /// Throws CoalgebraError for unknown names.
  StateId require_state(std::string_view name) const;
};

/// Throws CoalgebraError naming the offending state when a transition is
/// missing, has the wrong shape, or references an unknown state.
void validate_coalgebra(const Coalgebra& c);

/// States referenced by Carrier leaves, in the order a left-to-right walk of
/// the value meets them (function values in alphabet order, sets in member
/// order). Repeats are kept.
void successors(const StateValue& v, std::vector<StateId>& out);

/// Reachable states from `s` in breadth-first order, `s` first.
std::vector<StateId> bfs_order(const Coalgebra& c, StateId s);

/// The subcoalgebra generated by `s`, states renumbered in BFS order and
/// pointed at `s`.
Coalgebra reachable(const Coalgebra& c, StateId s);

std::string state_value_to_string(const Coalgebra& c, const StateValue& v);

}  // namespace coexpr
