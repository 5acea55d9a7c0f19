#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coexpr/coalgebra.hh"
#include "coexpr/expr.hh"

namespace coexpr {

struct Certificate {
  bool bisimilar = false;
  /// Related pairs (state of the first coalgebra, state of the second) that
  /// form a bisimulation containing the queried pair; empty when distinguished.
  std::vector<std::pair<StateId, StateId>> witness;
  /// Positions followed from the queried pair to the mismatch, e.g.
  /// `right`, `a`, `inl`, `set`. Empty when bisimilar.
  std::vector<std::string> trace;
  /// What differs at the end of `trace`.
  std::string reason;
};

/// Partition of the states into bisimilarity classes, numbered by first
/// occurrence.
std::vector<std::size_t> bisimilarity_classes(const Coalgebra& c);

/// Greatest bisimulation on `c` as a relation matrix, computed by repeated
/// removal of pairs whose transitions are not related by the lifting.
std::vector<std::vector<bool>> greatest_bisimulation_pairwise(const Coalgebra& c);

/// Disjoint union; states of `b` are shifted by a.size() and prefixed `2:`
/// when names clash. Throws CoalgebraError when the functors differ.
Coalgebra disjoint_union(const Coalgebra& a, const Coalgebra& b);

Certificate bisimilar(const Coalgebra& c1, StateId s1, const Coalgebra& c2, StateId s2);

/// Quotient by bisimilarity. Classes are numbered by first occurrence and keep
/// the name and label of their first member.
Coalgebra minimize(const Coalgebra& c);

/// Decides e1 = e2 in the axiomatization through bisimilarity of the
/// synthesized coalgebras.
Certificate equiv(const Functor& g, const Expr& e1, const Expr& e2);

/// A representative that is syntactically equal for exactly the equivalent
/// G-expressions.
Expr canonical_form(const Functor& g, const Expr& e);

/// Renumbers the states of a minimal pointed coalgebra by an
/// isomorphism-invariant ranking; the point becomes state 0 only if it has
/// the lowest rank.
Coalgebra canonical_relabel(const Coalgebra& c);

std::string to_string(const Certificate& cert, const Coalgebra& c1, StateId s1, const Coalgebra& c2, StateId s2);

}  // namespace coexpr
