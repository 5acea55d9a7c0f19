#pragma once

#include <cstddef>
#include <unordered_map>

#include "coexpr/coalgebra.hh"
#include "coexpr/expr.hh"
#include "coexpr/functor.hh"

namespace coexpr {

/// ACIE normal form with a memo table keyed by node identity. The table keeps
/// its keys alive, so reuse one instance across many related terms.
class AcieNormalizer {
 public:
  explicit AcieNormalizer(TermOrder order = TermOrder()) : order_(std::move(order)) {}

  Expr operator()(const Expr& e);
  const TermOrder& order() const noexcept { return order_; }

 private:
  void flatten(const Expr& e, std::vector<Expr>& out);

  TermOrder order_;
  std::unordered_map<const ExprNode*, std::pair<Expr, Expr>> memo_;
};

/// Flattens sums, drops Empty summands, removes duplicates and sorts by the
/// term order, under binders too.
Expr acie_normal_form(const Expr& e, const TermOrder& order = TermOrder());

/// Renames every binder to `_dK`, K its nesting depth, so that
/// alpha-equivalent terms become identical.
Expr alpha_normalize(const Expr& e);

/// Equality up to ACIE and renaming of bound variables.
bool acie_alpha_equal(const Expr& a, const Expr& b, const TermOrder& order = TermOrder());

struct SynthesisOptions {
  /// Abort with CoalgebraError once this many states exist (0: unlimited).
  std::size_t max_states = 0;
};

/// The subcoalgebra of expressions modulo ACIE generated by e. States are
/// named q0, q1, ... in discovery order; q0 is the point. Throws TypeError
/// unless e is a G-expression.
Coalgebra synthesize(const Functor& g, const Expr& e, const SynthesisOptions& options = {});

}  // namespace coexpr
