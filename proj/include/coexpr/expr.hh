#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "coexpr/functor.hh"

namespace coexpr {

/// Declaration order is the constructor rank of the term order.
enum class ExprKind : std::uint8_t { Empty, LatElem, Var, ProdL, ProdR, SumL, SumR, Act, Single, Plus, Mu };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

/// Immutable expression node. `name` is the variable, binder, letter or
/// lattice element; `a` holds the only child (the left one for Plus, the body
/// for Mu) and `b` the right child of Plus.
struct ExprNode {
  ExprKind kind;
  std::string name;
  Expr a;
  Expr b;
  std::size_t hash = 0;
  std::vector<std::string> free;  // sorted, unique
};

Expr mk_empty();
Expr mk_var(std::string name);
Expr mk_plus(Expr left, Expr right);
Expr mk_mu(std::string binder, Expr body);
Expr mk_elem(std::string element);
Expr mk_prod_l(Expr inner);
Expr mk_prod_r(Expr inner);
Expr mk_sum_l(Expr inner);
Expr mk_sum_r(Expr inner);
Expr mk_act(std::string letter, Expr inner);
Expr mk_single(Expr inner);
/// Rebuilds `e` with new children, keeping kind and name.
Expr with_children(const Expr& e, Expr a, Expr b = nullptr);

/// Right-nested sum; the empty sum is Empty.
Expr mk_sum_of(const std::vector<Expr>& summands);

bool is_guard(ExprKind k);

/// Raw AST equality (no alpha-conversion).
bool expr_equal(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e->hash; }
};
struct ExprEq {
  bool operator()(const Expr& a, const Expr& b) const { return expr_equal(a, b); }
};

/// Total order: constructor rank first, then names and children.
int compare(const Expr& a, const Expr& b, const TermOrder& order);

struct ExprLess {
  const TermOrder* order;
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b, *order) < 0; }
};

std::string to_string(const Expr& e);
Expr parse_expr(std::string_view text);

inline const std::vector<std::string>& free_vars(const Expr& e) { return e->free; }
inline bool is_closed(const Expr& e) { return e->free.empty(); }
bool occurs_free(const Expr& e, std::string_view x);

enum class SubstMode { capture_avoiding, syntactic };

/// e[r/x]. Capture-avoiding mode renames binders to fresh `_vN` names;
/// syntactic mode replaces textually and lets binders of `e` capture free
/// variables of `r`.
Expr substitute(const Expr& e, const std::string& x, const Expr& r, SubstMode mode = SubstMode::capture_avoiding);

/// e[mu x.e/x] for `mu_e` = mu x.e.
Expr unfold(const Expr& mu_e);

struct Judgment {
  Expr expr;
  Functor ing;
  Functor ambient;
};

struct TypeCheckResult {
  bool ok = true;
  std::string message;
  explicit operator bool() const noexcept { return ok; }
};

/// Decides |- e : F <| G together with closedness and guardedness.
TypeCheckResult typecheck(const Expr& e, const Functor& f, const Functor& g);
inline TypeCheckResult typecheck(const Judgment& j) { return typecheck(j.expr, j.ing, j.ambient); }

/// Variables with a free occurrence in `e` that lies under no guard.
std::vector<std::string> unguarded_vars(const Expr& e);
/// Every binder's variable is guarded in its body.
bool is_guarded(const Expr& e);

std::size_t measure_n(const Expr& e);

/// Subformulas and mu-unfoldings of e, in discovery order.
std::vector<Expr> closure_cl(const Expr& e);

/// Number of nodes of the tree (not the DAG), saturating at SIZE_MAX.
std::size_t tree_size(const Expr& e);

}  // namespace coexpr
