#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coexpr/coalgebra.hh"
#include "coexpr/expr.hh"
#include "coexpr/functor.hh"
#include "coexpr/instances.hh"
#include "coexpr/lattice.hh"

namespace coexpr {

/// Lattices, one functor and named expressions read from a spec file.
struct SpecDocument {
  LatticeRegistry lattices;
  Functor functor;
  /// Set when the functor came from a `preset` line.
  std::string preset;
  PresetParams preset_params;
  std::vector<std::pair<std::string, Expr>> exprs;

  Expr find_expr(std::string_view name) const;
};

/// Statements, one per line (a line continues while braces are open):
///   lattice NAME = {e1, e2, ...} bottom E join { x y = z, ... }
///   lattice NAME = powerset(a1, a2, ...)
///   functor <functor DSL>
///   preset NAME {letters} [output LATTICE] [atoms {a1, ...}]
///   expr NAME = <expression>
/// `#` at the start of a line starts a comment. Join entries for x v x,
/// bottom v x and the mirror of a listed pair are filled in.
SpecDocument parse_spec(std::string_view text);
SpecDocument read_spec_file(const std::string& path);

std::string read_text_file(const std::string& path);

/// Coalgebra document with fields functor, lattices, states, transition and
/// the optional point and labels.
Coalgebra parse_coalgebra(std::string_view json_text);
Coalgebra read_coalgebra(const std::string& path);
std::string write_coalgebra(const Coalgebra& c, int indent = 2);

/// FValue document encoding of a value over expressions.
std::string fvalue_to_json(const FValue<Expr>& v, int indent = -1);

/// Graphviz rendering; nodes in breadth-first order from the point.
std::string write_dot(const Coalgebra& c);

}  // namespace coexpr
