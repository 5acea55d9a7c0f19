#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "coexpr/expr.hh"
#include "coexpr/functor.hh"
#include "coexpr/lattice.hh"

namespace coexpr {

// ---- presets --------------------------------------------------------------

struct PresetParams {
  std::vector<std::string> alphabet;
  /// Atoms of the test algebra (guarded only).
  std::vector<std::string> atoms;
  /// Output lattice for mealy; bool2 when null.
  Lattice output;
};

struct Preset {
  std::string name;
  Functor functor;
  /// Lattices the functor uses that are not built in.
  std::vector<Lattice> lattices;
};

/// dfa, partial, nfa, mealy, lts or guarded. Throws FunctorError for unknown
/// names or missing parameters.
Preset make_preset(std::string_view name, const PresetParams& params);
std::vector<std::string> preset_names();

/// Letters `atom.action` of the guarded-string alphabet, atoms outermost.
std::vector<std::string> guarded_letters(const std::vector<std::string>& atoms, const std::vector<std::string>& actions);

// ---- classical regular expressions ----------------------------------------

enum class RegexKind { Zero, One, Letter, Sum, Cat, Star };

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

struct RegexNode {
  RegexKind kind;
  std::string letter;
  Regex a;
  Regex b;
};

Regex re_zero();
Regex re_one();
Regex re_letter(std::string a);
Regex re_sum(Regex a, Regex b);
Regex re_cat(Regex a, Regex b);
Regex re_star(Regex a);

/// `0`, `1`, single-character letters, `+`, juxtaposition or `.`, postfix `*`.
Regex parse_regex(std::string_view text);
std::string to_string(const Regex& r);
bool regex_equal(const Regex& a, const Regex& b);

bool nullable(const Regex& r);
/// Classical Brzozowski derivative with respect to one letter.
Regex brzozowski(const Regex& r, const std::string& a);
bool regex_accepts(const Regex& r, const std::vector<std::string>& word);

/// Translation into deterministic expressions. Stars of nullable regexes
/// iterate the nullable-free part so that the result stays guarded.
Expr regex_to_det(const Regex& r);
/// Translation back via equation solving; `d` is the deterministic functor
/// the expression is checked against.
Regex det_to_regex(const Functor& d, const Expr& e);

/// Runs delta letter by letter and reads the output component at the end.
bool det_accepts(const Functor& d, const Expr& e, const std::vector<std::string>& word);

/// Splits `ab` into letters, or `a,b` at commas.
std::vector<std::string> split_word(std::string_view text);

// ---- labelled transition systems ------------------------------------------

enum class LtsKind { Nil, Sum, Prefix, Dead, Tick, Mu, Var };

struct LtsNode;
using LtsTerm = std::shared_ptr<const LtsNode>;

struct LtsNode {
  LtsKind kind;
  std::string name;  // action, variable or binder
  LtsTerm a;
  LtsTerm b;
};

LtsTerm lts_nil();
LtsTerm lts_dead();
LtsTerm lts_tick();
LtsTerm lts_sum(LtsTerm a, LtsTerm b);
LtsTerm lts_prefix(std::string action, LtsTerm p);
LtsTerm lts_mu(std::string x, LtsTerm p);
LtsTerm lts_var(std::string x);

/// `nil`, `dead`, `tick`, `a.P`, `P + P`, `mu x. P`, `x`, parentheses.
LtsTerm parse_lts(std::string_view text);
std::string to_string(const LtsTerm& p);
bool lts_equal(const LtsTerm& a, const LtsTerm& b);

/// Throws TypeError for free or unguarded variables.
Expr lts_to_core(const LtsTerm& p);
/// Throws TypeError for expressions outside the LTS grammar.
LtsTerm core_to_lts(const Expr& e);

// ---- guarded strings ------------------------------------------------------

enum class GsKind { Nil, Out, Sum, Guard, Mu, Var };

struct GsNode;
using GsTerm = std::shared_ptr<const GsNode>;

struct GsNode {
  GsKind kind;
  std::string test;  // lattice element for Out and Guard
  std::string name;  // action for Guard, variable or binder otherwise
  GsTerm a;
  GsTerm b;
};

GsTerm gs_nil();
GsTerm gs_out(std::string b);
GsTerm gs_sum(GsTerm a, GsTerm b);
GsTerm gs_guard(std::string b, std::string action, GsTerm p);
GsTerm gs_mu(std::string x, GsTerm p);
GsTerm gs_var(std::string x);

/// `nil`, `<b>`, `P + P`, `b -> a.P`, `mu x. P`, `x`, parentheses.
GsTerm parse_gs(std::string_view text);
std::string to_string(const GsTerm& p);

/// `tests` is the powerset lattice over `atoms`. Throws TypeError for unknown
/// tests or actions and for free or unguarded variables.
Expr gs_to_core(const GsTerm& p, const JoinSemilattice& tests, const std::vector<std::string>& atoms,
                const std::vector<std::string>& actions);

}  // namespace coexpr
