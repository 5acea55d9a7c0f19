#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "coexpr/lattice.hh"

namespace coexpr {

enum class FunctorKind { Id, Const, Product, Sum, Exp, Pow };

struct FunctorNode;
using Functor = std::shared_ptr<const FunctorNode>;

/// Immutable functor AST node. `left` is also the base of Exp and Pow;
/// `right` is only set for Product and Sum. Sum is always the biased sum.
struct FunctorNode {
  FunctorKind kind;
  Lattice lattice;
  Functor left;
  Functor right;
  std::vector<std::string> alphabet;
};

Functor make_id();
Functor make_const(Lattice lattice);
Functor make_product(Functor left, Functor right);
Functor make_sum(Functor left, Functor right);
/// Throws FunctorError on an empty alphabet or repeated letters.
Functor make_exp(Functor base, std::vector<std::string> alphabet);
Functor make_pow(Functor base);

bool functor_equal(const Functor& a, const Functor& b);
std::string to_string(const Functor& f);

/// Parses the functor DSL. Lattice names are resolved against `lattices`.
Functor parse_functor(std::string_view text, const LatticeRegistry& lattices);

/// Every F with F ingredient-of G, without duplicates, G first.
std::vector<Functor> ingredients(const Functor& g);
bool ingredient_check(const Functor& f, const Functor& g);

/// Every lattice a Const in `g` refers to, in first-occurrence order.
std::vector<Lattice> functor_lattices(const Functor& g);

/// Ranks used to order letters and lattice elements inside expressions.
/// Letters and elements are ranked by first occurrence in the functor; names
/// the functor does not know sort after all known ones, by name.
class TermOrder {
 public:
  TermOrder() = default;
  explicit TermOrder(const Functor& g);

  int compare_letters(const std::string& a, const std::string& b) const;
  int compare_elements(const std::string& a, const std::string& b) const;

 private:
  static int compare_ranked(const std::map<std::string, std::size_t, std::less<>>& ranks,
                            const std::string& a, const std::string& b);
  std::map<std::string, std::size_t, std::less<>> letter_rank_;
  std::map<std::string, std::size_t, std::less<>> element_rank_;
};

}  // namespace coexpr
