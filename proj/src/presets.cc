#include <algorithm>

#include "coexpr/error.hh"
#include "coexpr/instances.hh"

namespace coexpr {

std::vector<std::string> preset_names() { return {"dfa", "partial", "nfa", "mealy", "lts", "guarded"}; }

std::vector<std::string> guarded_letters(const std::vector<std::string>& atoms, const std::vector<std::string>& actions) {
  std::vector<std::string> out;
  for (const auto& t : atoms)
    for (const auto& a : actions) out.push_back(t + "." + a);
  return out;
}

Preset make_preset(std::string_view name, const PresetParams& p) {
  if (p.alphabet.empty()) throw FunctorError("preset " + std::string(name) + " needs an alphabet");
  Preset out;
  out.name = std::string(name);
  const Functor id = make_id();
  if (name == "dfa") {
    out.functor = make_product(make_const(JoinSemilattice::bool2()), make_exp(id, p.alphabet));
  } else if (name == "partial") {
    out.functor = make_exp(make_sum(make_const(JoinSemilattice::unit()), id), p.alphabet);
  } else if (name == "nfa") {
    out.functor = make_product(make_const(JoinSemilattice::bool2()), make_exp(make_pow(id), p.alphabet));
  } else if (name == "mealy") {
    Lattice b = p.output ? p.output : JoinSemilattice::bool2();
    if (b->name() != "bool2" && b->name() != "unit") out.lattices.push_back(b);
    out.functor = make_exp(make_product(make_const(b), id), p.alphabet);
  } else if (name == "lts") {
    out.functor = make_sum(make_const(JoinSemilattice::unit()), make_exp(make_pow(id), p.alphabet));
  } else if (name == "guarded") {
    if (p.atoms.empty()) throw FunctorError("preset guarded needs atoms");
    Lattice b = JoinSemilattice::powerset("B", p.atoms);
    out.lattices.push_back(b);
    out.functor = make_product(make_const(b), make_exp(id, guarded_letters(p.atoms, p.alphabet)));
  } else {
    throw FunctorError("unknown preset '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace coexpr
