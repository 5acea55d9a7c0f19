#include <catch_amalgamated.hpp>

#include <algorithm>

#include "coexpr/equivalence.hh"
#include "coexpr/extraction.hh"
#include "coexpr/instances.hh"
#include "coexpr/io.hh"
#include "coexpr/synthesis.hh"
#include "generators.hh"

using namespace coexpr;
using coexpr::testing::Rng;

namespace {

Coalgebra load(const std::string& file) { return read_coalgebra(std::string(COEXPR_DATA_DIR) + "/" + file); }

std::string var(StateId s) { return "x" + std::to_string(s + 1); }

}  // namespace

TEST_CASE("gamma clauses") {
  Functor d = make_preset("dfa", {.alphabet = {"a", "b"}}).functor;
  StateValue v = StateValue::pair(StateValue::constant(JoinSemilattice::bool2(), 0),
                                  StateValue::fun({"a", "b"}, {StateValue::carrier(1), StateValue::carrier(0)}));
  CHECK(acie_alpha_equal(gamma_of(d, v, var), parse_expr("l<#0> + r<b(x1) + a(x2)>")));
  Functor sum = parse_functor("const(unit) (+) Id", LatticeRegistry());
  CHECK(to_string(gamma_of(sum, StateValue::bot(), var)) == "empty");
  CHECK(to_string(gamma_of(sum, StateValue::top(), var)) == "l[empty] + r[empty]");
  Functor pw = parse_functor("Pow(Id)", LatticeRegistry());
  TermOrder plain;
  CHECK(to_string(gamma_of(pw, StateValue::set({}, FValueCmp<StateId>{&plain}), var)) == "empty");
  CHECK_THROWS_AS(gamma_of(d, StateValue::bot(), var), ShapeError);
}

TEST_CASE("extraction of the deterministic example") {
  Coalgebra c = load("dfa_example.json");
  Expr e = extract(c, c.require_state("s1"));
  CHECK(acie_alpha_equal(e, parse_expr("mu x1. l<#0> + r<a(mu x2. l<#1> + r<a(x2) + b(x2)>) + b(x1)>")));
  CHECK(bisimilar(c, 0, synthesize(c.functor, e), 0).bisimilar);
}

TEST_CASE("extraction of the partial example") {
  Coalgebra c = load("partial_example.json");
  Expr e = extract(c, c.require_state("q1"));
  CHECK(acie_alpha_equal(e, parse_expr("mu x1. a(r[mu x2. a(l[#*]) + b(r[x2])]) + b(l[#*])")));
  CHECK(bisimilar(c, 0, synthesize(c.functor, e), 0).bisimilar);
}

TEST_CASE("extraction of the three-state nondeterministic example") {
  Coalgebra c = load("nfa_example.json");
  Extraction x = extract_all(c, c.require_state("s1"));
  REQUIRE(x.expressions.size() == 3);
  REQUIRE(c.names[x.states[1]] == "s2");
  const Expr& s2 = x.expressions[1];
  const Expr& s3 = x.expressions[2];
  CHECK(acie_alpha_equal(s3, parse_expr("mu x3. l<#1> + r<a({mu x1. l<#0> + r<a({x1} + {mu x2. l<#0> + "
                                        "r<a({x2} + {x3})>} + {x3})>} + {x3})>")));
  const Expr a_s3 = mk_act("a", mk_plus(mk_single(mk_var("x2")), mk_single(s3)));
  CHECK(acie_alpha_equal(s2, mk_mu("x2", mk_plus(mk_prod_l(mk_elem("0")), mk_prod_r(a_s3)))));
  const Expr a_s1 =
      mk_act("a", mk_plus(mk_single(mk_var("x1")), mk_plus(mk_single(s2), mk_single(s3))));
  CHECK(acie_alpha_equal(x.expressions[0], mk_mu("x1", mk_plus(mk_prod_l(mk_elem("0")), mk_prod_r(a_s1)))));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(bisimilar(c, x.states[i], synthesize(c.functor, x.expressions[i]), 0).bisimilar);
}

TEST_CASE("extraction from a state reaches its whole component") {
  Coalgebra c = load("nfa_example.json");
  Extraction x = extract_all(c, c.require_state("s2"));
  CHECK(x.states.size() == 3);
  CHECK(x.variables == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("extraction over the identity functor gives empty") {
  Coalgebra c;
  c.functor = make_id();
  c.names = {"s1", "s2"};
  c.transition = {StateValue::carrier(1), StateValue::carrier(0)};
  CHECK(to_string(extract(c, 0)) == "empty");
}

TEST_CASE("extraction errors") {
  Coalgebra c = load("dfa_example.json");
  CHECK_THROWS_AS(c.require_state("nope"), CoalgebraError);
  CHECK_THROWS(extract_all(c, 0, std::vector<StateId>{1}));
}

TEST_CASE("extracted expressions are closed, typed and bisimilar") {
  Rng rng(31);
  for (const char* p : {"dfa", "partial", "nfa", "mealy", "lts", "guarded"}) {
    Functor g = coexpr::testing::preset_functor(p, rng);
    for (int i = 0; i < 15; ++i) {
      Coalgebra c = coexpr::testing::random_coalgebra(g, static_cast<StateId>(coexpr::testing::pick(rng, 1, 4)), rng);
      for (StateId s = 0; s < c.size(); ++s) {
        Expr e = extract(c, s);
        CHECK(is_closed(e));
        CHECK(typecheck(e, g, g).ok);
        CHECK(bisimilar(c, s, synthesize(g, e), 0).bisimilar);
      }
    }
  }
}

TEST_CASE("extraction does not depend on the enumeration up to equivalence") {
  Rng rng(32);
  for (const char* p : {"dfa", "nfa", "partial"}) {
    Functor g = coexpr::testing::preset_functor(p, rng);
    for (int i = 0; i < 15; ++i) {
      Coalgebra c = coexpr::testing::random_coalgebra(g, 4, rng);
      std::vector<StateId> order = bfs_order(c, 0);
      std::shuffle(order.begin() + 1, order.end(), rng);
      Expr e1 = extract_all(c, 0).expressions[0];
      Expr e2 = extract_all(c, 0, order).expressions[0];
      CHECK(equiv(g, e1, e2).bisimilar);
    }
  }
}

TEST_CASE("deterministic states decompose into output and successors") {
  Rng rng(33);
  Functor g = make_preset("dfa", {.alphabet = {"a", "b"}}).functor;
  for (int i = 0; i < 20; ++i) {
    Coalgebra c = coexpr::testing::random_coalgebra(g, 4, rng);
    for (StateId s = 0; s < c.size(); ++s) {
      const StateValue& v = c.transition[s];
      Expr succ = mk_plus(mk_act("a", extract(c, v.kids[1].at("a").item)), mk_act("b", extract(c, v.kids[1].at("b").item)));
      Expr rhs = mk_plus(mk_prod_l(mk_elem(v.kids[0].lattice->element(v.kids[0].element))), mk_prod_r(succ));
      CHECK(equiv(g, extract(c, s), rhs).bisimilar);
    }
  }
}
