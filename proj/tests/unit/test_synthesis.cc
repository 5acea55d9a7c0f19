#include <catch_amalgamated.hpp>

#include <algorithm>

#include "coexpr/derivative.hh"
#include "coexpr/instances.hh"
#include "coexpr/synthesis.hh"
#include "generators.hh"
#include "oracles.hh"

using namespace coexpr;
using coexpr::testing::Rng;

namespace {

Functor dfa(std::vector<std::string> letters = {"a", "b"}) { return make_preset("dfa", {.alphabet = letters}).functor; }

Coalgebra synth(const Functor& g, std::string_view e) { return synthesize(g, parse_expr(e)); }

}  // namespace

TEST_CASE("acie normal form") {
  TermOrder o;
  CHECK(to_string(acie_normal_form(parse_expr("empty + l<#1>"), o)) == "l<#1>");
  CHECK(to_string(acie_normal_form(parse_expr("empty + empty"), o)) == "empty");
  CHECK(expr_equal(acie_normal_form(parse_expr("l<#1> + (l<#0> + l<#1>)"), o),
                   acie_normal_form(parse_expr("l<#0> + l<#1>"), o)));
  CHECK(acie_alpha_equal(parse_expr("mu x. r<a(x + empty)>"), parse_expr("mu y. r<a(y)>"), o));
  CHECK_FALSE(acie_alpha_equal(parse_expr("mu x. r<a(x)>"), parse_expr("mu x. r<b(x)>"), o));
  CHECK(to_string(alpha_normalize(parse_expr("mu x. mu y. r<a(x + y)>"))) == "mu _d0. mu _d1. r<a(_d0 + _d1)>");
}

TEST_CASE("acie normal form is idempotent and preserves typing") {
  Rng rng(21);
  for (const char* p : {"dfa", "partial", "nfa", "mealy", "lts", "guarded"}) {
    Functor g = coexpr::testing::preset_functor(p, rng);
    const TermOrder o(g);
    for (int i = 0; i < 60; ++i) {
      Expr e = coexpr::testing::random_expr(g, 4, rng);
      Expr n = acie_normal_form(e, o);
      CHECK(expr_equal(acie_normal_form(n, o), n));
      CHECK(typecheck(n, g, g).ok);
    }
  }
}

TEST_CASE("synthesis goldens for deterministic automata") {
  Functor g = dfa();
  CHECK(synth(g, "empty").size() == 1);
  CHECK(synth(g, "l<#0>").size() == 2);
  CHECK(synth(g, "l<#1>").size() == 2);
  Coalgebra only_a = synth(g, "r<a(l<#1>)>");
  CHECK(only_a.size() == 3);
  for (const auto& w : coexpr::testing::words_up_to({"a", "b"}, 4))
    CHECK(coexpr::testing::dfa_accepts(only_a, 0, w) == (w == std::vector<std::string>{"a"}));
  Coalgebra plus = synth(g, "mu x. r<a(l<#0> + l<#1> + x)>");
  CHECK(plus.size() == 3);
  for (const auto& w : coexpr::testing::words_up_to({"a", "b"}, 6))
    CHECK(coexpr::testing::dfa_accepts(plus, 0, w) == (!w.empty() && std::ranges::count(w, "b") == 0));
  CHECK(synth(g, "mu x. r<a(x + mu y. r<a(y)>)>").size() == 3);
  // Over a single letter the empty sink is not reachable.
  CHECK(synth(dfa({"a"}), "mu x. r<a(x + mu y. r<a(y)>)>").size() == 2);
}

TEST_CASE("synthesized coalgebras are labelled by normal forms") {
  Coalgebra c = synth(dfa(), "mu x. r<a(x + mu y. r<a(y)>)>");
  REQUIRE(c.labels.size() == c.size());
  CHECK(c.point == StateId{0});
  CHECK(c.names == std::vector<std::string>{"q0", "q1", "q2"});
  CHECK(to_string(c.labels[2]) == "empty");
  validate_coalgebra(c);
}

TEST_CASE("synthesis of an inconsistent partial automaton reaches top") {
  Coalgebra c = synth(make_preset("partial", {.alphabet = {"a"}}).functor, "a(l[#*]) + a(r[empty])");
  REQUIRE(c.size() == 1);
  CHECK(c.transition[0].at("a").kind == FKind::Top);
}

TEST_CASE("synthesis rejects bad input and honours the state limit") {
  CHECK_THROWS_AS(synth(dfa(), "l[#1]"), TypeError);
  CHECK_THROWS_AS(synth(dfa(), "x"), TypeError);
  CHECK_THROWS_AS(synthesize(dfa(), parse_expr("mu x. r<a(l<#0> + l<#1> + x)>"), {.max_states = 2}), CoalgebraError);
}

TEST_CASE("synthesized transitions are normalized derivatives of the labels") {
  Rng rng(22);
  for (const char* p : {"dfa", "partial", "nfa", "mealy", "lts", "guarded"}) {
    Functor g = coexpr::testing::preset_functor(p, rng);
    const TermOrder o(g);
    for (int i = 0; i < 25; ++i) {
      Expr e = coexpr::testing::random_expr(g, 3, rng);
      Coalgebra c = synthesize(g, e);
      validate_coalgebra(c);
      CHECK(expr_equal(c.labels[0], acie_normal_form(e, o)));
      for (StateId s = 0; s < c.size(); ++s) {
        FValue<Expr> d = delta(g, g, c.labels[s]);
        auto img = fmap<StateId>(d, [&](const Expr& x) {
          Expr n = acie_normal_form(x, o);
          for (StateId t = 0; t < c.size(); ++t)
            if (expr_equal(c.labels[t], n)) return t;
          FAIL("successor label missing: " << to_string(n));
          return StateId{0};
        }, o);
        CHECK(fvalue_equal(img, c.transition[s]));
      }
      // Labels are pairwise distinct.
      for (StateId s = 0; s < c.size(); ++s)
        for (StateId t = s + 1; t < c.size(); ++t) CHECK_FALSE(expr_equal(c.labels[s], c.labels[t]));
    }
  }
}
