#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "ksmin/ctl.hpp"
#include "ksmin/minimize.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace ksmin;
using Kind = CtlFormula::Kind;
using testutil::error_code_of;

TEST_CASE("parsing follows the declared precedence") {
  CtlFormula::Ptr f = parse_formula("AG p");
  CHECK(f->kind == Kind::ag);
  CHECK(f->lhs->kind == Kind::atom);
  CHECK(f->lhs->name == "p");

  f = parse_formula("E[p U q] & !EX r");
  CHECK(f->kind == Kind::conjunction);
  CHECK(f->lhs->kind == Kind::eu);
  CHECK(f->rhs->kind == Kind::negation);
  CHECK(f->rhs->lhs->kind == Kind::ex);

  f = parse_formula("p -> q -> r");
  CHECK(f->kind == Kind::implication);
  CHECK(f->lhs->kind == Kind::atom);
  CHECK(f->rhs->kind == Kind::implication);

  f = parse_formula("p | q & r");
  CHECK(f->kind == Kind::disjunction);
  CHECK(f->rhs->kind == Kind::conjunction);
}

TEST_CASE("parse errors carry a position") {
  CHECK(error_code_of([] { parse_formula("p &"); }) == errc::syntax);
  CHECK(error_code_of([] { parse_formula("E[p q]"); }) == errc::syntax);
  CHECK(error_code_of([] { parse_formula("p @ q"); }) == errc::syntax);
  CHECK(error_code_of([] { parse_formula("U"); }) == errc::syntax);
  CHECK(error_code_of([] { parse_formula("(p"); }) == errc::syntax);
  CHECK(error_code_of([] { parse_formula("p q"); }) == errc::syntax);
}

TEST_CASE("printing and reparsing is the identity") {
  gen::Rng rng(130);
  std::vector<std::string> atoms = {"p", "q", "r"};
  for (int i = 0; i < 200; ++i) {
    CtlFormula::Ptr f = gen::random_formula(rng, atoms, 4);
    CHECK(formulas_equal(parse_formula(to_string(f)), f));
  }
}

TEST_CASE("satisfaction sets on the worked examples") {
  KripkeStructure f1 = fixtures::f1();
  CHECK(sat_set(f1, parse_formula("a")) == std::vector<int>{f1.index_of("s1")});
  CHECK(sat_set(f1, parse_formula("AG (a | b)")) == std::vector<int>{0, 1});
  CHECK(sat_set(f1, parse_formula("true")).size() == f1.state_count());
  CHECK(sat_set(f1, parse_formula("false")).empty());

  CHECK(models(f1, parse_formula("a")));
  CHECK_FALSE(models(f1, parse_formula("b")));
  CHECK(models(fixtures::f3(), parse_formula("AG EF p0")));

  CHECK(error_code_of([&] { sat_set(f1, parse_formula("nope")); }) ==
        errc::unknown_proposition);
}

TEST_CASE("fixpoint sanity: until contains its goal, invariance stays inside") {
  gen::Rng rng(131);
  for (int i = 0; i < 50; ++i) {
    KripkeStructure k = gen::random_kripke(rng, 6, 2);
    CtlFormula::Ptr f = gen::random_formula(rng, k.atoms().names(), 2);
    CtlFormula::Ptr g = gen::random_formula(rng, k.atoms().names(), 2);
    std::vector<int> until = sat_set(k, CtlFormula::binary(Kind::eu, f, g));
    for (int s : sat_set(k, g)) {
      CHECK(std::binary_search(until.begin(), until.end(), s));
    }
    std::vector<int> inside = sat_set(k, f);
    for (int s : sat_set(k, CtlFormula::unary(Kind::eg, f))) {
      CHECK(std::binary_search(inside.begin(), inside.end(), s));
    }
  }
}

TEST_CASE("dualities hold pointwise") {
  gen::Rng rng(132);
  for (int i = 0; i < 60; ++i) {
    KripkeStructure k = gen::random_kripke(rng, 6, 2);
    CtlFormula::Ptr f = gen::random_formula(rng, k.atoms().names(), 3);
    CHECK(sat_set(k, CtlFormula::unary(Kind::ax, f)) ==
          sat_set(k, CtlFormula::unary(
                         Kind::negation,
                         CtlFormula::unary(Kind::ex, CtlFormula::unary(Kind::negation, f)))));
  }
}

TEST_CASE("labeling agrees with the path-enumeration oracle") {
  gen::Rng rng(133);
  for (int i = 0; i < 120; ++i) {
    KripkeStructure k = gen::random_kripke(rng, 5, 2);
    CtlFormula::Ptr f = gen::random_formula(rng, k.atoms().names(), 3);
    std::vector<bool> expected = oracle::ctl_sat(k, f);
    std::vector<int> got = sat_set(k, f);
    for (std::size_t s = 0; s < k.state_count(); ++s) {
      CHECK(std::binary_search(got.begin(), got.end(), static_cast<int>(s)) == expected[s]);
    }
  }
}

TEST_CASE("the all-paths-until identity matches path enumeration") {
  gen::Rng rng(134);
  for (int i = 0; i < 60; ++i) {
    KripkeStructure k = gen::random_kripke(rng, 5, 2);
    CtlFormula::Ptr f = gen::random_formula(rng, k.atoms().names(), 2);
    CtlFormula::Ptr g = gen::random_formula(rng, k.atoms().names(), 2);
    CtlFormula::Ptr au = CtlFormula::binary(Kind::au, f, g);
    std::vector<bool> expected = oracle::ctl_sat(k, au);
    std::vector<int> got = sat_set(k, au);
    for (std::size_t s = 0; s < k.state_count(); ++s) {
      CHECK(std::binary_search(got.begin(), got.end(), static_cast<int>(s)) == expected[s]);
    }
  }
}

TEST_CASE("satisfaction transports through minimization") {
  gen::Rng rng(135);
  for (int i = 0; i < 40; ++i) {
    KripkeStructure k = gen::random_kripke(rng, 7, 3);
    CtlFormula::Ptr f = gen::random_formula(rng, k.atoms().names(), 4);
    MinimizeReport report = minimize_with_report(k);
    CHECK(models(k, f) == models(report.result, f));
    std::vector<int> original = sat_set(report.restricted, f);
    std::vector<int> reduced = sat_set(report.result, f);
    for (std::size_t s = 0; s < report.restricted.state_count(); ++s) {
      int image = report.result.index_of(
          report.block_names[static_cast<std::size_t>(report.final_partition.block_of[s])]);
      CHECK(std::binary_search(original.begin(), original.end(), static_cast<int>(s)) ==
            std::binary_search(reduced.begin(), reduced.end(), image));
    }
  }
}
