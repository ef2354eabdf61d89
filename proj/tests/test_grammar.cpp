#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "generators.hpp"
#include "ksmin/bisim.hpp"
#include "ksmin/grammar.hpp"
#include "ksmin/minimize.hpp"
#include "testutil.hpp"

using namespace ksmin;
using testutil::error_code_of;

namespace {

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

// Initial states of k1 and k2 match both ways under the k-step approximant.
bool init_related(const KripkeStructure& k1, const KripkeStructure& k2, int k) {
  BisimRelation r = k_approximant(k1, k2, k);
  for (int s : k1.init()) {
    bool matched = false;
    for (int t : k2.init()) matched = matched || r.contains(k1.state_name(s), k2.state_name(t));
    if (!matched) return false;
  }
  for (int t : k2.init()) {
    bool matched = false;
    for (int s : k1.init()) matched = matched || r.contains(k1.state_name(s), k2.state_name(t));
    if (!matched) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("the mod-5 chain grammar parses and validates") {
  GraphGrammar g = fixtures::g3();
  CHECK(g.n() == 1);
  CHECK(g.exits() == std::vector<std::string>{"ex1"});
  CHECK(g.ins() == std::vector<std::string>{"in1"});
  CHECK(g.outs() == std::vector<std::string>{"out1"});
  CHECK(g.g0().init == std::vector<std::string>{"c0"});
}

TEST_CASE("validation reports the boundary with mismatching labels") {
  std::string broken = replace_once(fixtures::kG3, "state out1 : p0", "state out1 : p1");
  try {
    parse_grammar(broken);
    FAIL("expected a label constraint error");
  } catch (const error& e) {
    CHECK(e.code() == errc::label_constraint);
    CHECK(std::string(e.what()).find("boundary 1") != std::string::npos);
    CHECK(std::string(e.what()).find("{p0}") != std::string::npos);
    CHECK(std::string(e.what()).find("{p1}") != std::string::npos);
  }
}

TEST_CASE("validation rejects restriction violations") {
  // An out state with an outgoing edge. Folding such a grammar would lose
  // the edge or misattach it, so it is rejected up front.
  std::string out_edge = std::string(fixtures::kG3) + "trans out1 -> a1\n";
  CHECK(error_code_of([&] { parse_grammar(out_edge); }) == errc::restriction);
  // An exit stepping back into g0.
  std::string exit_edge = replace_once(fixtures::kG3, "exit 1 ex1", "trans ex1 -> c0\nexit 1 ex1");
  CHECK(error_code_of([&] { parse_grammar(exit_edge); }) == errc::restriction);
  // Exit-to-exit edges act at every splice level of the fold but only at
  // level zero of the unfolding; also rejected.
  std::string exit_loop = replace_once(fixtures::kG3, "exit 1 ex1", "trans ex1 -> ex1\nexit 1 ex1");
  CHECK(error_code_of([&] { parse_grammar(exit_loop); }) == errc::restriction);
}

TEST_CASE("validation rejects distinctness and arity violations") {
  std::string shared = replace_once(fixtures::kG3, "out 1 out1", "out 1 in1");
  CHECK(error_code_of([&] { parse_grammar(shared); }) == errc::distinctness);

  std::string missing = replace_once(fixtures::kG3, "grammar 1", "grammar 2");
  CHECK(error_code_of([&] { parse_grammar(missing); }) == errc::arity_mismatch);

  std::string bad_index = replace_once(fixtures::kG3, "exit 1 ex1", "exit 3 ex1");
  CHECK(error_code_of([&] { parse_grammar(bad_index); }) == errc::arity_mismatch);
}

TEST_CASE("folding the mod-5 grammar gives the ten-state cycle with a tail") {
  KripkeStructure k = fold(fixtures::g3());
  CHECK(k.state_count() == 10);
  auto succ_names = [&](const std::string& s) {
    std::vector<std::string> out;
    for (int t : k.successors(k.index_of(s))) out.push_back(k.state_name(t));
    return out;
  };
  CHECK(succ_names("c4") == std::vector<std::string>{"ex1"});
  CHECK(succ_names("ex1") == std::vector<std::string>{"A.a1"});
  CHECK(succ_names("A.a4") == std::vector<std::string>{"ex1"});
  CHECK(k.label_names(k.index_of("A.a2")) == std::vector<std::string>{"p2"});
  CHECK(k.init() == std::vector<int>{k.index_of("c0")});
}

TEST_CASE("a direct in-to-out rule edge folds to an exit self-loop") {
  GraphGrammar g = parse_grammar(
      "grammar 1\n"
      "aps a b\n"
      "section g0\n"
      "state i0 : a\n"
      "state e1 : b\n"
      "init i0\n"
      "trans i0 -> e1\n"
      "exit 1 e1\n"
      "section rule\n"
      "state in1 : b\n"
      "state out1 : b\n"
      "trans in1 -> out1\n"
      "in 1 in1\n"
      "out 1 out1\n");
  KripkeStructure k = fold(g);
  CHECK(k.state_count() == 2);
  int e1 = k.index_of("e1");
  CHECK(k.successors(e1) == std::vector<int>{e1});
}

TEST_CASE("fold detects renamed-state collisions") {
  // A g0 state that already carries the rule prefix collides with the
  // renamed rule interior.
  GrammarDraft draft;
  draft.n = 1;
  draft.aps = {"p"};
  draft.g0.states = {"A.r", "e"};
  draft.g0.labels["A.r"] = {"p"};
  draft.g0.labels["e"] = {};
  draft.g0.trans["A.r"] = {"e"};
  draft.g0.init = {"A.r"};
  draft.exits = {"e"};
  draft.rule.states = {"i", "r", "o"};
  draft.rule.labels["i"] = {};
  draft.rule.labels["r"] = {"p"};
  draft.rule.labels["o"] = {};
  draft.rule.trans["i"] = {"r"};
  draft.rule.trans["r"] = {"o"};
  draft.ins = {"i"};
  draft.outs = {"o"};
  GraphGrammar g(draft);
  CHECK(error_code_of([&] { fold(g); }) == errc::name_collision);
}

TEST_CASE("minimizing the folded mod-5 grammar yields the five-cycle") {
  KripkeStructure m = minimize(fold(fixtures::g3()));
  CHECK(are_isomorphic(m, fixtures::f3()));
}

TEST_CASE("every fold of a valid random grammar validates and connects") {
  gen::Rng rng(120);
  for (int i = 0; i < 50; ++i) {
    GraphGrammar g = gen::random_grammar(rng, 8, 2);
    KripkeStructure k = fold(g);  // construction validates
    CHECK(is_connected(restrict_reachable(k)));
  }
}

TEST_CASE("unfolding once appends one renamed rule copy") {
  KripkeStructure k = unfold(fixtures::g3(), 1);
  CHECK(k.state_count() == 11);
  auto succ_names = [&](const std::string& s) {
    std::vector<std::string> out;
    for (int t : k.successors(k.index_of(s))) out.push_back(k.state_name(t));
    return out;
  };
  CHECK(succ_names("ex1") == std::vector<std::string>{"A1.a1"});
  CHECK(succ_names("A1.a4") == std::vector<std::string>{"A1.out1"});
  // Truncation closes the frontier with a self-loop that keeps the label.
  CHECK(succ_names("A1.out1") == std::vector<std::string>{"A1.out1"});
  CHECK(k.label_names(k.index_of("A1.out1")) == std::vector<std::string>{"p0"});
}

TEST_CASE("unfold state count follows the closed form") {
  // |G0| + depth * (|A| - N): each copy adds every rule state except the
  // ins, which alias the previous frontier.
  gen::Rng rng(121);
  for (int i = 0; i < 30; ++i) {
    GraphGrammar g = gen::random_grammar(rng, 7, 2);
    for (int depth = 1; depth <= 3; ++depth) {
      KripkeStructure k = unfold(g, depth);
      std::size_t expected = g.g0().states.size() +
                             static_cast<std::size_t>(depth) *
                                 (g.rule().states.size() - static_cast<std::size_t>(g.n()));
      CHECK(k.state_count() == expected);
    }
  }
}

TEST_CASE("fold and unfold agree to depth just below the copy count") {
  GraphGrammar g3 = fixtures::g3();
  KripkeStructure folded = fold(g3);
  KripkeStructure unfolded = unfold(g3, 4);
  for (int k = 0; k <= 3; ++k) CHECK(init_related(folded, unfolded, k));

  gen::Rng rng(122);
  for (int i = 0; i < 15; ++i) {
    GraphGrammar g = gen::random_grammar(rng, 6, 2);
    KripkeStructure f = fold(g);
    KripkeStructure u = unfold(g, 4);
    for (int k = 0; k <= 3; ++k) CHECK(init_related(f, u, k));
  }
}
