#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "ksmin/bisim.hpp"
#include "ksmin/minimize.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using namespace ksmin;
using testutil::error_code_of;

namespace {

BisimRelation identity_relation(const KripkeStructure& k) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& s : k.states()) pairs.emplace_back(s, s);
  return BisimRelation::from_pairs(std::move(pairs));
}

}  // namespace

TEST_CASE("identity is a bisimulation, label-crossing pairs are not") {
  KripkeStructure f1 = fixtures::f1();
  CHECK(is_bisimulation(f1, f1, identity_relation(f1)));
  CHECK_FALSE(is_bisimulation(f1, f1, BisimRelation::from_pairs({{"s1", "s2"}})));
  CHECK(error_code_of([&] {
          is_bisimulation(f1, f1, BisimRelation::from_pairs({{"s1", "nope"}}));
        }) == errc::dangling_reference);
}

TEST_CASE("is_bisimulation agrees with the clause-by-clause oracle") {
  gen::Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    KripkeStructure k1 = gen::random_kripke(rng, 6, 3);
    KripkeStructure k2 = gen::random_kripke(rng, 6, 3);
    BisimRelation r = gen::random_relation(rng, k1, k2);
    CHECK(is_bisimulation(k1, k2, r) == oracle::pair_check(k1, k2, r));
  }
}

TEST_CASE("largest_bisimulation on the two-state example is the identity") {
  KripkeStructure f1 = fixtures::f1();
  CHECK(largest_bisimulation(f1, f1) == identity_relation(f1));
}

TEST_CASE("largest_bisimulation on the five-state example relates evens and odds") {
  KripkeStructure f2 = fixtures::f2();
  BisimRelation expected = BisimRelation::from_pairs({
      {"s0", "s0"}, {"s0", "s2"}, {"s0", "s4"},
      {"s2", "s0"}, {"s2", "s2"}, {"s2", "s4"},
      {"s4", "s0"}, {"s4", "s2"}, {"s4", "s4"},
      {"s1", "s1"}, {"s1", "s3"}, {"s3", "s1"}, {"s3", "s3"},
  });
  BisimRelation got = largest_bisimulation(f2, f2);
  CHECK(got == expected);
  CHECK(got.size() == 13);
  // Cross-check every pair against the step-indexed oracle, including the
  // label-compatible pairs that must be absent.
  for (std::size_t s = 0; s < f2.state_count(); ++s) {
    for (std::size_t t = 0; t < f2.state_count(); ++t) {
      CHECK(got.contains(f2.state_name(static_cast<int>(s)), f2.state_name(static_cast<int>(t))) ==
            oracle::bisimilar(f2, f2, static_cast<int>(s), static_cast<int>(t)));
    }
  }
}

TEST_CASE("duplicated states are related") {
  KripkeStructure k = parse_kripke(
      "kripke\naps a\nstate s0 : a\nstate s1 : a\ninit s0\ntrans s0 -> s0 s1\ntrans s1 -> s0 s1\n");
  BisimRelation r = largest_bisimulation(k, k);
  CHECK(r.contains("s0", "s1"));
  CHECK(r.contains("s1", "s0"));
}

TEST_CASE("largest_bisimulation matches exhaustive enumeration on tiny instances") {
  gen::Rng rng(55);
  for (int i = 0; i < 40; ++i) {
    KripkeStructure k1 = gen::random_kripke(rng, 3, 2);
    KripkeStructure k2 = gen::random_kripke(rng, 3, 2);
    if (k1.state_count() * k2.state_count() > 12) continue;
    CHECK(largest_bisimulation(k1, k2) == oracle::largest_enumerated(k1, k2));
  }
}

TEST_CASE("the result is a bisimulation and is maximal") {
  gen::Rng rng(56);
  for (int i = 0; i < 60; ++i) {
    KripkeStructure k1 = gen::random_kripke(rng, 6, 3);
    KripkeStructure k2 = gen::random_kripke(rng, 6, 3);
    BisimRelation r = largest_bisimulation(k1, k2);
    CHECK(is_bisimulation(k1, k2, r));
    // Extending by any label-compatible absent pair breaks it.
    for (std::size_t s = 0; s < k1.state_count(); ++s) {
      for (std::size_t t = 0; t < k2.state_count(); ++t) {
        const std::string& a = k1.state_name(static_cast<int>(s));
        const std::string& b = k2.state_name(static_cast<int>(t));
        if (r.contains(a, b)) continue;
        if (k1.label_names(static_cast<int>(s)) != k2.label_names(static_cast<int>(t))) continue;
        auto pairs = r.pairs;
        pairs.emplace_back(a, b);
        CHECK_FALSE(is_bisimulation(k1, k2, BisimRelation::from_pairs(std::move(pairs))));
      }
    }
  }
}

TEST_CASE("self-bisimilarity is an equivalence relation") {
  gen::Rng rng(57);
  for (int i = 0; i < 30; ++i) {
    KripkeStructure k = gen::random_kripke(rng, 7, 3);
    BisimRelation r = largest_bisimulation(k, k);
    for (const auto& s : k.states()) CHECK(r.contains(s, s));
    for (const auto& [a, b] : r.pairs) CHECK(r.contains(b, a));
    for (const auto& [a, b] : r.pairs) {
      for (const auto& c : k.states()) {
        if (r.contains(b, c)) CHECK(r.contains(a, c));
      }
    }
  }
}

TEST_CASE("are_equivalent handles renaming, minimization and init moves") {
  KripkeStructure f1 = fixtures::f1();
  gen::Rng rng(58);
  CHECK(are_equivalent(f1, gen::rename_states(rng, f1)));
  KripkeStructure f2 = fixtures::f2();
  CHECK(are_equivalent(f2, minimize(f2)));

  KripkeStructure moved = parse_kripke(
      "kripke\naps a b\nstate s1 : a\nstate s2 : b\ninit s2\ntrans s1 -> s2\ntrans s2 -> s1\n");
  CHECK_FALSE(are_equivalent(f1, moved));

  KripkeStructure other_aps =
      parse_kripke("kripke\naps c\nstate s0 : c\ninit s0\ntrans s0 -> s0\n");
  CHECK(error_code_of([&] { are_equivalent(f1, other_aps); }) == errc::ap_mismatch);
}

TEST_CASE("k_approximant starts at label compatibility and shrinks to the fixpoint") {
  KripkeStructure f1 = fixtures::f1();
  CHECK(k_approximant(f1, f1, 0) == identity_relation(f1));

  gen::Rng rng(59);
  for (int i = 0; i < 100; ++i) {
    KripkeStructure k1 = gen::random_kripke(rng, 6, 3);
    KripkeStructure k2 = gen::random_kripke(rng, 6, 3);
    int bound = static_cast<int>(k1.state_count() * k2.state_count());
    BisimRelation limit = largest_bisimulation(k1, k2);
    BisimRelation prev = k_approximant(k1, k2, 0);
    for (int k = 1; k <= bound; ++k) {
      BisimRelation cur = k_approximant(k1, k2, k);
      for (const auto& [a, b] : cur.pairs) CHECK(prev.contains(a, b));  // R_{k} ⊆ R_{k-1}
      prev = cur;
    }
    CHECK(prev == limit);
    for (const auto& [a, b] : limit.pairs) CHECK(prev.contains(a, b));
  }
}

TEST_CASE("coalgebra bisimulations coincide with relational ones") {
  KripkeStructure f1 = fixtures::f1();
  CoalgebraView v1 = to_coalgebra_view(f1);
  CHECK(is_coalgebra_bisimulation(v1, v1, identity_relation(f1)));
  CHECK_FALSE(is_coalgebra_bisimulation(v1, v1, BisimRelation::from_pairs({{"s1", "s2"}})));

  gen::Rng rng(60);
  for (int i = 0; i < 200; ++i) {
    KripkeStructure k1 = gen::random_kripke(rng, 6, 3);
    KripkeStructure k2 = gen::random_kripke(rng, 6, 3);
    BisimRelation r = gen::random_relation(rng, k1, k2);
    CHECK(is_coalgebra_bisimulation(to_coalgebra_view(k1), to_coalgebra_view(k2), r) ==
          is_bisimulation(k1, k2, r));
  }
}

TEST_CASE("are_equivalent is an equivalence across a generated pool") {
  gen::Rng rng(61);
  std::vector<KripkeStructure> pool;
  for (int i = 0; i < 6; ++i) pool.push_back(gen::random_kripke(rng, 5, 1));
  for (const auto& a : pool) CHECK(are_equivalent(a, a));
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      CHECK(are_equivalent(a, b) == are_equivalent(b, a));
      for (const auto& c : pool) {
        if (are_equivalent(a, b) && are_equivalent(b, c)) CHECK(are_equivalent(a, c));
      }
    }
  }
}
