#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ksmin/kripke.hpp"

namespace ksmin {

/// Relation between states of a left and a right structure, held by name so
/// a value stays meaningful across structure copies. Pairs are deduplicated
/// and lexicographically ordered.
struct BisimRelation {
  std::vector<std::pair<std::string, std::string>> pairs;

  static BisimRelation from_pairs(std::vector<std::pair<std::string, std::string>> pairs);
  bool contains(std::string_view left, std::string_view right) const;
  std::size_t size() const { return pairs.size(); }

  bool operator==(const BisimRelation&) const = default;
};

/// True iff every pair of r satisfies label equality and both
/// successor-matching clauses. Throws on a pair naming an undeclared state.
bool is_bisimulation(const KripkeStructure& k1, const KripkeStructure& k2,
                     const BisimRelation& r);

/// Greatest fixpoint: start from all label-compatible pairs and delete
/// violating pairs, a whole round at a time, until stable.
BisimRelation largest_bisimulation(const KripkeStructure& k1, const KripkeStructure& k2);

/// Step-indexed approximant: the fixpoint iteration truncated after k
/// deletion rounds. k_approximant(k1, k2, k) ⊇ largest_bisimulation(k1, k2),
/// with equality from k = |S1|·|S2| on.
BisimRelation k_approximant(const KripkeStructure& k1, const KripkeStructure& k2, int k);

/// Bisimulation equivalence: some bisimulation matches every initial state
/// of each structure to one of the other. Requires identical atom sets.
bool are_equivalent(const KripkeStructure& k1, const KripkeStructure& k2);

/// Coalgebraic reading of the same notion: builds the mediating structure
/// over r and checks that both projection squares commute.
bool is_coalgebra_bisimulation(const CoalgebraView& c1, const CoalgebraView& c2,
                               const BisimRelation& r);

}  // namespace ksmin
