#pragma once

#include <string>
#include <vector>

#include "ksmin/kripke.hpp"

namespace ksmin {

/// Disjoint cover of the state set. Block members are sorted state indices;
/// blocks are ordered by their smallest member, which with lexicographic
/// state order makes every derived artifact deterministic.
struct Partition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;  // state index -> block index

  bool operator==(const Partition&) const = default;
};

/// Blocks are exactly the label-equality classes.
Partition initial_partition(const KripkeStructure& k);

/// Refines until no block splits under the criterion "two states stay
/// together iff they hit the same set of blocks". Returns the coarsest
/// stable refinement; its blocks are the bisimilarity classes.
Partition refine_to_fixpoint(const KripkeStructure& k, const Partition& p);

struct RefineResult {
  Partition partition;
  int rounds;  // sweeps performed, including the final no-change one
};
RefineResult refine_to_fixpoint_verbose(const KripkeStructure& k, const Partition& p);

/// Quotient structure over a stable label-uniform partition. Block states
/// are named b0, b1, ... in canonical block order.
KripkeStructure quotient(const KripkeStructure& k, const Partition& p);

/// restrict_reachable, partition by label, refine, quotient.
KripkeStructure minimize(const KripkeStructure& k);

struct MinimizeReport {
  KripkeStructure result;
  KripkeStructure restricted;           // input minus unreachable states
  Partition final_partition;            // over `restricted`
  std::vector<std::string> block_names; // block index -> quotient state name
  int rounds;
};
MinimizeReport minimize_with_report(const KripkeStructure& k);

/// Block-map sidecar: one line "b<k>: <member> <member> ..." per block.
std::string block_map_report(const MinimizeReport& report);

bool is_reduced(const KripkeStructure& k);
bool is_connected(const KripkeStructure& k);

/// Exact structure isomorphism: a state bijection preserving init
/// membership, labels and the transition relation. Backtracking with
/// label/degree pruning; callers stay at or under 64 states.
bool are_isomorphic(const KripkeStructure& k1, const KripkeStructure& k2);

}  // namespace ksmin
