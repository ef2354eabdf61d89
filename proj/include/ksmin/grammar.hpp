#pragma once

#include <map>
#include <string>
#include <vector>

#include "ksmin/kripke.hpp"

namespace ksmin {

/// One grammar fragment before validation: Kripke pieces without the
/// totality requirement (boundary states get their successors from the
/// surrounding fold or unfold).
struct GrammarFragment {
  std::vector<std::string> states;
  std::vector<std::string> init;  // empty for the rule fragment
  std::map<std::string, std::vector<std::string>> trans;
  std::map<std::string, std::vector<std::string>> labels;
};

struct GrammarDraft {
  int n = 0;
  std::vector<std::string> aps;
  GrammarFragment g0;
  std::vector<std::string> exits;  // ex_1..ex_N, g0 states
  GrammarFragment rule;
  std::vector<std::string> ins;   // in_1..in_N, rule states
  std::vector<std::string> outs;  // out_1..out_N, rule states
};

/// Finite presentation of an infinite structure: a base fragment g0 with N
/// exit states and a rule fragment spliced in at the exits, in/out states
/// marking the splice boundary. Validated on construction:
///   - L(ex_i) = L(in_i) = L(out_i) for every i;
///   - exit states and out states have no outgoing edges at all (their
///     behavior is the spliced rule's);
///   - exits pairwise distinct, ins and outs together pairwise distinct;
///   - every non-exit g0 state and every non-out rule state has a
///     successor inside its fragment; g0 init nonempty.
class GraphGrammar {
 public:
  explicit GraphGrammar(const GrammarDraft& draft);

  int n() const { return n_; }
  const AtomSet& atoms() const { return atoms_; }
  const GrammarFragment& g0() const { return g0_; }
  const GrammarFragment& rule() const { return rule_; }
  const std::vector<std::string>& exits() const { return exits_; }
  const std::vector<std::string>& ins() const { return ins_; }
  const std::vector<std::string>& outs() const { return outs_; }

 private:
  int n_;
  AtomSet atoms_;
  GrammarFragment g0_;
  std::vector<std::string> exits_;
  GrammarFragment rule_;
  std::vector<std::string> ins_;
  std::vector<std::string> outs_;
};

/// Parses the .kgram text format.
GraphGrammar parse_grammar(std::string_view text);

/// Splice the rule into g0 once, identifying in_i and out_i with ex_i:
/// the finite structure whose minimization is the concrete smallest
/// structure of the grammar's infinite unfolding. Interior rule states are
/// prefixed "A.".
KripkeStructure fold(const GraphGrammar& g);

/// Truncated explicit unfolding: g0 plus `depth` chained copies of the
/// rule (copy k's states prefixed "A<k>."), the last copy's out states
/// closed with self-loops. Behaviorally faithful to depth-1 steps below
/// the copy count.
KripkeStructure unfold(const GraphGrammar& g, int depth);

}  // namespace ksmin
