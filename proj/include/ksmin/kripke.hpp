#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ksmin/error.hpp"

namespace ksmin {

// Desk-scale caps; exceeding either is a size_cap error.
inline constexpr std::size_t kMaxAtoms = 64;
inline constexpr std::size_t kMaxIdentLength = 64;

bool is_atom_ident(std::string_view s);   // [A-Za-z_][A-Za-z0-9_]*
bool is_state_ident(std::string_view s);  // atoms plus '.' after the first char

/// Ordered set of atomic propositions. Lexicographic iteration order,
/// no duplicates, at most kMaxAtoms entries (labels fit in a 64-bit mask).
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(std::vector<std::string> atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<std::string>& names() const { return atoms_; }
  bool contains(std::string_view atom) const { return index_of(atom) >= 0; }
  int index_of(std::string_view atom) const;  // -1 when absent
  const std::string& name(int i) const { return atoms_[static_cast<std::size_t>(i)]; }

  bool operator==(const AtomSet&) const = default;

 private:
  std::vector<std::string> atoms_;
};

/// Raw pieces of a structure before validation, as a parser or a generator
/// assembles them. Successor and label lists may be unsorted and may repeat;
/// validation canonicalizes.
struct KripkeDraft {
  std::vector<std::string> aps;
  std::vector<std::string> states;
  std::vector<std::string> init;
  std::map<std::string, std::vector<std::string>> trans;
  std::map<std::string, std::vector<std::string>> labels;
};

/// Finite Kripke structure: states with a total transition relation, a
/// nonempty set of initial states and a per-state subset of the atoms.
/// Immutable after construction; all component orders are lexicographic,
/// so equal structures compare equal componentwise.
class KripkeStructure {
 public:
  /// Validates and canonicalizes a draft. Throws ksmin::error on any
  /// violation: duplicate state, unknown reference, non-total relation,
  /// empty init, bad identifier, cap excess.
  explicit KripkeStructure(const KripkeDraft& draft);

  const AtomSet& atoms() const { return atoms_; }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(int s) const { return states_[static_cast<std::size_t>(s)]; }
  int index_of(std::string_view state) const;  // -1 when absent

  const std::vector<int>& init() const { return init_; }
  bool is_initial(int s) const;
  const std::vector<int>& successors(int s) const { return succs_[static_cast<std::size_t>(s)]; }
  std::uint64_t label_bits(int s) const { return labels_[static_cast<std::size_t>(s)]; }
  std::vector<std::string> label_names(int s) const;

  bool operator==(const KripkeStructure&) const = default;

 private:
  AtomSet atoms_;
  std::vector<std::string> states_;       // sorted
  std::vector<int> init_;                 // sorted state indices
  std::vector<std::vector<int>> succs_;   // per state, sorted unique
  std::vector<std::uint64_t> labels_;     // per state, bit i = atom i
};

/// A structure seen through the functor lens: carrier plus a map sending
/// each state to its observation (label set, nonempty successor set).
struct CoalgebraView {
  AtomSet aps;
  std::vector<std::string> carrier;  // sorted
  std::vector<std::pair<std::uint64_t, std::vector<int>>> alpha;
  std::vector<int> init;

  int index_of(std::string_view state) const;
  bool operator==(const CoalgebraView&) const = default;
};

/// Parses the .kripke text format. Reports syntax errors with line/column.
KripkeStructure parse_kripke(std::string_view text);

/// Like parse_kripke, but states without a declared transition get a
/// self-loop instead of a non_total error. Each added edge is appended to
/// *added ("s -> s") when added is non-null.
KripkeStructure parse_kripke_complete_selfloops(std::string_view text,
                                                std::vector<std::string>* added = nullptr);

/// Canonical text form; parse_kripke(serialize_kripke(k)) == k.
std::string serialize_kripke(const KripkeStructure& k);

/// Drops every state not reachable from init. The result is connected and
/// bisimulation-equivalent to the input.
KripkeStructure restrict_reachable(const KripkeStructure& k);

CoalgebraView to_coalgebra_view(const KripkeStructure& k);
KripkeStructure from_coalgebra_view(const CoalgebraView& view);

/// Graphviz rendering: initial states as doublecircle, node text "id\n{p,q}",
/// edges sorted by (source, target). Byte-deterministic.
std::string export_dot(const KripkeStructure& k);

}  // namespace ksmin
