#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ksmin/kripke.hpp"

namespace ksmin {

/// Finite-depth labeled tree approximating the behavior of a state: the
/// root carries the state's label, children the (deduplicated) successor
/// trees one level shallower. Nodes where the height budget ran out carry
/// a truncation marker; by totality no genuine leaf exists, so every
/// honest leaf is a truncated one. Trees are immutable and share subtrees.
class UnwindTree {
 public:
  using Ptr = std::shared_ptr<const UnwindTree>;

  UnwindTree(std::vector<std::string> label, std::vector<Ptr> children, bool truncated,
             int depth)
      : label_(std::move(label)),
        children_(std::move(children)),
        truncated_(truncated),
        depth_(depth) {}

  const std::vector<std::string>& label() const { return label_; }
  const std::vector<Ptr>& children() const { return children_; }
  bool truncated() const { return truncated_; }
  int depth() const { return depth_; }  // height budget at construction

 private:
  std::vector<std::string> label_;
  std::vector<Ptr> children_;
  bool truncated_;
  int depth_;
};

/// Total structural order on trees (truncation marker, label, then children
/// lexicographically). Shared subtrees compare in constant time.
int compare_trees(const UnwindTree::Ptr& a, const UnwindTree::Ptr& b);
bool equal_trees(const UnwindTree::Ptr& a, const UnwindTree::Ptr& b);

/// Depth-d unwinding of K from a state, canonicalized bottom-up so
/// structurally-equal siblings collapse. Throws on an unknown state.
UnwindTree::Ptr unwind_tree(const KripkeStructure& k, std::string_view state, int depth);

/// Children recursively canonicalized, sorted, duplicates removed.
/// Idempotent.
UnwindTree::Ptr canonicalize(const UnwindTree::Ptr& t);

/// Finite-depth equality of the two states' images under the behavior map:
/// true iff the canonical depth-d unwindings coincide. At depth |S| this
/// decides bisimilarity exactly.
bool h_approx_equal(const KripkeStructure& k, std::string_view s, std::string_view t, int depth);

/// Indented text rendering, one "{p,q}" line per node, two spaces per
/// level, a "…" line under each truncated node.
std::string render_tree(const UnwindTree::Ptr& t);

}  // namespace ksmin
