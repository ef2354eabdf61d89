#include "ksmin/unwind.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace ksmin {

namespace {

// Memoized structural comparison. The memo lives for one top-level call so
// pointer reuse across tree lifetimes can never alias an entry; within a
// call it keeps DAG-shaped comparisons polynomial.
struct TreeComparer {
  std::map<std::pair<const void*, const void*>, int> memo;

  int cmp(const UnwindTree::Ptr& a, const UnwindTree::Ptr& b) {
    if (a.get() == b.get()) return 0;
    auto key = std::make_pair(static_cast<const void*>(a.get()),
                              static_cast<const void*>(b.get()));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int result = 0;
    if (a->truncated() != b->truncated()) {
      result = a->truncated() ? -1 : 1;
    } else if (a->label() != b->label()) {
      result = a->label() < b->label() ? -1 : 1;
    } else {
      std::size_t n = std::min(a->children().size(), b->children().size());
      for (std::size_t i = 0; i < n && result == 0; ++i) {
        result = cmp(a->children()[i], b->children()[i]);
      }
      if (result == 0 && a->children().size() != b->children().size()) {
        result = a->children().size() < b->children().size() ? -1 : 1;
      }
    }
    memo[key] = result;
    return result;
  }
};

// Hash-consing context: structurally equal nodes built through one context
// are the same pointer, so equality checks inside it are pointer checks.
struct TreeBuilder {
  using Key = std::tuple<bool, std::vector<std::string>, std::vector<const void*>>;
  std::map<Key, UnwindTree::Ptr> interned;
  std::map<const void*, UnwindTree::Ptr> canon_memo;
  TreeComparer comparer;

  UnwindTree::Ptr node(std::vector<std::string> label, std::vector<UnwindTree::Ptr> children,
                       bool truncated, int depth) {
    std::sort(children.begin(), children.end(),
              [&](const UnwindTree::Ptr& a, const UnwindTree::Ptr& b) {
                return comparer.cmp(a, b) < 0;
              });
    children.erase(std::unique(children.begin(), children.end(),
                               [&](const UnwindTree::Ptr& a, const UnwindTree::Ptr& b) {
                                 return comparer.cmp(a, b) == 0;
                               }),
                   children.end());
    Key key{truncated, label, {}};
    auto& ptrs = std::get<2>(key);
    ptrs.reserve(children.size());
    for (const auto& c : children) ptrs.push_back(c.get());
    if (auto it = interned.find(key); it != interned.end()) return it->second;
    auto made = std::make_shared<const UnwindTree>(std::move(label), std::move(children),
                                                   truncated, depth);
    interned.emplace(std::move(key), made);
    return made;
  }

  // Memoized per input node: shared subtrees are rewritten once, so DAG-
  // shaped inputs stay linear instead of exploding per path.
  UnwindTree::Ptr canonical(const UnwindTree::Ptr& t) {
    if (auto it = canon_memo.find(t.get()); it != canon_memo.end()) return it->second;
    std::vector<UnwindTree::Ptr> children;
    children.reserve(t->children().size());
    for (const auto& c : t->children()) children.push_back(canonical(c));
    UnwindTree::Ptr made = node(t->label(), std::move(children), t->truncated(), t->depth());
    canon_memo.emplace(t.get(), made);
    return made;
  }

  // Layered unwinding: layer d holds one canonical tree per state.
  std::vector<std::vector<UnwindTree::Ptr>> layers(const KripkeStructure& k, int depth) {
    std::vector<std::vector<UnwindTree::Ptr>> out;
    out.reserve(static_cast<std::size_t>(depth) + 1);
    std::vector<UnwindTree::Ptr> base;
    for (std::size_t s = 0; s < k.state_count(); ++s) {
      base.push_back(node(k.label_names(static_cast<int>(s)), {}, true, 0));
    }
    out.push_back(std::move(base));
    for (int d = 1; d <= depth; ++d) {
      std::vector<UnwindTree::Ptr> layer;
      for (std::size_t s = 0; s < k.state_count(); ++s) {
        std::vector<UnwindTree::Ptr> children;
        for (int t : k.successors(static_cast<int>(s))) {
          children.push_back(out.back()[static_cast<std::size_t>(t)]);
        }
        layer.push_back(node(k.label_names(static_cast<int>(s)), std::move(children), false, d));
      }
      out.push_back(std::move(layer));
    }
    return out;
  }
};

int checked_index(const KripkeStructure& k, std::string_view state) {
  int s = k.index_of(state);
  if (s < 0) throw error(errc::unknown_state, "unknown state '" + std::string(state) + "'");
  return s;
}

void render_into(const UnwindTree::Ptr& t, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += "{";
  for (std::size_t i = 0; i < t->label().size(); ++i) {
    if (i) out += ",";
    out += t->label()[i];
  }
  out += "}\n";
  for (const auto& c : t->children()) render_into(c, indent + 1, out);
  if (t->truncated()) {
    out.append(static_cast<std::size_t>(indent + 1) * 2, ' ');
    out += "…\n";
  }
}

}  // namespace

int compare_trees(const UnwindTree::Ptr& a, const UnwindTree::Ptr& b) {
  TreeComparer comparer;
  return comparer.cmp(a, b);
}

bool equal_trees(const UnwindTree::Ptr& a, const UnwindTree::Ptr& b) {
  return compare_trees(a, b) == 0;
}

UnwindTree::Ptr unwind_tree(const KripkeStructure& k, std::string_view state, int depth) {
  int s = checked_index(k, state);
  if (depth < 0) throw error(errc::internal, "unwind depth must be nonnegative");
  TreeBuilder builder;
  return builder.layers(k, depth)[static_cast<std::size_t>(depth)][static_cast<std::size_t>(s)];
}

UnwindTree::Ptr canonicalize(const UnwindTree::Ptr& t) {
  TreeBuilder builder;
  return builder.canonical(t);
}

bool h_approx_equal(const KripkeStructure& k, std::string_view s, std::string_view t,
                    int depth) {
  int si = checked_index(k, s);
  int ti = checked_index(k, t);
  if (depth < 0) throw error(errc::internal, "unwind depth must be nonnegative");
  TreeBuilder builder;
  auto layers = builder.layers(k, depth);
  // Same builder, so canonical equality is pointer equality.
  return layers[static_cast<std::size_t>(depth)][static_cast<std::size_t>(si)].get() ==
         layers[static_cast<std::size_t>(depth)][static_cast<std::size_t>(ti)].get();
}

std::string render_tree(const UnwindTree::Ptr& t) {
  std::string out;
  render_into(t, 0, out);
  return out;
}

}  // namespace ksmin
