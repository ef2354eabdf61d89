#include "ksmin/minimize.hpp"

#include <algorithm>
#include <map>

#include "ksmin/bisim.hpp"

namespace ksmin {

namespace {

Partition rebuild(std::size_t n, const std::vector<std::vector<int>>& groups) {
  Partition p;
  p.blocks = groups;
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  p.block_of.assign(n, -1);
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    for (int s : p.blocks[i]) p.block_of[static_cast<std::size_t>(s)] = static_cast<int>(i);
  }
  return p;
}

// Set of blocks hit by the successors of s under p.
std::vector<int> block_signature(const KripkeStructure& k, const Partition& p, int s) {
  std::vector<int> sig;
  for (int t : k.successors(s)) sig.push_back(p.block_of[static_cast<std::size_t>(t)]);
  std::sort(sig.begin(), sig.end());
  sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
  return sig;
}

// One synchronous sweep: split every block by successor signature.
Partition split_round(const KripkeStructure& k, const Partition& p) {
  std::vector<std::vector<int>> groups;
  for (const auto& block : p.blocks) {
    std::map<std::vector<int>, std::vector<int>> by_sig;
    for (int s : block) by_sig[block_signature(k, p, s)].push_back(s);
    for (auto& [sig, members] : by_sig) groups.push_back(std::move(members));
  }
  return rebuild(p.block_of.size(), groups);
}

void check_partition(const KripkeStructure& k, const Partition& p) {
  std::vector<bool> covered(k.state_count(), false);
  for (const auto& block : p.blocks) {
    if (block.empty()) throw error(errc::internal, "partition has an empty block");
    for (int s : block) {
      if (s < 0 || static_cast<std::size_t>(s) >= k.state_count() || covered[static_cast<std::size_t>(s)]) {
        throw error(errc::internal, "partition does not cover the state set exactly");
      }
      covered[static_cast<std::size_t>(s)] = true;
      if (k.label_bits(s) != k.label_bits(block.front())) {
        throw error(errc::partition_not_stable, "partition block mixes labels");
      }
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw error(errc::internal, "partition misses states");
  }
}

}  // namespace

Partition initial_partition(const KripkeStructure& k) {
  std::map<std::uint64_t, std::vector<int>> by_label;
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    by_label[k.label_bits(static_cast<int>(s))].push_back(static_cast<int>(s));
  }
  std::vector<std::vector<int>> groups;
  for (auto& [bits, members] : by_label) groups.push_back(std::move(members));
  return rebuild(k.state_count(), groups);
}

RefineResult refine_to_fixpoint_verbose(const KripkeStructure& k, const Partition& p) {
  check_partition(k, p);
  Partition cur = p;
  int rounds = 0;
  for (;;) {
    Partition next = split_round(k, cur);
    ++rounds;
    if (next == cur) return {std::move(cur), rounds};
    cur = std::move(next);
  }
}

Partition refine_to_fixpoint(const KripkeStructure& k, const Partition& p) {
  return refine_to_fixpoint_verbose(k, p).partition;
}

KripkeStructure quotient(const KripkeStructure& k, const Partition& p) {
  check_partition(k, p);
  if (!(split_round(k, p) == p)) {
    throw error(errc::partition_not_stable, "quotient of a non-stable partition");
  }
  KripkeDraft draft;
  draft.aps = k.atoms().names();
  std::vector<std::string> names;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) names.push_back("b" + std::to_string(b));
  draft.states = names;
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    draft.labels[names[b]] = k.label_names(p.blocks[b].front());
    auto& out = draft.trans[names[b]];
    for (int s : p.blocks[b]) {
      for (int t : k.successors(s)) {
        out.push_back(names[static_cast<std::size_t>(p.block_of[static_cast<std::size_t>(t)])]);
      }
    }
  }
  for (int s : k.init()) {
    draft.init.push_back(names[static_cast<std::size_t>(p.block_of[static_cast<std::size_t>(s)])]);
  }
  return KripkeStructure(draft);
}

MinimizeReport minimize_with_report(const KripkeStructure& k) {
  KripkeStructure restricted = restrict_reachable(k);
  RefineResult refined = refine_to_fixpoint_verbose(restricted, initial_partition(restricted));
  KripkeStructure result = quotient(restricted, refined.partition);
  std::vector<std::string> names;
  for (std::size_t b = 0; b < refined.partition.blocks.size(); ++b) {
    names.push_back("b" + std::to_string(b));
  }
  return {std::move(result), std::move(restricted), std::move(refined.partition),
          std::move(names), refined.rounds};
}

KripkeStructure minimize(const KripkeStructure& k) {
  return minimize_with_report(k).result;
}

std::string block_map_report(const MinimizeReport& report) {
  std::string out;
  for (std::size_t b = 0; b < report.final_partition.blocks.size(); ++b) {
    out += report.block_names[b] + ":";
    for (int s : report.final_partition.blocks[b]) {
      out += " " + report.restricted.state_name(s);
    }
    out += "\n";
  }
  return out;
}

bool is_reduced(const KripkeStructure& k) {
  BisimRelation r = largest_bisimulation(k, k);
  return r.size() == k.state_count();  // reflexive pairs are always present
}

bool is_connected(const KripkeStructure& k) {
  return restrict_reachable(k).state_count() == k.state_count();
}

namespace {

struct IsoContext {
  const KripkeStructure& a;
  const KripkeStructure& b;
  std::vector<int> map;      // a-state -> b-state or -1
  std::vector<bool> used;    // b-state already targeted
  std::vector<std::vector<int>> candidates;

  bool edge_a(int s, int t) const {
    const auto& succ = a.successors(s);
    return std::binary_search(succ.begin(), succ.end(), t);
  }
  bool edge_b(int s, int t) const {
    const auto& succ = b.successors(s);
    return std::binary_search(succ.begin(), succ.end(), t);
  }

  bool assign(std::size_t next) {
    if (next == map.size()) return true;
    int s = static_cast<int>(next);
    for (int t : candidates[next]) {
      if (used[static_cast<std::size_t>(t)]) continue;
      bool ok = true;
      for (int prev = 0; prev < s && ok; ++prev) {
        int pt = map[static_cast<std::size_t>(prev)];
        if (edge_a(s, prev) != edge_b(t, pt)) ok = false;
        if (ok && edge_a(prev, s) != edge_b(pt, t)) ok = false;
      }
      if (edge_a(s, s) != edge_b(t, t)) ok = false;
      if (!ok) continue;
      map[next] = t;
      used[static_cast<std::size_t>(t)] = true;
      if (assign(next + 1)) return true;
      map[next] = -1;
      used[static_cast<std::size_t>(t)] = false;
    }
    return false;
  }
};

}  // namespace

bool are_isomorphic(const KripkeStructure& k1, const KripkeStructure& k2) {
  if (k1.state_count() > 64 || k2.state_count() > 64) {
    throw error(errc::size_cap, "isomorphism check capped at 64 states");
  }
  if (k1.state_count() != k2.state_count()) return false;
  if (k1.init().size() != k2.init().size()) return false;

  // Labels are compared by name so the checks survive differing atom
  // universes, as long as the used names agree.
  auto in_degrees = [](const KripkeStructure& k) {
    std::vector<int> deg(k.state_count(), 0);
    for (std::size_t s = 0; s < k.state_count(); ++s) {
      for (int t : k.successors(static_cast<int>(s))) ++deg[static_cast<std::size_t>(t)];
    }
    return deg;
  };
  std::vector<int> in1 = in_degrees(k1), in2 = in_degrees(k2);
  using Key = std::tuple<std::vector<std::string>, bool, std::size_t, int>;
  auto key_of = [&](const KripkeStructure& k, const std::vector<int>& indeg, int s) {
    return Key{k.label_names(s), k.is_initial(s), k.successors(s).size(),
               indeg[static_cast<std::size_t>(s)]};
  };

  IsoContext ctx{k1, k2,
                 std::vector<int>(k1.state_count(), -1),
                 std::vector<bool>(k2.state_count(), false),
                 {}};
  ctx.candidates.resize(k1.state_count());
  std::map<Key, std::vector<int>> pool;
  for (std::size_t t = 0; t < k2.state_count(); ++t) {
    pool[key_of(k2, in2, static_cast<int>(t))].push_back(static_cast<int>(t));
  }
  for (std::size_t s = 0; s < k1.state_count(); ++s) {
    auto it = pool.find(key_of(k1, in1, static_cast<int>(s)));
    if (it == pool.end()) return false;
    ctx.candidates[s] = it->second;
  }
  return ctx.assign(0);
}

}  // namespace ksmin
