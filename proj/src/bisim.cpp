#include "ksmin/bisim.hpp"

#include <algorithm>

namespace ksmin {

namespace {

// Relation as a dense boolean matrix over state indices.
struct PairMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<bool> bits;

  PairMatrix(std::size_t rows, std::size_t cols) : rows(rows), cols(cols), bits(rows * cols) {}

  bool get(int i, int j) const {
    return bits[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)];
  }
  void set(int i, int j, bool v) {
    bits[static_cast<std::size_t>(i) * cols + static_cast<std::size_t>(j)] = v;
  }
};

PairMatrix to_matrix(const KripkeStructure& k1, const KripkeStructure& k2,
                     const BisimRelation& r) {
  PairMatrix m(k1.state_count(), k2.state_count());
  for (const auto& [a, b] : r.pairs) {
    int i = k1.index_of(a);
    int j = k2.index_of(b);
    if (i < 0) throw error(errc::dangling_reference, "relation names unknown state '" + a + "'");
    if (j < 0) throw error(errc::dangling_reference, "relation names unknown state '" + b + "'");
    m.set(i, j, true);
  }
  return m;
}

BisimRelation from_matrix(const KripkeStructure& k1, const KripkeStructure& k2,
                          const PairMatrix& m) {
  BisimRelation r;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (m.get(static_cast<int>(i), static_cast<int>(j))) {
        r.pairs.emplace_back(k1.state_name(static_cast<int>(i)),
                             k2.state_name(static_cast<int>(j)));
      }
    }
  }
  return r;  // matrix scan order is already lexicographic
}

// Successor-matching clauses of the bisimulation definition for one pair.
bool succ_clauses_hold(const KripkeStructure& k1, const KripkeStructure& k2, int s, int t,
                       const PairMatrix& m) {
  for (int a : k1.successors(s)) {
    bool matched = false;
    for (int b : k2.successors(t)) {
      if (m.get(a, b)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  for (int b : k2.successors(t)) {
    bool matched = false;
    for (int a : k1.successors(s)) {
      if (m.get(a, b)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

PairMatrix label_compatible_pairs(const KripkeStructure& k1, const KripkeStructure& k2) {
  PairMatrix m(k1.state_count(), k2.state_count());
  for (std::size_t i = 0; i < k1.state_count(); ++i) {
    for (std::size_t j = 0; j < k2.state_count(); ++j) {
      m.set(static_cast<int>(i), static_cast<int>(j),
            k1.label_bits(static_cast<int>(i)) == k2.label_bits(static_cast<int>(j)));
    }
  }
  return m;
}

// Synchronous refinement: drop every currently violating pair, in rounds.
// max_rounds < 0 means run to the fixpoint.
PairMatrix refine_pairs(const KripkeStructure& k1, const KripkeStructure& k2, PairMatrix m,
                        long max_rounds) {
  for (long round = 0; max_rounds < 0 || round < max_rounds; ++round) {
    PairMatrix next = m;
    bool changed = false;
    for (std::size_t i = 0; i < m.rows; ++i) {
      for (std::size_t j = 0; j < m.cols; ++j) {
        int s = static_cast<int>(i), t = static_cast<int>(j);
        if (m.get(s, t) && !succ_clauses_hold(k1, k2, s, t, m)) {
          next.set(s, t, false);
          changed = true;
        }
      }
    }
    m = std::move(next);
    if (!changed) break;
  }
  return m;
}

}  // namespace

BisimRelation BisimRelation::from_pairs(std::vector<std::pair<std::string, std::string>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return BisimRelation{std::move(pairs)};
}

bool BisimRelation::contains(std::string_view left, std::string_view right) const {
  return std::binary_search(pairs.begin(), pairs.end(),
                            std::pair<std::string, std::string>{std::string(left),
                                                                std::string(right)});
}

bool is_bisimulation(const KripkeStructure& k1, const KripkeStructure& k2,
                     const BisimRelation& r) {
  PairMatrix m = to_matrix(k1, k2, r);
  for (const auto& [a, b] : r.pairs) {
    int s = k1.index_of(a);
    int t = k2.index_of(b);
    if (k1.label_bits(s) != k2.label_bits(t)) return false;
    if (!succ_clauses_hold(k1, k2, s, t, m)) return false;
  }
  return true;
}

BisimRelation largest_bisimulation(const KripkeStructure& k1, const KripkeStructure& k2) {
  PairMatrix m = refine_pairs(k1, k2, label_compatible_pairs(k1, k2), -1);
  return from_matrix(k1, k2, m);
}

BisimRelation k_approximant(const KripkeStructure& k1, const KripkeStructure& k2, int k) {
  if (k < 0) throw error(errc::internal, "k_approximant needs k >= 0");
  PairMatrix m = refine_pairs(k1, k2, label_compatible_pairs(k1, k2), k);
  return from_matrix(k1, k2, m);
}

bool are_equivalent(const KripkeStructure& k1, const KripkeStructure& k2) {
  if (!(k1.atoms() == k2.atoms())) {
    throw error(errc::ap_mismatch, "structures have different proposition sets");
  }
  PairMatrix m = refine_pairs(k1, k2, label_compatible_pairs(k1, k2), -1);
  for (int s : k1.init()) {
    bool matched = false;
    for (int t : k2.init()) {
      if (m.get(s, t)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  for (int t : k2.init()) {
    bool matched = false;
    for (int s : k1.init()) {
      if (m.get(s, t)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

bool is_coalgebra_bisimulation(const CoalgebraView& c1, const CoalgebraView& c2,
                               const BisimRelation& r) {
  PairMatrix m(c1.carrier.size(), c2.carrier.size());
  for (const auto& [a, b] : r.pairs) {
    int i = c1.index_of(a);
    int j = c2.index_of(b);
    if (i < 0) throw error(errc::dangling_reference, "relation names unknown state '" + a + "'");
    if (j < 0) throw error(errc::dangling_reference, "relation names unknown state '" + b + "'");
    m.set(i, j, true);
  }
  // The candidate mediating map sends a pair (s, t) to
  //   (first(alpha(s)), { (a, b) in r | a in succ(s), b in succ(t) }).
  // Both squares commute iff projecting that pair set yields exactly the
  // successor observations and the two label observations agree.
  for (const auto& [sa, sb] : r.pairs) {
    int s = c1.index_of(sa);
    int t = c2.index_of(sb);
    const auto& [lbl1, succ1] = c1.alpha[static_cast<std::size_t>(s)];
    const auto& [lbl2, succ2] = c2.alpha[static_cast<std::size_t>(t)];
    std::vector<int> proj1, proj2;
    for (int a : succ1) {
      for (int b : succ2) {
        if (m.get(a, b)) {
          proj1.push_back(a);
          proj2.push_back(b);
        }
      }
    }
    auto canon = [](std::vector<int>& v) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    canon(proj1);
    canon(proj2);
    if (proj1 != succ1) return false;          // left square
    if (lbl1 != lbl2 || proj2 != succ2) return false;  // right square
  }
  return true;
}

}  // namespace ksmin
