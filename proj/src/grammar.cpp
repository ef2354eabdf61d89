#include "ksmin/grammar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "line_parser.hpp"

namespace ksmin {

using detail::syntax_fail;
using detail::tokenize_line;

namespace {

std::string label_text(const std::vector<std::string>& atoms) {
  std::string out = "{";
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ",";
    out += atoms[i];
  }
  return out + "}";
}

// Sorts and deduplicates a fragment in place, checking identifiers and
// intra-fragment references.
void normalize_fragment(GrammarFragment& f, const AtomSet& atoms, const char* which) {
  for (const auto& s : f.states) {
    if (!is_state_ident(s)) throw error(errc::syntax, "bad state identifier '" + s + "'");
    if (s.size() > kMaxIdentLength) {
      throw error(errc::size_cap, "state identifier '" + s + "' exceeds " +
                                      std::to_string(kMaxIdentLength) + " bytes");
    }
  }
  std::sort(f.states.begin(), f.states.end());
  for (std::size_t i = 1; i < f.states.size(); ++i) {
    if (f.states[i] == f.states[i - 1]) {
      throw error(errc::duplicate_state,
                  std::string(which) + " state '" + f.states[i] + "' declared twice");
    }
  }
  auto check_state = [&](const std::string& s) {
    if (!std::binary_search(f.states.begin(), f.states.end(), s)) {
      throw error(errc::unknown_state,
                  std::string(which) + " references undeclared state '" + s + "'");
    }
  };
  for (auto& [state, out] : f.trans) {
    check_state(state);
    for (const auto& t : out) check_state(t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  for (auto& [state, lbl] : f.labels) {
    check_state(state);
    for (const auto& a : lbl) {
      if (!atoms.contains(a)) {
        throw error(errc::unknown_proposition,
                    std::string(which) + " uses undeclared proposition '" + a + "'");
      }
    }
    std::sort(lbl.begin(), lbl.end());
    lbl.erase(std::unique(lbl.begin(), lbl.end()), lbl.end());
  }
  for (const auto& s : f.states) f.labels.try_emplace(s);  // default empty label
  for (const auto& s : f.init) check_state(s);
  std::sort(f.init.begin(), f.init.end());
  f.init.erase(std::unique(f.init.begin(), f.init.end()), f.init.end());
}

const std::vector<std::string>& label_of(const GrammarFragment& f, const std::string& s) {
  return f.labels.at(s);
}

bool has_successors(const GrammarFragment& f, const std::string& s) {
  auto it = f.trans.find(s);
  return it != f.trans.end() && !it->second.empty();
}

}  // namespace

GraphGrammar::GraphGrammar(const GrammarDraft& draft)
    : n_(draft.n),
      atoms_(draft.aps),
      g0_(draft.g0),
      exits_(draft.exits),
      rule_(draft.rule),
      ins_(draft.ins),
      outs_(draft.outs) {
  if (n_ < 1) throw error(errc::arity_mismatch, "grammar arity N must be positive");
  normalize_fragment(g0_, atoms_, "g0");
  normalize_fragment(rule_, atoms_, "rule");
  if (!rule_.init.empty()) throw error(errc::syntax, "rule fragment must not declare init");
  if (g0_.init.empty()) throw error(errc::empty_init, "g0 has no initial state");

  auto require_size = [&](const std::vector<std::string>& v, const char* what) {
    if (v.size() != static_cast<std::size_t>(n_)) {
      throw error(errc::arity_mismatch, std::string(what) + " list has " +
                                            std::to_string(v.size()) + " entries, N is " +
                                            std::to_string(n_));
    }
  };
  require_size(exits_, "exit");
  require_size(ins_, "in");
  require_size(outs_, "out");

  auto in_fragment = [](const GrammarFragment& f, const std::string& s) {
    return std::binary_search(f.states.begin(), f.states.end(), s);
  };
  for (const auto& e : exits_) {
    if (!in_fragment(g0_, e)) throw error(errc::unknown_state, "exit '" + e + "' not in g0");
  }
  for (const auto& s : ins_) {
    if (!in_fragment(rule_, s)) throw error(errc::unknown_state, "in '" + s + "' not in rule");
  }
  for (const auto& s : outs_) {
    if (!in_fragment(rule_, s)) throw error(errc::unknown_state, "out '" + s + "' not in rule");
  }

  std::set<std::string> seen(exits_.begin(), exits_.end());
  if (seen.size() != exits_.size()) {
    throw error(errc::distinctness, "exit states must be pairwise distinct");
  }
  seen.clear();
  seen.insert(ins_.begin(), ins_.end());
  seen.insert(outs_.begin(), outs_.end());
  if (seen.size() != 2 * static_cast<std::size_t>(n_)) {
    throw error(errc::distinctness, "in/out states must be pairwise distinct");
  }

  for (int i = 0; i < n_; ++i) {
    const auto& ex_lbl = label_of(g0_, exits_[static_cast<std::size_t>(i)]);
    const auto& in_lbl = label_of(rule_, ins_[static_cast<std::size_t>(i)]);
    const auto& out_lbl = label_of(rule_, outs_[static_cast<std::size_t>(i)]);
    if (ex_lbl != in_lbl || in_lbl != out_lbl) {
      throw error(errc::label_constraint,
                  "boundary " + std::to_string(i + 1) + ": labels differ, exit " +
                      label_text(ex_lbl) + ", in " + label_text(in_lbl) + ", out " +
                      label_text(out_lbl));
    }
  }

  // Exit and out states may not step at all: their forward behavior is
  // exactly the spliced rule's. A g0 edge out of an exit would survive
  // folding on the one merged exit state and so act at every splice level,
  // while the unfolding has it at level zero only.
  std::set<std::string> exit_set(exits_.begin(), exits_.end());
  for (const auto& e : exits_) {
    auto it = g0_.trans.find(e);
    if (it != g0_.trans.end() && !it->second.empty()) {
      throw error(errc::restriction,
                  "edge " + e + " -> " + it->second.front() + " leaves exit state " + e);
    }
  }
  for (const auto& o : outs_) {
    auto it = rule_.trans.find(o);
    if (it != rule_.trans.end() && !it->second.empty()) {
      throw error(errc::restriction,
                  "edge " + o + " -> " + it->second.front() + " leaves out state " + o);
    }
  }

  for (const auto& s : g0_.states) {
    if (!exit_set.count(s) && !has_successors(g0_, s)) {
      throw error(errc::non_total, "g0 state '" + s + "' has no successor");
    }
  }
  std::set<std::string> out_set(outs_.begin(), outs_.end());
  for (const auto& s : rule_.states) {
    if (!out_set.count(s) && !has_successors(rule_, s)) {
      throw error(errc::non_total, "rule state '" + s + "' has no successor");
    }
  }
}

namespace {

enum class Section { none, g0, rule };

}  // namespace

GraphGrammar parse_grammar(std::string_view text) {
  GrammarDraft draft;
  bool saw_header = false;
  bool saw_aps = false;
  Section section = Section::none;
  std::vector<std::string> exit_by_index, in_by_index, out_by_index;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;

  auto set_indexed = [&](std::vector<std::string>& slot, const std::string& what, int idx,
                         const std::string& id, int line, int col) {
    if (idx < 1 || idx > draft.n) {
      throw error(errc::arity_mismatch, "line " + std::to_string(line) + ": " + what +
                                            " index " + std::to_string(idx) +
                                            " outside 1.." + std::to_string(draft.n));
    }
    if (slot.size() < static_cast<std::size_t>(draft.n)) {
      slot.resize(static_cast<std::size_t>(draft.n));
    }
    auto& cell = slot[static_cast<std::size_t>(idx - 1)];
    if (!cell.empty()) syntax_fail(line, col, "duplicate " + what + " " + std::to_string(idx));
    cell = id;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize_line(raw, lineno);
    if (toks.empty()) continue;
    const std::string& dir = toks[0].text;
    if (!saw_header) {
      if (dir != "grammar" || toks.size() != 2) {
        syntax_fail(lineno, toks[0].column, "expected 'grammar <N>' header");
      }
      try {
        draft.n = std::stoi(toks[1].text);
      } catch (const std::exception&) {
        syntax_fail(lineno, toks[1].column, "bad grammar arity '" + toks[1].text + "'");
      }
      saw_header = true;
      continue;
    }
    if (dir == "aps") {
      if (saw_aps) syntax_fail(lineno, toks[0].column, "duplicate 'aps' line");
      saw_aps = true;
      for (std::size_t i = 1; i < toks.size(); ++i) draft.aps.push_back(toks[i].text);
      continue;
    }
    if (dir == "section") {
      if (toks.size() != 2) syntax_fail(lineno, toks[0].column, "expected 'section g0|rule'");
      if (toks[1].text == "g0") {
        section = Section::g0;
      } else if (toks[1].text == "rule") {
        section = Section::rule;
      } else {
        syntax_fail(lineno, toks[1].column, "unknown section '" + toks[1].text + "'");
      }
      continue;
    }
    if (section == Section::none) {
      syntax_fail(lineno, toks[0].column, "directive '" + dir + "' before any section");
    }
    GrammarFragment& frag = section == Section::g0 ? draft.g0 : draft.rule;
    if (dir == "state") {
      if (toks.size() < 3 || toks[2].text != ":") {
        syntax_fail(lineno, toks.size() > 1 ? toks[1].column : toks[0].column,
                    "expected 'state <id> : <ap>*'");
      }
      const std::string& name = toks[1].text;
      if (frag.labels.count(name)) {
        throw error(errc::duplicate_state,
                    "line " + std::to_string(lineno) + ": state '" + name + "' declared twice");
      }
      frag.states.push_back(name);
      auto& lbl = frag.labels[name];
      for (std::size_t i = 3; i < toks.size(); ++i) lbl.push_back(toks[i].text);
    } else if (dir == "trans") {
      if (toks.size() < 4 || toks[2].text != "->") {
        syntax_fail(lineno, toks[0].column, "expected 'trans <id> -> <id>+'");
      }
      auto& out = frag.trans[toks[1].text];
      for (std::size_t i = 3; i < toks.size(); ++i) out.push_back(toks[i].text);
    } else if (dir == "init") {
      if (section != Section::g0) syntax_fail(lineno, toks[0].column, "'init' only in g0");
      if (toks.size() < 2) syntax_fail(lineno, toks[0].column, "'init' needs a state");
      for (std::size_t i = 1; i < toks.size(); ++i) frag.init.push_back(toks[i].text);
    } else if (dir == "exit" || dir == "in" || dir == "out") {
      if ((dir == "exit") != (section == Section::g0)) {
        syntax_fail(lineno, toks[0].column,
                    "'" + dir + "' belongs to the " + (dir == "exit" ? "g0" : "rule") +
                        " section");
      }
      if (toks.size() != 3) {
        syntax_fail(lineno, toks[0].column, "expected '" + dir + " <i> <id>'");
      }
      int idx = 0;
      try {
        idx = std::stoi(toks[1].text);
      } catch (const std::exception&) {
        syntax_fail(lineno, toks[1].column, "bad index '" + toks[1].text + "'");
      }
      auto& slot = dir == "exit" ? exit_by_index : dir == "in" ? in_by_index : out_by_index;
      set_indexed(slot, dir, idx, toks[2].text, lineno, toks[1].column);
    } else {
      syntax_fail(lineno, toks[0].column, "unknown directive '" + dir + "'");
    }
  }
  if (!saw_header) throw error(errc::syntax, "empty input, expected 'grammar <N>' header");
  if (!saw_aps) throw error(errc::syntax, "missing 'aps' line");

  auto collect = [&](std::vector<std::string>& slot, const char* what) {
    for (int i = 0; i < draft.n; ++i) {
      if (slot.size() <= static_cast<std::size_t>(i) ||
          slot[static_cast<std::size_t>(i)].empty()) {
        throw error(errc::arity_mismatch,
                    std::string("missing ") + what + " " + std::to_string(i + 1));
      }
    }
    slot.resize(static_cast<std::size_t>(draft.n));
    return slot;
  };
  draft.exits = collect(exit_by_index, "exit");
  draft.ins = collect(in_by_index, "in");
  draft.outs = collect(out_by_index, "out");
  return GraphGrammar(draft);
}

namespace {

// Index of s in the distinguished-state list, or -1.
int boundary_index(const std::vector<std::string>& list, const std::string& s) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == s) return static_cast<int>(i);
  }
  return -1;
}

void add_state(KripkeDraft& draft, std::set<std::string>& taken, const std::string& name,
               const std::vector<std::string>& label) {
  if (!taken.insert(name).second) {
    throw error(errc::name_collision, "renamed state '" + name + "' collides");
  }
  draft.states.push_back(name);
  draft.labels[name] = label;
}

}  // namespace

KripkeStructure fold(const GraphGrammar& g) {
  // Splice by renaming: in_i and out_i both become ex_i, interior rule
  // states get an "A." prefix, g0 states keep their names.
  auto rename = [&](const std::string& s) -> std::string {
    int i = boundary_index(g.ins(), s);
    if (i < 0) i = boundary_index(g.outs(), s);
    if (i >= 0) return g.exits()[static_cast<std::size_t>(i)];
    return "A." + s;
  };

  KripkeDraft draft;
  draft.aps = g.atoms().names();
  draft.init = g.g0().init;
  std::set<std::string> taken;
  for (const auto& s : g.g0().states) add_state(draft, taken, s, g.g0().labels.at(s));
  for (const auto& s : g.rule().states) {
    if (boundary_index(g.ins(), s) >= 0 || boundary_index(g.outs(), s) >= 0) continue;
    add_state(draft, taken, "A." + s, g.rule().labels.at(s));
  }
  for (const auto& [from, out] : g.g0().trans) {
    auto& edges = draft.trans[from];
    edges.insert(edges.end(), out.begin(), out.end());
  }
  for (const auto& [from, out] : g.rule().trans) {
    auto& edges = draft.trans[rename(from)];
    for (const auto& t : out) edges.push_back(rename(t));
  }
  return KripkeStructure(draft);
}

KripkeStructure unfold(const GraphGrammar& g, int depth) {
  if (depth < 1) throw error(errc::internal, "unfold depth must be positive");

  // Copy k's in_i aliases copy (k-1)'s out_i; copy 1's in_i aliases ex_i.
  auto rename_at = [&](int copy, const std::string& s) -> std::string {
    int i = boundary_index(g.ins(), s);
    if (i >= 0) {
      if (copy == 1) return g.exits()[static_cast<std::size_t>(i)];
      return "A" + std::to_string(copy - 1) + "." + g.outs()[static_cast<std::size_t>(i)];
    }
    return "A" + std::to_string(copy) + "." + s;
  };

  KripkeDraft draft;
  draft.aps = g.atoms().names();
  draft.init = g.g0().init;
  std::set<std::string> taken;
  for (const auto& s : g.g0().states) add_state(draft, taken, s, g.g0().labels.at(s));
  for (int copy = 1; copy <= depth; ++copy) {
    for (const auto& s : g.rule().states) {
      if (boundary_index(g.ins(), s) >= 0) continue;
      add_state(draft, taken, rename_at(copy, s), g.rule().labels.at(s));
    }
  }
  for (const auto& [from, out] : g.g0().trans) {
    auto& edges = draft.trans[from];
    edges.insert(edges.end(), out.begin(), out.end());
  }
  for (int copy = 1; copy <= depth; ++copy) {
    for (const auto& [from, out] : g.rule().trans) {
      auto& edges = draft.trans[rename_at(copy, from)];
      for (const auto& t : out) edges.push_back(rename_at(copy, t));
    }
  }
  // Truncation closure: the frontier out states loop on themselves.
  for (const auto& o : g.outs()) {
    std::string frontier = "A" + std::to_string(depth) + "." + o;
    draft.trans[frontier].push_back(frontier);
  }
  return KripkeStructure(draft);
}

}  // namespace ksmin
