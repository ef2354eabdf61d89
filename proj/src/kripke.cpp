#include "ksmin/kripke.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "line_parser.hpp"

namespace ksmin {

using detail::ident_head;
using detail::ident_tail;
using detail::syntax_fail;
using detail::tokenize_line;

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

bool is_atom_ident(std::string_view s) {
  if (s.empty() || !ident_head(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), ident_tail);
}

bool is_state_ident(std::string_view s) {
  if (s.empty() || !ident_head(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) { return ident_tail(c) || c == '.'; });
}

AtomSet::AtomSet(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (!is_atom_ident(a)) throw error(errc::syntax, "bad proposition identifier '" + a + "'");
  }
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
  if (atoms_.size() > kMaxAtoms) {
    throw error(errc::size_cap, "structure has " + std::to_string(atoms_.size()) +
                                    " propositions, cap is " + std::to_string(kMaxAtoms));
  }
}

int AtomSet::index_of(std::string_view atom) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), atom);
  if (it == atoms_.end() || *it != atom) return -1;
  return static_cast<int>(it - atoms_.begin());
}

KripkeStructure::KripkeStructure(const KripkeDraft& draft) : atoms_(draft.aps) {
  states_ = draft.states;
  for (const auto& s : states_) {
    if (!is_state_ident(s)) throw error(errc::syntax, "bad state identifier '" + s + "'");
    if (s.size() > kMaxIdentLength) {
      throw error(errc::size_cap, "state identifier '" + s + "' exceeds " +
                                      std::to_string(kMaxIdentLength) + " bytes");
    }
  }
  std::sort(states_.begin(), states_.end());
  for (std::size_t i = 1; i < states_.size(); ++i) {
    if (states_[i] == states_[i - 1]) {
      throw error(errc::duplicate_state, "state '" + states_[i] + "' declared twice");
    }
  }

  auto state_index = [&](const std::string& name) {
    auto it = std::lower_bound(states_.begin(), states_.end(), name);
    if (it == states_.end() || *it != name) {
      throw error(errc::unknown_state, "reference to undeclared state '" + name + "'");
    }
    return static_cast<int>(it - states_.begin());
  };

  for (const auto& s : draft.init) init_.push_back(state_index(s));
  std::sort(init_.begin(), init_.end());
  init_.erase(std::unique(init_.begin(), init_.end()), init_.end());
  if (init_.empty()) throw error(errc::empty_init, "initial state set is empty");

  labels_.assign(states_.size(), 0);
  for (const auto& [state, atoms] : draft.labels) {
    int s = state_index(state);
    std::uint64_t bits = 0;
    for (const auto& a : atoms) {
      int i = atoms_.index_of(a);
      if (i < 0) throw error(errc::unknown_proposition, "undeclared proposition '" + a +
                                                            "' in label of '" + state + "'");
      bits |= std::uint64_t{1} << i;
    }
    labels_[static_cast<std::size_t>(s)] = bits;
  }

  succs_.assign(states_.size(), {});
  for (const auto& [state, targets] : draft.trans) {
    int s = state_index(state);
    auto& out = succs_[static_cast<std::size_t>(s)];
    for (const auto& t : targets) out.push_back(state_index(t));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  for (std::size_t s = 0; s < states_.size(); ++s) {
    if (succs_[s].empty()) {
      throw error(errc::non_total, "state '" + states_[s] + "' has no successor");
    }
  }
}

int KripkeStructure::index_of(std::string_view state) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state) return -1;
  return static_cast<int>(it - states_.begin());
}

bool KripkeStructure::is_initial(int s) const {
  return std::binary_search(init_.begin(), init_.end(), s);
}

std::vector<std::string> KripkeStructure::label_names(int s) const {
  std::vector<std::string> out;
  std::uint64_t bits = label_bits(s);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (bits & (std::uint64_t{1} << i)) out.push_back(atoms_.name(static_cast<int>(i)));
  }
  return out;
}

int CoalgebraView::index_of(std::string_view state) const {
  auto it = std::lower_bound(carrier.begin(), carrier.end(), state);
  if (it == carrier.end() || *it != state) return -1;
  return static_cast<int>(it - carrier.begin());
}

namespace {

KripkeDraft parse_draft(std::string_view text) {
  KripkeDraft draft;
  bool saw_header = false;
  bool saw_aps = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize_line(raw, lineno);
    if (toks.empty()) continue;
    const std::string& dir = toks[0].text;
    if (!saw_header) {
      if (dir != "kripke") syntax_fail(lineno, toks[0].column, "expected 'kripke' header");
      if (toks.size() > 1) syntax_fail(lineno, toks[1].column, "trailing tokens after 'kripke'");
      saw_header = true;
      continue;
    }
    if (dir == "aps") {
      if (saw_aps) syntax_fail(lineno, toks[0].column, "duplicate 'aps' line");
      saw_aps = true;
      for (std::size_t i = 1; i < toks.size(); ++i) draft.aps.push_back(toks[i].text);
    } else if (dir == "state") {
      if (!saw_aps) syntax_fail(lineno, toks[0].column, "'state' before 'aps'");
      if (toks.size() < 3 || toks[2].text != ":") {
        syntax_fail(lineno, toks.size() > 1 ? toks[1].column : toks[0].column,
                    "expected 'state <id> : <ap>*'");
      }
      const std::string& name = toks[1].text;
      if (draft.labels.count(name)) {
        throw error(errc::duplicate_state,
                    "line " + std::to_string(lineno) + ": state '" + name + "' declared twice");
      }
      draft.states.push_back(name);
      auto& lbl = draft.labels[name];
      for (std::size_t i = 3; i < toks.size(); ++i) lbl.push_back(toks[i].text);
    } else if (dir == "init") {
      if (toks.size() < 2) syntax_fail(lineno, toks[0].column, "'init' needs at least one state");
      for (std::size_t i = 1; i < toks.size(); ++i) draft.init.push_back(toks[i].text);
    } else if (dir == "trans") {
      if (toks.size() < 4 || toks[2].text != "->") {
        syntax_fail(lineno, toks[0].column, "expected 'trans <id> -> <id>+'");
      }
      auto& out = draft.trans[toks[1].text];
      for (std::size_t i = 3; i < toks.size(); ++i) out.push_back(toks[i].text);
    } else {
      syntax_fail(lineno, toks[0].column, "unknown directive '" + dir + "'");
    }
  }
  if (!saw_header) throw error(errc::syntax, "empty input, expected 'kripke' header");
  if (!saw_aps) throw error(errc::syntax, "missing 'aps' line");
  return draft;
}

}  // namespace

KripkeStructure parse_kripke(std::string_view text) {
  return KripkeStructure(parse_draft(text));
}

KripkeStructure parse_kripke_complete_selfloops(std::string_view text,
                                                std::vector<std::string>* added) {
  KripkeDraft draft = parse_draft(text);
  for (const auto& s : draft.states) {
    auto it = draft.trans.find(s);
    if (it == draft.trans.end() || it->second.empty()) {
      draft.trans[s].push_back(s);
      if (added) added->push_back(s + " -> " + s);
    }
  }
  return KripkeStructure(draft);
}

std::string serialize_kripke(const KripkeStructure& k) {
  std::string out = "kripke\naps";
  for (const auto& a : k.atoms().names()) out += " " + a;
  out += "\n";
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    out += "state " + k.state_name(static_cast<int>(s)) + " :";
    for (const auto& a : k.label_names(static_cast<int>(s))) out += " " + a;
    out += "\n";
  }
  out += "init";
  for (int s : k.init()) out += " " + k.state_name(s);
  out += "\n";
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    out += "trans " + k.state_name(static_cast<int>(s)) + " ->";
    for (int t : k.successors(static_cast<int>(s))) out += " " + k.state_name(t);
    out += "\n";
  }
  return out;
}

KripkeStructure restrict_reachable(const KripkeStructure& k) {
  std::vector<bool> seen(k.state_count(), false);
  std::deque<int> queue(k.init().begin(), k.init().end());
  for (int s : k.init()) seen[static_cast<std::size_t>(s)] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int t : k.successors(s)) {
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        queue.push_back(t);
      }
    }
  }
  KripkeDraft draft;
  draft.aps = k.atoms().names();
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    if (!seen[s]) continue;
    const std::string& name = k.state_name(static_cast<int>(s));
    draft.states.push_back(name);
    draft.labels[name] = k.label_names(static_cast<int>(s));
    auto& out = draft.trans[name];
    for (int t : k.successors(static_cast<int>(s))) out.push_back(k.state_name(t));
  }
  for (int s : k.init()) draft.init.push_back(k.state_name(s));
  return KripkeStructure(draft);
}

CoalgebraView to_coalgebra_view(const KripkeStructure& k) {
  CoalgebraView view;
  view.aps = k.atoms();
  view.carrier = k.states();
  view.init = k.init();
  view.alpha.reserve(k.state_count());
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    view.alpha.emplace_back(k.label_bits(static_cast<int>(s)),
                            k.successors(static_cast<int>(s)));
  }
  return view;
}

KripkeStructure from_coalgebra_view(const CoalgebraView& view) {
  KripkeDraft draft;
  draft.aps = view.aps.names();
  draft.states = view.carrier;
  for (int s : view.init) draft.init.push_back(view.carrier[static_cast<std::size_t>(s)]);
  for (std::size_t s = 0; s < view.carrier.size(); ++s) {
    const auto& [bits, succ] = view.alpha[s];
    auto& lbl = draft.labels[view.carrier[s]];
    for (std::size_t i = 0; i < view.aps.size(); ++i) {
      if (bits & (std::uint64_t{1} << i)) lbl.push_back(view.aps.name(static_cast<int>(i)));
    }
    auto& out = draft.trans[view.carrier[s]];
    for (int t : succ) out.push_back(view.carrier[static_cast<std::size_t>(t)]);
  }
  return KripkeStructure(draft);
}

std::string export_dot(const KripkeStructure& k) {
  std::string out = "digraph kripke {\n";
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    int i = static_cast<int>(s);
    out += "  \"" + k.state_name(i) + "\" [shape=" +
           (k.is_initial(i) ? "doublecircle" : "circle") + ", label=\"" + k.state_name(i) +
           "\\n{" + join(k.label_names(i), ",") + "}\"];\n";
  }
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    for (int t : k.successors(static_cast<int>(s))) {
      out += "  \"" + k.state_name(static_cast<int>(s)) + "\" -> \"" + k.state_name(t) + "\";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace ksmin
