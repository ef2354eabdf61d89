#include "ksmin/ctl.hpp"

#include <algorithm>

namespace ksmin {

using Kind = CtlFormula::Kind;

CtlFormula::Ptr CtlFormula::constant(bool value) {
  return std::make_shared<const CtlFormula>(
      CtlFormula{value ? Kind::constant_true : Kind::constant_false, "", nullptr, nullptr});
}

CtlFormula::Ptr CtlFormula::atom(std::string name) {
  return std::make_shared<const CtlFormula>(
      CtlFormula{Kind::atom, std::move(name), nullptr, nullptr});
}

CtlFormula::Ptr CtlFormula::unary(Kind kind, Ptr f) {
  return std::make_shared<const CtlFormula>(CtlFormula{kind, "", std::move(f), nullptr});
}

CtlFormula::Ptr CtlFormula::binary(Kind kind, Ptr lhs, Ptr rhs) {
  return std::make_shared<const CtlFormula>(
      CtlFormula{kind, "", std::move(lhs), std::move(rhs)});
}

bool formulas_equal(const CtlFormula::Ptr& a, const CtlFormula::Ptr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return formulas_equal(a->lhs, b->lhs) && formulas_equal(a->rhs, b->rhs);
}

namespace {

const char* unary_name(Kind k) {
  switch (k) {
    case Kind::negation: return "!";
    case Kind::ex: return "EX";
    case Kind::ax: return "AX";
    case Kind::ef: return "EF";
    case Kind::af: return "AF";
    case Kind::eg: return "EG";
    case Kind::ag: return "AG";
    default: return nullptr;
  }
}

}  // namespace

std::string to_string(const CtlFormula::Ptr& f) {
  switch (f->kind) {
    case Kind::constant_true: return "true";
    case Kind::constant_false: return "false";
    case Kind::atom: return f->name;
    case Kind::negation: return "!" + to_string(f->lhs);
    case Kind::ex:
    case Kind::ax:
    case Kind::ef:
    case Kind::af:
    case Kind::eg:
    case Kind::ag: return std::string(unary_name(f->kind)) + " " + to_string(f->lhs);
    case Kind::conjunction: return "(" + to_string(f->lhs) + " & " + to_string(f->rhs) + ")";
    case Kind::disjunction: return "(" + to_string(f->lhs) + " | " + to_string(f->rhs) + ")";
    case Kind::implication: return "(" + to_string(f->lhs) + " -> " + to_string(f->rhs) + ")";
    case Kind::eu: return "E[" + to_string(f->lhs) + " U " + to_string(f->rhs) + "]";
    case Kind::au: return "A[" + to_string(f->lhs) + " U " + to_string(f->rhs) + "]";
  }
  throw error(errc::internal, "unhandled formula kind");
}

namespace {

struct FormulaToken {
  std::string text;
  int column;
};

[[noreturn]] void formula_fail(int col, const std::string& msg) {
  throw error(errc::syntax, "formula, column " + std::to_string(col) + ": " + msg);
}

std::vector<FormulaToken> lex_formula(std::string_view text) {
  std::vector<FormulaToken> out;
  std::size_t i = 0;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  while (i < text.size()) {
    char c = text[i];
    int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
    } else if (c == '!' || c == '&' || c == '|' || c == '(' || c == ')' || c == '[' ||
               c == ']') {
      out.push_back({std::string(1, c), col});
      ++i;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({"->", col});
      i += 2;
    } else if (alpha(c)) {
      std::size_t j = i;
      while (j < text.size() && alnum(text[j])) ++j;
      out.push_back({std::string(text.substr(i, j - i)), col});
      i = j;
    } else {
      formula_fail(col, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : toks_(lex_formula(text)) {}

  CtlFormula::Ptr parse() {
    CtlFormula::Ptr f = implication();
    if (pos_ < toks_.size()) {
      formula_fail(toks_[pos_].column, "trailing input '" + toks_[pos_].text + "'");
    }
    return f;
  }

 private:
  std::vector<FormulaToken> toks_;
  std::size_t pos_ = 0;

  bool peek(const std::string& text) const {
    return pos_ < toks_.size() && toks_[pos_].text == text;
  }
  bool accept(const std::string& text) {
    if (!peek(text)) return false;
    ++pos_;
    return true;
  }
  void expect(const std::string& text) {
    if (!accept(text)) {
      if (pos_ < toks_.size()) {
        formula_fail(toks_[pos_].column,
                     "expected '" + text + "', found '" + toks_[pos_].text + "'");
      }
      formula_fail(static_cast<int>(toks_.empty() ? 1 : toks_.back().column + 1),
                   "expected '" + text + "' before end of input");
    }
  }

  CtlFormula::Ptr implication() {  // right-associative
    CtlFormula::Ptr lhs = disjunction();
    if (accept("->")) return CtlFormula::binary(Kind::implication, lhs, implication());
    return lhs;
  }

  CtlFormula::Ptr disjunction() {
    CtlFormula::Ptr f = conjunction();
    while (accept("|")) f = CtlFormula::binary(Kind::disjunction, f, conjunction());
    return f;
  }

  CtlFormula::Ptr conjunction() {
    CtlFormula::Ptr f = unary();
    while (accept("&")) f = CtlFormula::binary(Kind::conjunction, f, unary());
    return f;
  }

  CtlFormula::Ptr unary() {
    if (accept("!")) return CtlFormula::unary(Kind::negation, unary());
    if (accept("EX")) return CtlFormula::unary(Kind::ex, unary());
    if (accept("AX")) return CtlFormula::unary(Kind::ax, unary());
    if (accept("EF")) return CtlFormula::unary(Kind::ef, unary());
    if (accept("AF")) return CtlFormula::unary(Kind::af, unary());
    if (accept("EG")) return CtlFormula::unary(Kind::eg, unary());
    if (accept("AG")) return CtlFormula::unary(Kind::ag, unary());
    return primary();
  }

  CtlFormula::Ptr primary() {
    if (pos_ >= toks_.size()) {
      formula_fail(toks_.empty() ? 1 : toks_.back().column + 1, "formula ends too early");
    }
    if (accept("true")) return CtlFormula::constant(true);
    if (accept("false")) return CtlFormula::constant(false);
    if (accept("(")) {
      CtlFormula::Ptr f = implication();
      expect(")");
      return f;
    }
    if (accept("E") || accept("A")) {
      Kind kind = toks_[pos_ - 1].text == "E" ? Kind::eu : Kind::au;
      expect("[");
      CtlFormula::Ptr lhs = implication();
      expect("U");
      CtlFormula::Ptr rhs = implication();
      expect("]");
      return CtlFormula::binary(kind, lhs, rhs);
    }
    const FormulaToken& tok = toks_[pos_];
    if (tok.text == "U" || !is_atom_ident(tok.text)) {
      formula_fail(tok.column, "unexpected token '" + tok.text + "'");
    }
    ++pos_;
    return CtlFormula::atom(tok.text);
  }
};

using StateSet = std::vector<bool>;

StateSet eval(const KripkeStructure& k, const CtlFormula::Ptr& f);

StateSet complement(StateSet v) {
  v.flip();
  return v;
}

StateSet set_and(const StateSet& a, const StateSet& b) {
  StateSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

StateSet set_or(const StateSet& a, const StateSet& b) {
  StateSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

// States with some successor inside `target`.
StateSet pre_exists(const KripkeStructure& k, const StateSet& target) {
  StateSet out(k.state_count(), false);
  for (std::size_t s = 0; s < k.state_count(); ++s) {
    for (int t : k.successors(static_cast<int>(s))) {
      if (target[static_cast<std::size_t>(t)]) {
        out[s] = true;
        break;
      }
    }
  }
  return out;
}

// Least fixpoint for E[f U g]: grow g-states backwards through f-states.
StateSet eval_eu(const KripkeStructure& k, const StateSet& f, const StateSet& g) {
  StateSet sat = g;
  for (;;) {
    StateSet grown = set_or(sat, set_and(f, pre_exists(k, sat)));
    if (grown == sat) return sat;
    sat = std::move(grown);
  }
}

// Greatest fixpoint for EG f: shrink f-states to those that can stay in.
StateSet eval_eg(const KripkeStructure& k, const StateSet& f) {
  StateSet sat = f;
  for (;;) {
    StateSet kept = set_and(sat, pre_exists(k, sat));
    if (kept == sat) return sat;
    sat = std::move(kept);
  }
}

StateSet eval(const KripkeStructure& k, const CtlFormula::Ptr& f) {
  switch (f->kind) {
    case Kind::constant_true: return StateSet(k.state_count(), true);
    case Kind::constant_false: return StateSet(k.state_count(), false);
    case Kind::atom: {
      int i = k.atoms().index_of(f->name);
      if (i < 0) {
        throw error(errc::unknown_proposition,
                    "formula uses undeclared proposition '" + f->name + "'");
      }
      StateSet out(k.state_count(), false);
      for (std::size_t s = 0; s < k.state_count(); ++s) {
        out[s] = ((k.label_bits(static_cast<int>(s)) >> i) & 1) != 0;
      }
      return out;
    }
    case Kind::negation: return complement(eval(k, f->lhs));
    case Kind::conjunction: return set_and(eval(k, f->lhs), eval(k, f->rhs));
    case Kind::disjunction: return set_or(eval(k, f->lhs), eval(k, f->rhs));
    case Kind::implication: return set_or(complement(eval(k, f->lhs)), eval(k, f->rhs));
    case Kind::ex: return pre_exists(k, eval(k, f->lhs));
    case Kind::ax: return complement(pre_exists(k, complement(eval(k, f->lhs))));
    case Kind::eu: return eval_eu(k, eval(k, f->lhs), eval(k, f->rhs));
    case Kind::ef: return eval_eu(k, StateSet(k.state_count(), true), eval(k, f->lhs));
    case Kind::eg: return eval_eg(k, eval(k, f->lhs));
    case Kind::af: return complement(eval_eg(k, complement(eval(k, f->lhs))));
    case Kind::ag:
      return complement(
          eval_eu(k, StateSet(k.state_count(), true), complement(eval(k, f->lhs))));
    case Kind::au: {
      // A[f U g] = !E[!g U (!f & !g)] & !EG !g
      StateSet nf = complement(eval(k, f->lhs));
      StateSet ng = complement(eval(k, f->rhs));
      StateSet left = complement(eval_eu(k, ng, set_and(nf, ng)));
      StateSet right = complement(eval_eg(k, ng));
      return set_and(left, right);
    }
  }
  throw error(errc::internal, "unhandled formula kind");
}

}  // namespace

CtlFormula::Ptr parse_formula(std::string_view text) {
  return FormulaParser(text).parse();
}

std::vector<int> sat_set(const KripkeStructure& k, const CtlFormula::Ptr& f) {
  StateSet sat = eval(k, f);
  std::vector<int> out;
  for (std::size_t s = 0; s < sat.size(); ++s) {
    if (sat[s]) out.push_back(static_cast<int>(s));
  }
  return out;
}

bool models(const KripkeStructure& k, const CtlFormula::Ptr& f) {
  StateSet sat = eval(k, f);
  return std::all_of(k.init().begin(), k.init().end(),
                     [&](int s) { return sat[static_cast<std::size_t>(s)]; });
}

}  // namespace ksmin
