#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ksmin/kripke.hpp"

namespace ksmin {

/// Formula AST. The surface syntax is kept as parsed; evaluation
/// normalizes the derived operators (AX, EF, AF, AG, AU and ->) onto
/// EX / EG / EU plus the booleans.
class CtlFormula {
 public:
  enum class Kind {
    constant_true,
    constant_false,
    atom,
    negation,
    conjunction,
    disjunction,
    implication,
    ex,
    ax,
    ef,
    af,
    eg,
    ag,
    eu,
    au,
  };
  using Ptr = std::shared_ptr<const CtlFormula>;

  Kind kind;
  std::string name;  // atom only
  Ptr lhs, rhs;      // unary operators use lhs

  static Ptr constant(bool value);
  static Ptr atom(std::string name);
  static Ptr unary(Kind kind, Ptr f);
  static Ptr binary(Kind kind, Ptr lhs, Ptr rhs);
};

bool formulas_equal(const CtlFormula::Ptr& a, const CtlFormula::Ptr& b);

/// Fully parenthesized text form; parse_formula(to_string(f)) rebuilds f.
std::string to_string(const CtlFormula::Ptr& f);

/// Grammar: constants, atoms, !, &, |, -> (right-assoc, loosest), the
/// unary temporal operators and E[· U ·] / A[· U ·]. Unary binds tightest,
/// then &, then |, then ->.
CtlFormula::Ptr parse_formula(std::string_view text);

/// Exactly the states satisfying f, as sorted indices. EX by predecessor
/// image, E[· U ·] by backward least fixpoint, EG by backward greatest
/// fixpoint. Throws on a proposition not in k's atom set.
std::vector<int> sat_set(const KripkeStructure& k, const CtlFormula::Ptr& f);

/// True iff every initial state satisfies f.
bool models(const KripkeStructure& k, const CtlFormula::Ptr& f);

}  // namespace ksmin
