#pragma once

#include "ksmin/grammar.hpp"
#include "ksmin/kripke.hpp"

// Shared fixtures. F1 is the two-state a/b cycle, F2 the five-state
// structure whose quotient identifies s0, s2, s4 and s1, s3, F3 the
// five-cycle with one proposition per state, G3 a grammar presenting the
// infinite mod-5 chain that folds onto F3.
namespace fixtures {

inline constexpr const char* kF1 = R"(kripke
aps a b
state s1 : a
state s2 : b
init s1
trans s1 -> s2
trans s2 -> s1
)";

inline constexpr const char* kF2 = R"(kripke
aps a b
state s0 : a
state s1 : b
state s2 : a
state s3 : b
state s4 : a
init s0
trans s0 -> s1 s3
trans s1 -> s2
trans s2 -> s1 s3
trans s3 -> s4
trans s4 -> s1 s3
)";

inline constexpr const char* kF3 = R"(kripke
aps p0 p1 p2 p3 p4
state s0 : p0
state s1 : p1
state s2 : p2
state s3 : p3
state s4 : p4
init s0
trans s0 -> s1
trans s1 -> s2
trans s2 -> s3
trans s3 -> s4
trans s4 -> s0
)";

inline constexpr const char* kG3 = R"(grammar 1
aps p0 p1 p2 p3 p4
section g0
state c0 : p0
state c1 : p1
state c2 : p2
state c3 : p3
state c4 : p4
state ex1 : p0
init c0
trans c0 -> c1
trans c1 -> c2
trans c2 -> c3
trans c3 -> c4
trans c4 -> ex1
exit 1 ex1
section rule
state in1 : p0
state a1 : p1
state a2 : p2
state a3 : p3
state a4 : p4
state out1 : p0
trans in1 -> a1
trans a1 -> a2
trans a2 -> a3
trans a3 -> a4
trans a4 -> out1
in 1 in1
out 1 out1
)";

inline ksmin::KripkeStructure f1() { return ksmin::parse_kripke(kF1); }
inline ksmin::KripkeStructure f2() { return ksmin::parse_kripke(kF2); }
inline ksmin::KripkeStructure f3() { return ksmin::parse_kripke(kF3); }
inline ksmin::GraphGrammar g3() { return ksmin::parse_grammar(kG3); }

}  // namespace fixtures
