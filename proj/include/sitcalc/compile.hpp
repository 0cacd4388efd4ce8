#pragma once

#include "sitcalc/theory.hpp"

#include <vector>

namespace sitcalc {

// Compiles the effect clauses for one fluent into its successor-state rule
// under the completeness assumption: the clauses are all the ways any action
// changes the fluent, so everything else persists.
//
// Relational target: one case per mentioned action schema whose value is
//   gamma_plus or (F and not gamma_minus).
// Functional target: one case per clause, first match wins, with argument
// unification folded into the guard. The frame default is implicit.
//
// Diagnoses mixed relational/functional clause sets and clauses for other
// fluents.
SuccessorRule compile_effect_axioms(const ActionTheory& theory, int fluent,
                                    const std::vector<EffectClause>& clauses,
                                    std::vector<Diagnostic>& diags);

}  // namespace sitcalc
