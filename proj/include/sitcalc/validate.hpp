#pragma once

#include "sitcalc/theory.hpp"

#include <vector>

namespace sitcalc {

// Semantic checks over a finalized theory. Returns diagnostics; never
// throws. Errors: unbounded actual-parameter domains, type errors in any
// axiom, bad initial belief (nonpositive total weight, values out of
// domain), provably negative likelihoods. Warnings: per-command likelihoods
// that do not sum to 1 over the Poss-satisfying completions (checked against
// every initial world), nominal parameters missing from the observation
// template, inconsistent signature shapes within a group, overlapping
// unguarded successor cases.
std::vector<Diagnostic> validate_theory(const ActionTheory& theory);

}  // namespace sitcalc
