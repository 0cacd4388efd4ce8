#pragma once

#include "sitcalc/theory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sitcalc {

struct TheoryParseResult {
  std::optional<ActionTheory> theory;  // present unless errors were fatal
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return theory.has_value() && !has_errors(diagnostics); }
};

struct ScenarioParseResult {
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return scenario.has_value() && !has_errors(diagnostics); }
};

// Parses a theory file. Grammar reference lives in the README. Name
// resolution and type checking run as part of parsing; problems come back
// as diagnostics with line/column positions.
TheoryParseResult parse_theory(const std::string& text);

// Throws TheoryError carrying the first error diagnostic.
ActionTheory parse_theory_or_throw(const std::string& text);

ScenarioParseResult parse_scenario(const std::string& text,
                                   const ActionTheory& theory);
Scenario parse_scenario_or_throw(const std::string& text,
                                 const ActionTheory& theory);

// Parses a single formula (no trailing input allowed); used by tests and by
// query tooling. Throws TheoryError on any diagnostic.
ExprPtr parse_formula(const std::string& text, const ActionTheory& theory);

// Canonical source form; parsing it back yields a structurally equal theory.
std::string pretty_print(const ActionTheory& theory);
std::string pretty_print(const ActionTheory& theory, const Scenario& scenario);

}  // namespace sitcalc
