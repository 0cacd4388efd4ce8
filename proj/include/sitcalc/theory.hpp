#pragma once

#include "sitcalc/ast.hpp"
#include "sitcalc/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sitcalc {

struct DomainDecl {
  std::string name;
  bool is_range = false;  // integer interval lo..hi
  bool is_int = false;    // unbounded integers; usable for nominal parameters only
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::vector<std::string> symbols;  // enumeration domain, declared order

  bool finite() const { return !is_int; }
  std::int64_t size() const;
  std::vector<Value> values() const;  // declared order; empty for `int`
  bool contains(const Value& v) const;
};

struct FluentParam {
  std::string name;
  std::string domain;
};

struct FluentDecl {
  std::string name;
  std::vector<FluentParam> params;
  std::string range;  // value domain name, or "bool"
  SourceLoc loc;
};

// A fluent instantiated over its parameter domains. Its index in
// ActionTheory::ground_fluents is the WorldState slot.
struct GroundFluent {
  int fluent = -1;
  std::vector<Value> args;
  std::string label;  // "Broken(A)", "position"
};

enum class ParamMode { Nominal, Actual };

struct SchemaParam {
  std::string name;
  std::string domain;
  ParamMode mode = ParamMode::Nominal;
};

struct ActionSchema {
  std::string name;
  std::vector<SchemaParam> params;
  ExprPtr precondition;  // boolean; never null (defaults to true)
  ExprPtr likelihood;    // numeric, >= 0; never null (defaults to 1)
  std::string obs_group;          // defaults to the schema name
  std::vector<int> obs_params;    // visible parameter indexes, signature order
  SourceLoc loc;

  std::vector<int> nominal_params() const;
  bool is_visible(int param) const;
};

struct SuccessorCase {
  int schema = -1;
  std::vector<std::string> pattern_vars;  // one per schema parameter
  ExprPtr guard;  // may be null (unguarded case)
  ExprPtr value;
  SourceLoc loc;
};

// Per-fluent transition rule. Cases are tried in order against the executed
// action; the first match supplies the new value, and a fluent no case
// matches keeps its value (the frame default).
struct SuccessorRule {
  int fluent = -1;
  std::vector<std::string> fluent_params;  // in scope in guards and values
  std::vector<SuccessorCase> cases;
  bool from_effects = false;  // compiled from effect clauses
};

// One positive/negative/functional effect statement, the raw material the
// compiler turns into a SuccessorRule.
struct EffectClause {
  int fluent = -1;
  std::vector<ExprPtr> fluent_args;  // over pattern vars
  int schema = -1;
  std::vector<std::string> pattern_vars;
  bool positive = true;  // relational clauses only
  ExprPtr value;         // functional clauses; null for relational
  ExprPtr context;       // may be null
  SourceLoc loc;
};

struct InitWorld {
  WorldState world;
  Rational weight;
  SourceLoc loc;
};

struct ActionTheory {
  std::vector<DomainDecl> domains;
  std::vector<FluentDecl> fluents;
  std::vector<ActionSchema> schemas;
  std::vector<SuccessorRule> rules;  // parallel to fluents after finalize()
  std::vector<EffectClause> effect_clauses;
  std::vector<InitWorld> init;
  std::vector<std::pair<std::string, ProgramPtr>> programs;

  // Derived tables, built by finalize().
  std::vector<GroundFluent> ground_fluents;
  std::map<std::string, int> domain_index;
  std::map<std::string, int> fluent_index;
  std::map<std::string, int> schema_index;
  std::map<std::string, std::vector<int>> obs_groups;  // key -> schema ids

  const DomainDecl* find_domain(const std::string& name) const;
  const FluentDecl* find_fluent(const std::string& name) const;
  const ActionSchema* find_schema(const std::string& name) const;
  const ProgramPtr* find_program(const std::string& name) const;

  // WorldState slot for a ground fluent instance; -1 if absent.
  int ground_fluent_id(int fluent, const std::vector<Value>& args) const;

  // Grounds fluents over their parameter domains and builds the lookup
  // tables. Must be called after the declaration lists are complete.
  void finalize();

 private:
  std::map<std::pair<int, std::vector<Value>>, int> ground_index_;
};

// Scenario: a straight-line script of observations, commands, and queries.
enum class ScenarioStepType { Observe, Exec, QueryBel, QueryKnow, Assert };

struct ScenarioStep {
  ScenarioStepType type = ScenarioStepType::Observe;
  ObservationSignature signature;   // Observe
  std::string command;              // Exec: observation-group key
  std::vector<Value> command_args;  // Exec: bound nominal prefix
  ExprPtr formula;                  // QueryBel, QueryKnow
  std::string formula_text;
  CmpOp op = CmpOp::Eq;  // Assert, applied to the preceding query result
  Value expected;        // Assert
  SourceLoc loc;
};

struct Scenario {
  std::optional<WorldState> actual;  // required by simulate mode
  std::vector<ScenarioStep> steps;
};

}  // namespace sitcalc
