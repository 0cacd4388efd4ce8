#pragma once

#include "sitcalc/ast.hpp"
#include "sitcalc/theory.hpp"

#include <map>
#include <string>
#include <vector>

namespace sitcalc {

// Parameter environment. Inner scopes are appended and shadow by reverse
// lookup; the vector stays tiny (action arity plus quantifier depth).
using Bindings = std::vector<std::pair<std::string, Value>>;

const Value* lookup(const Bindings& bindings, const std::string& name);

// Evaluates a term or formula against the final state of `trajectory`.
// prev^k references index k steps back along the trajectory. Pure: identical
// inputs give identical results. Throws EvalError on type mismatches,
// division by zero, and prev past the initial state.
Value evaluate(const ActionTheory& theory, const Expr& e,
               const Trajectory& trajectory, const Bindings& bindings = {});

// Static type of an expression: boolean, numeric, or a symbol domain.
struct ExprType {
  enum Tag { Invalid, Bool, Num, Sym } tag = Invalid;
  std::string domain;  // Sym only

  static ExprType boolean() { return {Bool, {}}; }
  static ExprType numeric() { return {Num, {}}; }
  static ExprType symbol(std::string d) { return {Sym, std::move(d)}; }
  static ExprType invalid() { return {}; }
  bool ok() const { return tag != Invalid; }
  std::string str() const;
};

using TypeEnv = std::map<std::string, ExprType>;

// Infers the type of `e`, appending a diagnostic (and returning Invalid) for
// unknown identifiers, arity errors, and kind mismatches. Comparing values
// of different kinds is rejected here, at validation time, rather than
// evaluating to false later.
ExprType infer_type(const ActionTheory& theory, const Expr& e,
                    const TypeEnv& env, std::vector<Diagnostic>& diags);

// ExprType for a value drawn from a named domain ("bool" included).
ExprType domain_type(const std::string& domain);

}  // namespace sitcalc
