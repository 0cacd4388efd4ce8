#pragma once

#include "sitcalc/diagnostics.hpp"
#include "sitcalc/value.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sitcalc {

enum class ExprKind {
  Literal,
  Param,      // action/program/quantifier parameter
  FluentRef,  // fluent, optionally prev^k-indexed into the past
  Neg,
  Abs,
  Add,
  Sub,
  Mul,
  Div,
  IfThenElse,  // args: cond, then, else
  Not,
  And,
  Or,
  Implies,
  Iff,
  Cmp,      // args: lhs, rhs
  InRange,  // args: subject, lo, hi (closed interval)
  Quant,    // args: body; quantifies `name` over `domain`
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* to_string(CmpOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// One node type covers terms and formulas; a formula is simply an expression
// of boolean type, which infer_type enforces after parsing.
struct Expr {
  ExprKind kind;
  SourceLoc loc;
  Value literal;            // Literal
  std::string name;         // Param, FluentRef, Quant variable
  int prev_depth = 0;       // FluentRef: how many steps into the past
  CmpOp cmp = CmpOp::Eq;    // Cmp
  bool forall = false;      // Quant
  std::string domain;       // Quant
  std::vector<ExprPtr> args;
};

ExprPtr make_literal(Value v, SourceLoc loc = {});
ExprPtr make_param(std::string name, SourceLoc loc = {});
ExprPtr make_fluent(std::string name, std::vector<ExprPtr> args = {},
                    int prev_depth = 0, SourceLoc loc = {});
ExprPtr make_unary(ExprKind kind, ExprPtr a, SourceLoc loc = {});
ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b, SourceLoc loc = {});
ExprPtr make_if(ExprPtr cond, ExprPtr then_e, ExprPtr else_e, SourceLoc loc = {});
ExprPtr make_cmp(CmpOp op, ExprPtr a, ExprPtr b, SourceLoc loc = {});
ExprPtr make_in_range(ExprPtr subject, ExprPtr lo, ExprPtr hi, SourceLoc loc = {});
ExprPtr make_quant(bool forall, std::string var, std::string domain,
                   ExprPtr body, SourceLoc loc = {});

ExprPtr true_formula();
ExprPtr one_expr();

// Parseable concrete syntax; parse(to_string(e)) reproduces e structurally.
std::string to_string(const Expr& e);

bool expr_equal(const Expr& a, const Expr& b);

// Complex actions: a primitive command, sequences, nondeterministic choice,
// and pi-bound argument selection.
enum class ProgramKind { Prim, Seq, Choice, Pi };

struct Program;
using ProgramPtr = std::shared_ptr<const Program>;

struct Program {
  ProgramKind kind;
  SourceLoc loc;
  // Prim: schema plus bound arguments. Binding all parameters names one
  // ground action; binding only the nominal prefix leaves the rest to the
  // expansion (every possible completion) or to the environment.
  std::string schema;
  std::vector<ExprPtr> args;
  ProgramPtr left, right;    // Seq, Choice
  std::string var, domain;   // Pi
  ProgramPtr body;           // Pi
};

ProgramPtr make_prim(std::string schema, std::vector<ExprPtr> args,
                     SourceLoc loc = {});
ProgramPtr make_seq(ProgramPtr a, ProgramPtr b, SourceLoc loc = {});
ProgramPtr make_choice(ProgramPtr a, ProgramPtr b, SourceLoc loc = {});
ProgramPtr make_pi(std::string var, std::string domain, ProgramPtr body,
                   SourceLoc loc = {});

std::string to_string(const Program& p);

}  // namespace sitcalc
