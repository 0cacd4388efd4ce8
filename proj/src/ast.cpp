#include "sitcalc/ast.hpp"

#include <sstream>

namespace sitcalc {

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

ExprPtr make_literal(Value v, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Literal;
  e->loc = loc;
  e->literal = std::move(v);
  return e;
}

ExprPtr make_param(std::string name, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Param;
  e->loc = loc;
  e->name = std::move(name);
  return e;
}

ExprPtr make_fluent(std::string name, std::vector<ExprPtr> args, int prev_depth,
                    SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::FluentRef;
  e->loc = loc;
  e->name = std::move(name);
  e->args = std::move(args);
  e->prev_depth = prev_depth;
  return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr a, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->loc = loc;
  e->args = {std::move(a)};
  return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr a, ExprPtr b, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->loc = loc;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr make_if(ExprPtr cond, ExprPtr then_e, ExprPtr else_e, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::IfThenElse;
  e->loc = loc;
  e->args = {std::move(cond), std::move(then_e), std::move(else_e)};
  return e;
}

ExprPtr make_cmp(CmpOp op, ExprPtr a, ExprPtr b, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Cmp;
  e->loc = loc;
  e->cmp = op;
  e->args = {std::move(a), std::move(b)};
  return e;
}

ExprPtr make_in_range(ExprPtr subject, ExprPtr lo, ExprPtr hi, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::InRange;
  e->loc = loc;
  e->args = {std::move(subject), std::move(lo), std::move(hi)};
  return e;
}

ExprPtr make_quant(bool forall, std::string var, std::string domain,
                   ExprPtr body, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Quant;
  e->loc = loc;
  e->forall = forall;
  e->name = std::move(var);
  e->domain = std::move(domain);
  e->args = {std::move(body)};
  return e;
}

ExprPtr true_formula() {
  static const ExprPtr t = make_literal(Value::boolean(true));
  return t;
}

ExprPtr one_expr() {
  static const ExprPtr one = make_literal(Value::integer(1));
  return one;
}

namespace {

// Precedence levels, loosest first; used to keep printed output minimal.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Quant: return 0;
    case ExprKind::Iff: return 1;
    case ExprKind::Implies: return 2;
    case ExprKind::Or: return 3;
    case ExprKind::And: return 4;
    case ExprKind::Not: return 5;
    case ExprKind::Cmp:
    case ExprKind::InRange: return 6;
    case ExprKind::Add:
    case ExprKind::Sub: return 7;
    case ExprKind::Mul:
    case ExprKind::Div: return 8;
    case ExprKind::Neg: return 9;
    case ExprKind::IfThenElse: return 0;
    default: return 10;
  }
}

void print(std::ostream& os, const Expr& e, int parent_prec) {
  int prec = precedence(e);
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  switch (e.kind) {
    case ExprKind::Literal:
      os << e.literal.str();
      break;
    case ExprKind::Param:
      os << e.name;
      break;
    case ExprKind::FluentRef: {
      os << e.name;
      bool has_sit = e.prev_depth > 0;
      if (!e.args.empty() || has_sit) {
        os << "(";
        for (size_t i = 0; i < e.args.size(); ++i) {
          if (i) os << ", ";
          print(os, *e.args[i], 0);
        }
        if (has_sit) {
          if (!e.args.empty()) os << ", ";
          for (int i = 0; i < e.prev_depth; ++i) os << "prev(";
          os << "now";
          for (int i = 0; i < e.prev_depth; ++i) os << ")";
        }
        os << ")";
      }
      break;
    }
    case ExprKind::Neg:
      os << "-";
      print(os, *e.args[0], prec + 1);
      break;
    case ExprKind::Abs:
      os << "abs(";
      print(os, *e.args[0], 0);
      os << ")";
      break;
    case ExprKind::Add:
    case ExprKind::Sub: {
      print(os, *e.args[0], prec);
      os << (e.kind == ExprKind::Add ? " + " : " - ");
      print(os, *e.args[1], prec + 1);
      break;
    }
    case ExprKind::Mul:
    case ExprKind::Div: {
      print(os, *e.args[0], prec);
      os << (e.kind == ExprKind::Mul ? " * " : " / ");
      print(os, *e.args[1], prec + 1);
      break;
    }
    case ExprKind::IfThenElse:
      os << "if ";
      print(os, *e.args[0], 1);
      os << " then ";
      print(os, *e.args[1], 1);
      os << " else ";
      print(os, *e.args[2], 0);
      break;
    case ExprKind::Not:
      os << "not ";
      print(os, *e.args[0], prec);
      break;
    case ExprKind::And:
    case ExprKind::Or: {
      print(os, *e.args[0], prec);
      os << (e.kind == ExprKind::And ? " and " : " or ");
      print(os, *e.args[1], prec);
      break;
    }
    case ExprKind::Implies:
      print(os, *e.args[0], prec + 1);
      os << " implies ";
      print(os, *e.args[1], prec);
      break;
    case ExprKind::Iff:
      print(os, *e.args[0], prec + 1);
      os << " iff ";
      print(os, *e.args[1], prec + 1);
      break;
    case ExprKind::Cmp:
      print(os, *e.args[0], prec + 1);
      os << " " << to_string(e.cmp) << " ";
      print(os, *e.args[1], prec + 1);
      break;
    case ExprKind::InRange:
      print(os, *e.args[0], prec + 1);
      os << " in ";
      print(os, *e.args[1], prec + 1);
      os << " .. ";
      print(os, *e.args[2], prec + 1);
      break;
    case ExprKind::Quant:
      os << (e.forall ? "forall " : "exists ") << e.name << ": " << e.domain
         << " . ";
      print(os, *e.args[0], 0);
      break;
  }
  if (paren) os << ")";
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.prev_depth != b.prev_depth ||
      a.cmp != b.cmp || a.forall != b.forall || a.domain != b.domain ||
      a.args.size() != b.args.size())
    return false;
  if (a.kind == ExprKind::Literal && !(a.literal == b.literal)) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!expr_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

ProgramPtr make_prim(std::string schema, std::vector<ExprPtr> args,
                     SourceLoc loc) {
  auto p = std::make_shared<Program>();
  p->kind = ProgramKind::Prim;
  p->loc = loc;
  p->schema = std::move(schema);
  p->args = std::move(args);
  return p;
}

ProgramPtr make_seq(ProgramPtr a, ProgramPtr b, SourceLoc loc) {
  auto p = std::make_shared<Program>();
  p->kind = ProgramKind::Seq;
  p->loc = loc;
  p->left = std::move(a);
  p->right = std::move(b);
  return p;
}

ProgramPtr make_choice(ProgramPtr a, ProgramPtr b, SourceLoc loc) {
  auto p = std::make_shared<Program>();
  p->kind = ProgramKind::Choice;
  p->loc = loc;
  p->left = std::move(a);
  p->right = std::move(b);
  return p;
}

ProgramPtr make_pi(std::string var, std::string domain, ProgramPtr body,
                   SourceLoc loc) {
  auto p = std::make_shared<Program>();
  p->kind = ProgramKind::Pi;
  p->loc = loc;
  p->var = std::move(var);
  p->domain = std::move(domain);
  p->body = std::move(body);
  return p;
}

namespace {

void print_program(std::ostream& os, const Program& p, int parent_prec) {
  // Seq binds tighter than Choice; Pi extends to the right.
  int prec = p.kind == ProgramKind::Choice ? 1
             : p.kind == ProgramKind::Seq  ? 2
             : p.kind == ProgramKind::Pi   ? 0
                                           : 3;
  bool paren = prec < parent_prec;
  if (paren) os << "(";
  switch (p.kind) {
    case ProgramKind::Prim: {
      os << p.schema << "(";
      for (size_t i = 0; i < p.args.size(); ++i) {
        if (i) os << ", ";
        os << to_string(*p.args[i]);
      }
      os << ")";
      break;
    }
    case ProgramKind::Seq:
      print_program(os, *p.left, prec);
      os << " ; ";
      print_program(os, *p.right, prec + 1);
      break;
    case ProgramKind::Choice:
      print_program(os, *p.left, prec);
      os << " | ";
      print_program(os, *p.right, prec + 1);
      break;
    case ProgramKind::Pi:
      os << "pi " << p.var << ": " << p.domain << " . ";
      print_program(os, *p.body, 0);
      break;
  }
  if (paren) os << ")";
}

}  // namespace

std::string to_string(const Program& p) {
  std::ostringstream os;
  print_program(os, p, 0);
  return os.str();
}

}  // namespace sitcalc
