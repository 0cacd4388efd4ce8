#include "sitcalc/eval.hpp"

#include <sstream>

namespace sitcalc {

const Value* lookup(const Bindings& bindings, const std::string& name) {
  for (auto it = bindings.rbegin(); it != bindings.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

namespace {

[[noreturn]] void fail(const Expr& e, const std::string& msg) {
  std::ostringstream os;
  if (e.loc.line > 0) os << e.loc.line << ":" << e.loc.col << ": ";
  os << msg;
  throw EvalError(os.str(), e.loc);
}

bool compare(const Expr& e, const Value& a, const Value& b) {
  switch (e.cmp) {
    case CmpOp::Eq: return value_equals(a, b);
    case CmpOp::Ne: return !value_equals(a, b);
    case CmpOp::Lt: return value_order(a, b) < 0;
    case CmpOp::Le: return value_order(a, b) <= 0;
    case CmpOp::Gt: return value_order(a, b) > 0;
    case CmpOp::Ge: return value_order(a, b) >= 0;
  }
  fail(e, "bad comparison operator");
}

}  // namespace

Value evaluate(const ActionTheory& theory, const Expr& e,
               const Trajectory& trajectory, const Bindings& bindings) {
  switch (e.kind) {
    case ExprKind::Literal:
      return e.literal;

    case ExprKind::Param: {
      if (const Value* v = lookup(bindings, e.name)) return *v;
      fail(e, "unbound parameter '" + e.name + "'");
    }

    case ExprKind::FluentRef: {
      auto it = theory.fluent_index.find(e.name);
      if (it == theory.fluent_index.end())
        fail(e, "unknown fluent '" + e.name + "'");
      std::vector<Value> args;
      args.reserve(e.args.size());
      for (const auto& a : e.args)
        args.push_back(evaluate(theory, *a, trajectory, bindings));
      int id = theory.ground_fluent_id(it->second, args);
      if (id < 0) fail(e, "fluent argument out of domain in '" + e.name + "'");
      int back = static_cast<int>(trajectory.states.size()) - 1 - e.prev_depth;
      if (back < 0)
        fail(e, "prev depth " + std::to_string(e.prev_depth) +
                    " exceeds history length " +
                    std::to_string(trajectory.states.size() - 1));
      return trajectory.states[static_cast<size_t>(back)].values[id];
    }

    case ExprKind::Neg:
      return value_neg(evaluate(theory, *e.args[0], trajectory, bindings));
    case ExprKind::Abs:
      return value_abs(evaluate(theory, *e.args[0], trajectory, bindings));

    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      Value a = evaluate(theory, *e.args[0], trajectory, bindings);
      Value b = evaluate(theory, *e.args[1], trajectory, bindings);
      try {
        switch (e.kind) {
          case ExprKind::Add: return value_add(a, b);
          case ExprKind::Sub: return value_sub(a, b);
          case ExprKind::Mul: return value_mul(a, b);
          default: return value_div(a, b);
        }
      } catch (const EvalError& err) {
        fail(e, err.what());
      }
    }

    case ExprKind::IfThenElse: {
      Value c = evaluate(theory, *e.args[0], trajectory, bindings);
      if (c.kind() != ValueKind::Boolean) fail(e, "if condition is not boolean");
      return evaluate(theory, *e.args[c.as_bool() ? 1 : 2], trajectory, bindings);
    }

    case ExprKind::Not: {
      Value a = evaluate(theory, *e.args[0], trajectory, bindings);
      if (a.kind() != ValueKind::Boolean) fail(e, "'not' needs a boolean");
      return Value::boolean(!a.as_bool());
    }

    case ExprKind::And:
    case ExprKind::Or: {
      Value a = evaluate(theory, *e.args[0], trajectory, bindings);
      if (a.kind() != ValueKind::Boolean) fail(e, "logical operand not boolean");
      bool shortcut = e.kind == ExprKind::Or;
      if (a.as_bool() == shortcut) return Value::boolean(shortcut);
      Value b = evaluate(theory, *e.args[1], trajectory, bindings);
      if (b.kind() != ValueKind::Boolean) fail(e, "logical operand not boolean");
      return b;
    }

    case ExprKind::Implies: {
      Value a = evaluate(theory, *e.args[0], trajectory, bindings);
      if (a.kind() != ValueKind::Boolean) fail(e, "logical operand not boolean");
      if (!a.as_bool()) return Value::boolean(true);
      Value b = evaluate(theory, *e.args[1], trajectory, bindings);
      if (b.kind() != ValueKind::Boolean) fail(e, "logical operand not boolean");
      return b;
    }

    case ExprKind::Iff: {
      Value a = evaluate(theory, *e.args[0], trajectory, bindings);
      Value b = evaluate(theory, *e.args[1], trajectory, bindings);
      if (a.kind() != ValueKind::Boolean || b.kind() != ValueKind::Boolean)
        fail(e, "logical operand not boolean");
      return Value::boolean(a.as_bool() == b.as_bool());
    }

    case ExprKind::Cmp: {
      Value a = evaluate(theory, *e.args[0], trajectory, bindings);
      Value b = evaluate(theory, *e.args[1], trajectory, bindings);
      try {
        return Value::boolean(compare(e, a, b));
      } catch (const EvalError& err) {
        fail(e, err.what());
      }
    }

    case ExprKind::InRange: {
      Value v = evaluate(theory, *e.args[0], trajectory, bindings);
      Value lo = evaluate(theory, *e.args[1], trajectory, bindings);
      Value hi = evaluate(theory, *e.args[2], trajectory, bindings);
      try {
        return Value::boolean(value_order(lo, v) <= 0 && value_order(v, hi) <= 0);
      } catch (const EvalError& err) {
        fail(e, err.what());
      }
    }

    case ExprKind::Quant: {
      const DomainDecl* dom = theory.find_domain(e.domain);
      if (dom == nullptr) fail(e, "unknown domain '" + e.domain + "'");
      if (dom->is_int) fail(e, "cannot quantify over unbounded domain 'int'");
      Bindings inner = bindings;
      inner.emplace_back(e.name, Value());
      for (const Value& v : dom->values()) {
        inner.back().second = v;
        Value r = evaluate(theory, *e.args[0], trajectory, inner);
        if (r.kind() != ValueKind::Boolean) fail(e, "quantifier body not boolean");
        if (r.as_bool() != e.forall) return Value::boolean(!e.forall);
      }
      return Value::boolean(e.forall);
    }
  }
  fail(e, "unhandled expression kind");
}

std::string ExprType::str() const {
  switch (tag) {
    case Bool: return "bool";
    case Num: return "number";
    case Sym: return "symbol(" + domain + ")";
    default: return "invalid";
  }
}

ExprType domain_type(const std::string& domain) {
  if (domain == "bool") return ExprType::boolean();
  if (domain == "int") return ExprType::numeric();
  return ExprType::symbol(domain);  // refined by the caller for ranges
}

namespace {

ExprType domain_value_type(const ActionTheory& theory, const std::string& name,
                           const SourceLoc& loc, std::vector<Diagnostic>& diags) {
  if (name == "bool") return ExprType::boolean();
  if (name == "int") return ExprType::numeric();
  const DomainDecl* dom = theory.find_domain(name);
  if (dom == nullptr) {
    diags.push_back({Diagnostic::Severity::Error, loc,
                     "unknown domain '" + name + "'"});
    return ExprType::invalid();
  }
  return dom->is_range || dom->is_int ? ExprType::numeric()
                                      : ExprType::symbol(name);
}

bool type_match(const ExprType& a, const ExprType& b) {
  if (a.tag != b.tag) return false;
  if (a.tag == ExprType::Sym) return a.domain == b.domain;
  return true;
}

}  // namespace

ExprType infer_type(const ActionTheory& theory, const Expr& e,
                    const TypeEnv& env, std::vector<Diagnostic>& diags) {
  auto error = [&](const std::string& msg) {
    diags.push_back({Diagnostic::Severity::Error, e.loc, msg});
    return ExprType::invalid();
  };
  auto require = [&](const Expr& sub, ExprType::Tag tag, const char* what) {
    ExprType t = infer_type(theory, sub, env, diags);
    if (!t.ok()) return t;
    if (t.tag != tag) {
      diags.push_back({Diagnostic::Severity::Error, sub.loc,
                       std::string(what) + " must be " +
                           (tag == ExprType::Bool ? "boolean" : "numeric") +
                           ", got " + t.str()});
      return ExprType::invalid();
    }
    return t;
  };

  switch (e.kind) {
    case ExprKind::Literal:
      switch (e.literal.kind()) {
        case ValueKind::Boolean: return ExprType::boolean();
        case ValueKind::Number:
        case ValueKind::Real: return ExprType::numeric();
        case ValueKind::Symbol: {
          // Symbols are globally unique across object domains.
          for (const auto& d : theory.domains)
            if (d.contains(e.literal)) return ExprType::symbol(d.name);
          return error("unknown symbol '" + e.literal.as_symbol() + "'");
        }
      }
      return ExprType::invalid();

    case ExprKind::Param: {
      auto it = env.find(e.name);
      if (it == env.end()) return error("unknown identifier '" + e.name + "'");
      return it->second;
    }

    case ExprKind::FluentRef: {
      const FluentDecl* f = theory.find_fluent(e.name);
      if (f == nullptr) return error("unknown fluent '" + e.name + "'");
      if (e.args.size() != f->params.size())
        return error("fluent '" + e.name + "' expects " +
                     std::to_string(f->params.size()) + " argument(s), got " +
                     std::to_string(e.args.size()));
      for (size_t i = 0; i < e.args.size(); ++i) {
        ExprType got = infer_type(theory, *e.args[i], env, diags);
        ExprType want =
            domain_value_type(theory, f->params[i].domain, e.loc, diags);
        if (got.ok() && want.ok() && !type_match(got, want))
          diags.push_back({Diagnostic::Severity::Error, e.args[i]->loc,
                           "argument " + std::to_string(i + 1) + " of '" +
                               e.name + "' must be " + want.str() + ", got " +
                               got.str()});
      }
      return domain_value_type(theory, f->range, e.loc, diags);
    }

    case ExprKind::Neg:
    case ExprKind::Abs:
      return require(*e.args[0], ExprType::Num, "arithmetic operand").ok()
                 ? ExprType::numeric()
                 : ExprType::invalid();

    case ExprKind::Add:
    case ExprKind::Sub:
    case ExprKind::Mul:
    case ExprKind::Div: {
      bool ok = require(*e.args[0], ExprType::Num, "arithmetic operand").ok();
      ok &= require(*e.args[1], ExprType::Num, "arithmetic operand").ok();
      return ok ? ExprType::numeric() : ExprType::invalid();
    }

    case ExprKind::IfThenElse: {
      bool ok = require(*e.args[0], ExprType::Bool, "if condition").ok();
      ExprType t = infer_type(theory, *e.args[1], env, diags);
      ExprType f = infer_type(theory, *e.args[2], env, diags);
      if (!ok || !t.ok() || !f.ok()) return ExprType::invalid();
      if (!type_match(t, f))
        return error("if branches have different types: " + t.str() + " vs " +
                     f.str());
      return t;
    }

    case ExprKind::Not:
      return require(*e.args[0], ExprType::Bool, "'not' operand").ok()
                 ? ExprType::boolean()
                 : ExprType::invalid();

    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Implies:
    case ExprKind::Iff: {
      bool ok = require(*e.args[0], ExprType::Bool, "logical operand").ok();
      ok &= require(*e.args[1], ExprType::Bool, "logical operand").ok();
      return ok ? ExprType::boolean() : ExprType::invalid();
    }

    case ExprKind::Cmp: {
      ExprType a = infer_type(theory, *e.args[0], env, diags);
      ExprType b = infer_type(theory, *e.args[1], env, diags);
      if (!a.ok() || !b.ok()) return ExprType::invalid();
      if (!type_match(a, b))
        return error("cannot compare " + a.str() + " with " + b.str());
      bool ordered = e.cmp != CmpOp::Eq && e.cmp != CmpOp::Ne;
      if (ordered && a.tag != ExprType::Num)
        return error("ordering comparison needs numeric operands, got " +
                     a.str());
      return ExprType::boolean();
    }

    case ExprKind::InRange: {
      bool ok = require(*e.args[0], ExprType::Num, "interval subject").ok();
      ok &= require(*e.args[1], ExprType::Num, "interval bound").ok();
      ok &= require(*e.args[2], ExprType::Num, "interval bound").ok();
      return ok ? ExprType::boolean() : ExprType::invalid();
    }

    case ExprKind::Quant: {
      ExprType vt = domain_value_type(theory, e.domain, e.loc, diags);
      const DomainDecl* dom = theory.find_domain(e.domain);
      if (dom != nullptr && dom->is_int)
        return error("cannot quantify over unbounded domain '" + e.domain + "'");
      if (e.domain != "bool" && dom == nullptr) return ExprType::invalid();
      TypeEnv inner = env;
      inner[e.name] = vt;
      ExprType body = infer_type(theory, *e.args[0], inner, diags);
      if (!body.ok()) return ExprType::invalid();
      if (body.tag != ExprType::Bool)
        return error("quantifier body must be boolean, got " + body.str());
      return ExprType::boolean();
    }
  }
  return ExprType::invalid();
}

}  // namespace sitcalc
