#include "sitcalc/compile.hpp"

#include <algorithm>
#include <map>

namespace sitcalc {

namespace {

// Renames Param references (pattern variables) throughout an expression.
ExprPtr rename_params(const ExprPtr& e,
                      const std::map<std::string, std::string>& renaming) {
  if (!e) return e;
  if (e->kind == ExprKind::Param) {
    auto it = renaming.find(e->name);
    if (it == renaming.end()) return e;
    return make_param(it->second, e->loc);
  }
  if (e->kind == ExprKind::Quant) {
    // Quantified variables are fresh by construction (declare_var rejects
    // shadowing), so only the body needs rewriting.
    return make_quant(e->forall, e->name, e->domain,
                      rename_params(e->args[0], renaming), e->loc);
  }
  bool changed = false;
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) {
    ExprPtr r = rename_params(a, renaming);
    changed |= r != a;
    args.push_back(std::move(r));
  }
  if (!changed) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

ExprPtr conjoin(ExprPtr a, ExprPtr b) {
  if (!a) return b;
  if (!b) return a;
  return make_binary(ExprKind::And, std::move(a), std::move(b));
}

ExprPtr disjoin(ExprPtr a, ExprPtr b) {
  if (!a) return b;
  if (!b) return a;
  return make_binary(ExprKind::Or, std::move(a), std::move(b));
}

// Condition under which `clause`, renamed onto canonical pattern variables,
// fires for the fluent instance bound to `fluent_params`: the clause's
// fluent arguments equal the instance arguments, and its context holds.
ExprPtr clause_condition(const EffectClause& clause,
                         const std::vector<std::string>& fluent_params,
                         const std::map<std::string, std::string>& renaming) {
  ExprPtr cond;
  for (size_t i = 0; i < clause.fluent_args.size() && i < fluent_params.size(); ++i) {
    ExprPtr arg = rename_params(clause.fluent_args[i], renaming);
    cond = conjoin(std::move(cond),
                   make_cmp(CmpOp::Eq, make_param(fluent_params[i]), arg));
  }
  if (clause.context)
    cond = conjoin(std::move(cond), rename_params(clause.context, renaming));
  return cond;
}

}  // namespace

namespace {

// Fresh variable names must survive a pretty-print/parse round trip, so they
// have to be ordinary identifiers that collide with no fluent or symbol.
std::string fresh_name(const ActionTheory& theory, const std::string& base,
                       size_t index) {
  std::string name = base + std::to_string(index);
  for (;;) {
    bool taken = theory.fluent_index.count(name) > 0;
    for (const auto& d : theory.domains)
      if (!d.is_range && !d.is_int)
        taken |= std::find(d.symbols.begin(), d.symbols.end(), name) !=
                 d.symbols.end();
    if (!taken) return name;
    name += "_";
  }
}

}  // namespace

SuccessorRule compile_effect_axioms(const ActionTheory& theory, int fluent,
                                    const std::vector<EffectClause>& clauses,
                                    std::vector<Diagnostic>& diags) {
  SuccessorRule rule;
  rule.fluent = fluent;
  rule.from_effects = true;
  const FluentDecl& decl = theory.fluents[fluent];
  for (size_t i = 0; i < decl.params.size(); ++i)
    rule.fluent_params.push_back(fresh_name(theory, "fp", i));

  bool relational = decl.range == "bool";
  std::vector<EffectClause> usable;
  for (const auto& c : clauses) {
    if (c.fluent != fluent) {
      diags.push_back({Diagnostic::Severity::Error, c.loc,
                       "effect clause targets a different fluent"});
      continue;
    }
    if (relational && c.value) {
      diags.push_back({Diagnostic::Severity::Error, c.loc,
                       "functional effect on relational fluent '" + decl.name + "'"});
      continue;
    }
    if (!relational && !c.value) {
      diags.push_back({Diagnostic::Severity::Error, c.loc,
                       "relational effect on functional fluent '" + decl.name + "'"});
      continue;
    }
    usable.push_back(c);
  }

  if (relational) {
    // Group clauses by action schema, first mention first; each schema gets
    // one case computing gamma_plus or (F and not gamma_minus).
    std::vector<int> schema_order;
    for (const auto& c : usable)
      if (std::find(schema_order.begin(), schema_order.end(), c.schema) ==
          schema_order.end())
        schema_order.push_back(c.schema);

    for (int schema : schema_order) {
      SuccessorCase cs;
      cs.schema = schema;
      const auto& params = theory.schemas[schema].params;
      for (size_t i = 0; i < params.size(); ++i)
        cs.pattern_vars.push_back(fresh_name(theory, "av", i));

      ExprPtr gamma_plus, gamma_minus;
      for (const auto& c : usable) {
        if (c.schema != schema) continue;
        std::map<std::string, std::string> renaming;
        for (size_t i = 0; i < c.pattern_vars.size(); ++i)
          renaming[c.pattern_vars[i]] = cs.pattern_vars[i];
        ExprPtr cond = clause_condition(c, rule.fluent_params, renaming);
        if (!cond) cond = true_formula();
        if (c.positive)
          gamma_plus = disjoin(std::move(gamma_plus), std::move(cond));
        else
          gamma_minus = disjoin(std::move(gamma_minus), std::move(cond));
        cs.loc = c.loc;
      }

      std::vector<ExprPtr> fluent_ref_args;
      for (const auto& p : rule.fluent_params)
        fluent_ref_args.push_back(make_param(p));
      ExprPtr persists = make_fluent(decl.name, fluent_ref_args);
      if (gamma_minus)
        persists = conjoin(std::move(persists),
                           make_unary(ExprKind::Not, std::move(gamma_minus)));
      cs.value = gamma_plus ? disjoin(std::move(gamma_plus), std::move(persists))
                            : persists;
      rule.cases.push_back(std::move(cs));
    }
    return rule;
  }

  // Functional target: one case per clause in declaration order.
  for (const auto& c : usable) {
    SuccessorCase cs;
    cs.schema = c.schema;
    cs.loc = c.loc;
    const auto& params = theory.schemas[c.schema].params;
    for (size_t i = 0; i < params.size(); ++i)
      cs.pattern_vars.push_back(fresh_name(theory, "av", i));
    std::map<std::string, std::string> renaming;
    for (size_t i = 0; i < c.pattern_vars.size(); ++i)
      renaming[c.pattern_vars[i]] = cs.pattern_vars[i];
    cs.guard = clause_condition(c, rule.fluent_params, renaming);
    cs.value = rename_params(c.value, renaming);
    rule.cases.push_back(std::move(cs));
  }
  return rule;
}

}  // namespace sitcalc
