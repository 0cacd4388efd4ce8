#include "sitcalc/engine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sitcalc {

namespace {

Value zero_weight(NumericMode mode) {
  return mode == NumericMode::Exact ? Value::number(Rational(0)) : Value::real(0.0);
}

bool weight_is_zero(const Value& w) {
  return w.kind() == ValueKind::Number ? w.as_rational().is_zero()
                                       : w.as_real() == 0.0;
}

// Converts an evaluated likelihood into a weight of the belief's mode.
Value to_weight(const Value& v, NumericMode mode, const ActionSchema& schema) {
  if (!v.is_numeric())
    throw TheoryError("likelihood of '" + schema.name + "' is not numeric");
  bool negative = v.kind() == ValueKind::Number ? v.as_rational().is_negative()
                                                : v.as_real() < 0.0;
  if (negative)
    throw TheoryError("likelihood of '" + schema.name + "' evaluated to " +
                      v.str() + "; likelihoods must be nonnegative");
  if (mode == NumericMode::Exact) {
    if (v.kind() != ValueKind::Number)
      throw TheoryError("likelihood of '" + schema.name +
                        "' is real-valued; run in float mode");
    return v;
  }
  return Value::real(v.numeric_to_double());
}

Bindings action_bindings(const ActionSchema& schema, const GroundAction& action) {
  Bindings b;
  b.reserve(schema.params.size());
  for (size_t i = 0; i < schema.params.size(); ++i)
    b.emplace_back(schema.params[i].name, action.args[i]);
  return b;
}

void check_action(const ActionTheory& theory, const GroundAction& action) {
  if (action.schema < 0 || action.schema >= static_cast<int>(theory.schemas.size()))
    throw TheoryError("ground action references an unknown schema");
  const ActionSchema& s = theory.schemas[action.schema];
  if (action.args.size() != s.params.size())
    throw TheoryError("ground action '" + s.name + "' has wrong arity");
}

}  // namespace

BeliefState initial_belief(const ActionTheory& theory, NumericMode mode) {
  if (theory.init.empty())
    throw TheoryError("theory declares no initial belief");
  BeliefState b;
  b.mode = mode;
  b.step = 0;
  // Canonical member order is by world-state history throughout, so traces
  // are byte-stable; duplicate initial worlds merge their weights.
  std::map<std::vector<WorldState>, BeliefMember> members;
  for (size_t i = 0; i < theory.init.size(); ++i) {
    const InitWorld& w = theory.init[i];
    if (w.weight.is_negative())
      throw TheoryError("negative initial weight");
    Trajectory traj;
    traj.initial_index = static_cast<int>(i);
    traj.states = {w.world};
    Value weight = mode == NumericMode::Exact
                       ? Value::number(w.weight)
                       : Value::real(w.weight.to_double());
    auto [it, inserted] = members.try_emplace(traj.states,
                                              BeliefMember{std::move(traj), weight});
    if (!inserted) it->second.weight = value_add(it->second.weight, weight);
  }
  for (auto& [_, m] : members) b.members.push_back(std::move(m));
  if (b.members.empty()) throw TheoryError("theory declares no initial belief");
  return b;
}

bool poss(const ActionTheory& theory, const GroundAction& action,
          const Trajectory& trajectory) {
  check_action(theory, action);
  const ActionSchema& s = theory.schemas[action.schema];
  Value v = evaluate(theory, *s.precondition, trajectory,
                     action_bindings(s, action));
  return v.as_bool();
}

WorldState apply_action(const ActionTheory& theory, const GroundAction& action,
                        const Trajectory& trajectory) {
  check_action(theory, action);
  const WorldState& current = trajectory.current();
  WorldState next = current;
  for (size_t slot = 0; slot < theory.ground_fluents.size(); ++slot) {
    const GroundFluent& g = theory.ground_fluents[slot];
    const SuccessorRule& rule = theory.rules[g.fluent];
    for (const SuccessorCase& c : rule.cases) {
      if (c.schema != action.schema) continue;
      Bindings bindings;
      bindings.reserve(c.pattern_vars.size() + rule.fluent_params.size());
      for (size_t i = 0; i < c.pattern_vars.size(); ++i)
        bindings.emplace_back(c.pattern_vars[i], action.args[i]);
      for (size_t i = 0; i < rule.fluent_params.size(); ++i)
        bindings.emplace_back(rule.fluent_params[i], g.args[i]);
      if (c.guard &&
          !evaluate(theory, *c.guard, trajectory, bindings).as_bool())
        continue;
      Value v = evaluate(theory, *c.value, trajectory, bindings);
      const FluentDecl& f = theory.fluents[g.fluent];
      bool ok = f.range == "bool" ? v.kind() == ValueKind::Boolean
                                  : theory.find_domain(f.range) != nullptr &&
                                        theory.find_domain(f.range)->contains(v);
      if (!ok)
        throw EvalError("successor value " + v.str() + " for '" + g.label +
                            "' is outside its declared domain",
                        c.value->loc);
      next.values[slot] = v;
      break;  // first matching case wins
    }
  }
  return next;
}

WorldState apply_action(const ActionTheory& theory, const GroundAction& action,
                        const WorldState& world) {
  Trajectory traj;
  traj.states = {world};
  return apply_action(theory, action, traj);
}

Value likelihood(const ActionTheory& theory, const GroundAction& action,
                 const Trajectory& trajectory) {
  check_action(theory, action);
  const ActionSchema& s = theory.schemas[action.schema];
  Value v = evaluate(theory, *s.likelihood, trajectory, action_bindings(s, action));
  if (!v.is_numeric())
    throw TheoryError("likelihood of '" + s.name + "' is not numeric");
  bool negative = v.kind() == ValueKind::Number ? v.as_rational().is_negative()
                                                : v.as_real() < 0.0;
  if (negative)
    throw TheoryError("likelihood of '" + s.name + "' evaluated to " + v.str() +
                      "; likelihoods must be nonnegative");
  return v;
}

namespace {

// Enumerates completions of the parameters of `schema` not fixed by `fixed`
// (slot -> value), in declaration order, each domain in declared order.
void enumerate_completions(const ActionTheory& theory, int schema,
                           const std::map<int, Value>& fixed,
                           std::vector<GroundAction>& out) {
  const ActionSchema& s = theory.schemas[schema];
  GroundAction a;
  a.schema = schema;
  a.args.assign(s.params.size(), Value());

  std::vector<int> open;
  for (size_t i = 0; i < s.params.size(); ++i) {
    auto it = fixed.find(static_cast<int>(i));
    if (it != fixed.end())
      a.args[i] = it->second;
    else
      open.push_back(static_cast<int>(i));
  }

  std::vector<std::vector<Value>> domains;
  for (int slot : open) {
    const DomainDecl* d = theory.find_domain(s.params[slot].domain);
    if (s.params[slot].domain == "bool") {
      domains.push_back({Value::boolean(false), Value::boolean(true)});
      continue;
    }
    if (d == nullptr || !d->finite())
      throw TheoryError("parameter '" + s.params[slot].name + "' of '" + s.name +
                        "' ranges over an unbounded domain and cannot be enumerated");
    domains.push_back(d->values());
  }

  std::vector<size_t> idx(open.size(), 0);
  for (;;) {
    for (size_t i = 0; i < open.size(); ++i) a.args[open[i]] = domains[i][idx[i]];
    out.push_back(a);
    size_t k = open.size();
    while (k > 0) {
      --k;
      if (++idx[k] < domains[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (open.empty()) return;
  }
}

}  // namespace

std::vector<GroundAction> schema_completions(const ActionTheory& theory,
                                             int schema,
                                             const std::map<int, Value>& fixed) {
  std::vector<GroundAction> out;
  enumerate_completions(theory, schema, fixed, out);
  return out;
}

std::vector<GroundAction> oi_class(const ActionTheory& theory,
                                   const ObservationSignature& signature) {
  auto it = theory.obs_groups.find(signature.group);
  if (it == theory.obs_groups.end())
    throw TheoryError("unknown observation group '" + signature.group + "'");
  std::vector<GroundAction> out;
  for (int si : it->second) {
    const ActionSchema& s = theory.schemas[si];
    if (s.obs_params.size() != signature.args.size()) continue;
    std::map<int, Value> fixed;
    bool ok = true;
    for (size_t i = 0; i < signature.args.size(); ++i) {
      int slot = s.obs_params[i];
      const std::string& dom = s.params[slot].domain;
      const DomainDecl* d = theory.find_domain(dom);
      bool in = dom == "bool" ? signature.args[i].kind() == ValueKind::Boolean
                : dom == "int" ? signature.args[i].is_integer()
                               : d != nullptr && d->contains(signature.args[i]);
      if (!in) {
        ok = false;
        break;
      }
      fixed.emplace(slot, signature.args[i]);
    }
    if (!ok) continue;
    enumerate_completions(theory, si, fixed, out);
  }
  return out;
}

ObservationSignature signature_of(const ActionTheory& theory,
                                  const GroundAction& action) {
  check_action(theory, action);
  const ActionSchema& s = theory.schemas[action.schema];
  ObservationSignature sig;
  sig.group = s.obs_group;
  for (int p : s.obs_params) sig.args.push_back(action.args[p]);
  return sig;
}

BeliefState progress(const ActionTheory& theory, const BeliefState& belief,
                     const ObservationSignature& signature,
                     const ProgressOptions& options) {
  std::vector<GroundAction> actions = oi_class(theory, signature);
  BeliefState next;
  next.mode = belief.mode;
  next.step = belief.step + 1;

  std::map<std::vector<WorldState>, BeliefMember> merged;
  for (const BeliefMember& member : belief.members) {
    for (const GroundAction& a : actions) {
      if (!poss(theory, a, member.trajectory)) continue;
      Value lk = to_weight(likelihood(theory, a, member.trajectory), belief.mode,
                           theory.schemas[a.schema]);
      Value w = value_mul(member.weight, lk);
      Trajectory traj;
      if (options.collapse_history) {
        traj.initial_index = member.trajectory.initial_index;
        traj.states = {apply_action(theory, a, member.trajectory)};
      } else {
        traj = member.trajectory;
        traj.states.push_back(apply_action(theory, a, member.trajectory));
        traj.actions.push_back(a);
      }
      auto [it, inserted] =
          merged.try_emplace(traj.states, BeliefMember{std::move(traj), w});
      if (!inserted) it->second.weight = value_add(it->second.weight, w);
    }
  }
  if (merged.empty())
    throw BeliefError("impossible observation: signature " + signature.str() +
                      " has no executable action in any K-related situation");
  for (auto& [_, m] : merged) next.members.push_back(std::move(m));

  if (options.prune_epsilon) {
    if (belief.mode != NumericMode::Float)
      throw TheoryError("pruning requires float mode");
    double total = 0;
    for (const auto& m : next.members) total += m.weight.as_real();
    if (total > 0) {
      double cutoff = *options.prune_epsilon * total;
      std::erase_if(next.members, [&](const BeliefMember& m) {
        return m.weight.as_real() < cutoff;
      });
      if (next.members.empty())
        throw BeliefError("pruning removed every belief member");
    }
  }
  return next;
}

Value total_weight(const BeliefState& belief) {
  Value total = zero_weight(belief.mode);
  for (const auto& m : belief.members) total = value_add(total, m.weight);
  return total;
}

Value bel(const ActionTheory& theory, const BeliefState& belief,
          const Expr& formula) {
  if (belief.members.empty()) throw BeliefError("belief state is empty");
  Value total = total_weight(belief);
  if (weight_is_zero(total))
    throw BeliefError("belief undefined: total weight is zero (division by zero)");
  Value sat = zero_weight(belief.mode);
  for (const auto& m : belief.members) {
    Value v = evaluate(theory, formula, m.trajectory);
    if (v.as_bool()) sat = value_add(sat, m.weight);
  }
  return value_div(sat, total);
}

bool know(const ActionTheory& theory, const BeliefState& belief,
          const Expr& formula) {
  if (belief.members.empty())
    throw BeliefError("knowledge undefined on an empty belief state");
  for (const auto& m : belief.members) {
    Value v = evaluate(theory, formula, m.trajectory);
    if (!v.as_bool()) return false;
  }
  return true;
}

namespace {

using TrajKey = std::pair<std::vector<GroundAction>, std::vector<WorldState>>;

void expand_program(const ActionTheory& theory, const Program& p,
                    const Trajectory& from, Bindings& bindings,
                    std::vector<Trajectory>& out) {
  switch (p.kind) {
    case ProgramKind::Prim: {
      const ActionSchema* s = theory.find_schema(p.schema);
      if (s == nullptr)
        throw TheoryError("unknown action schema '" + p.schema + "'");
      int schema = theory.schema_index.at(p.schema);
      std::vector<int> slots;
      if (p.args.size() == s->params.size()) {
        for (size_t i = 0; i < p.args.size(); ++i)
          slots.push_back(static_cast<int>(i));
      } else {
        slots = s->nominal_params();
        if (p.args.size() > slots.size())
          throw TheoryError("too many arguments for '" + p.schema + "'");
        slots.resize(p.args.size());
      }
      std::map<int, Value> fixed;
      for (size_t i = 0; i < p.args.size(); ++i)
        fixed.emplace(slots[i], evaluate(theory, *p.args[i], from, bindings));
      std::vector<GroundAction> candidates;
      enumerate_completions(theory, schema, fixed, candidates);
      for (const GroundAction& a : candidates) {
        bool in_domain = true;
        for (size_t i = 0; i < a.args.size(); ++i) {
          const std::string& dom = s->params[i].domain;
          const DomainDecl* d = theory.find_domain(dom);
          bool in = dom == "bool" ? a.args[i].kind() == ValueKind::Boolean
                    : dom == "int" ? a.args[i].is_integer()
                                   : d != nullptr && d->contains(a.args[i]);
          in_domain &= in;
        }
        if (!in_domain || !poss(theory, a, from)) continue;
        Trajectory t = from;
        t.states.push_back(apply_action(theory, a, from));
        t.actions.push_back(a);
        out.push_back(std::move(t));
      }
      return;
    }
    case ProgramKind::Seq: {
      std::vector<Trajectory> mid;
      expand_program(theory, *p.left, from, bindings, mid);
      for (const Trajectory& t : mid) expand_program(theory, *p.right, t, bindings, out);
      return;
    }
    case ProgramKind::Choice:
      expand_program(theory, *p.left, from, bindings, out);
      expand_program(theory, *p.right, from, bindings, out);
      return;
    case ProgramKind::Pi: {
      const DomainDecl* d = theory.find_domain(p.domain);
      if (d == nullptr || !d->finite())
        throw TheoryError("pi domain '" + p.domain + "' is not finite");
      bindings.emplace_back(p.var, Value());
      for (const Value& v : d->values()) {
        bindings.back().second = v;
        expand_program(theory, *p.body, from, bindings, out);
      }
      bindings.pop_back();
      return;
    }
  }
}

}  // namespace

std::vector<Trajectory> run_program(const ActionTheory& theory,
                                    const Program& program,
                                    const Trajectory& from,
                                    const Bindings& bindings) {
  std::vector<Trajectory> raw;
  Bindings b = bindings;
  expand_program(theory, program, from, b, raw);
  // Deduplicate identical terminal trajectories (choice branches may
  // coincide), keeping first-encounter order.
  std::set<TrajKey> seen;
  std::vector<Trajectory> out;
  for (auto& t : raw) {
    TrajKey key{t.actions, t.states};
    if (seen.insert(std::move(key)).second) out.push_back(std::move(t));
  }
  return out;
}

std::optional<ObservationSignature> command_signature(const ActionTheory& theory,
                                                      const Command& command) {
  auto it = theory.obs_groups.find(command.group);
  if (it == theory.obs_groups.end())
    throw TheoryError("unknown observation group '" + command.group + "'");
  const ActionSchema& s = theory.schemas[it->second.front()];
  std::vector<int> nominals = s.nominal_params();
  ObservationSignature sig;
  sig.group = command.group;
  for (int p : s.obs_params) {
    auto pos = std::find(nominals.begin(), nominals.end(), p);
    if (pos == nominals.end()) return std::nullopt;  // visible but actual
    size_t nominal_index = static_cast<size_t>(pos - nominals.begin());
    if (nominal_index >= command.nominal_args.size()) return std::nullopt;
    sig.args.push_back(command.nominal_args[nominal_index]);
  }
  return sig;
}

StepOutcome simulate_step(const ActionTheory& theory, const Trajectory& actual,
                          const Command& command, std::mt19937_64& rng) {
  auto it = theory.obs_groups.find(command.group);
  if (it == theory.obs_groups.end())
    throw TheoryError("unknown observation group '" + command.group + "'");

  std::vector<GroundAction> candidates;
  for (int si : it->second) {
    const ActionSchema& s = theory.schemas[si];
    std::vector<int> nominals = s.nominal_params();
    if (command.nominal_args.size() > nominals.size()) continue;
    std::map<int, Value> fixed;
    bool ok = true;
    for (size_t i = 0; i < command.nominal_args.size(); ++i) {
      const std::string& dom = s.params[nominals[i]].domain;
      const DomainDecl* d = theory.find_domain(dom);
      bool in = dom == "bool" ? command.nominal_args[i].kind() == ValueKind::Boolean
                : dom == "int" ? command.nominal_args[i].is_integer()
                               : d != nullptr && d->contains(command.nominal_args[i]);
      if (!in) {
        ok = false;
        break;
      }
      fixed.emplace(nominals[i], command.nominal_args[i]);
    }
    if (!ok) continue;
    enumerate_completions(theory, si, fixed, candidates);
  }

  std::vector<Value> weights;
  std::vector<const GroundAction*> executable;
  bool exact = true;
  for (const GroundAction& a : candidates) {
    if (!poss(theory, a, actual)) continue;
    Value lk = likelihood(theory, a, actual);
    exact &= lk.kind() == ValueKind::Number;
    executable.push_back(&a);
    weights.push_back(lk);
  }
  if (executable.empty())
    throw BeliefError("command '" + command.group +
                      "' is unexecutable in the actual world");

  size_t chosen = executable.size();
  std::uint64_t r = rng();
  if (exact) {
    Rational total(0);
    for (const Value& w : weights) total += w.as_rational();
    if (total.is_zero())
      throw BeliefError("command '" + command.group +
                        "' has zero total likelihood in the actual world");
    // target = total * r / 2^64, walked against exact prefix sums
    Rational target = total * Rational(Rational::Int(r),
                                       Rational::Int(1) << 64);
    Rational acc(0);
    for (size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i].as_rational();
      if (target < acc) {
        chosen = i;
        break;
      }
    }
  } else {
    double total = 0;
    for (const Value& w : weights) total += w.numeric_to_double();
    if (total <= 0)
      throw BeliefError("command '" + command.group +
                        "' has zero total likelihood in the actual world");
    double target = total * (static_cast<double>(r) / 18446744073709551616.0);
    double acc = 0;
    for (size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i].numeric_to_double();
      if (target < acc) {
        chosen = i;
        break;
      }
    }
  }
  if (chosen == executable.size()) chosen = executable.size() - 1;  // rounding tail

  StepOutcome outcome;
  outcome.action = *executable[chosen];
  outcome.signature = signature_of(theory, outcome.action);
  outcome.world = apply_action(theory, outcome.action, actual);
  return outcome;
}

std::vector<std::pair<WorldState, Value>> belief_table(const BeliefState& belief) {
  Value total = total_weight(belief);
  bool normalize = !weight_is_zero(total);
  std::map<WorldState, Value> table;
  for (const auto& m : belief.members) {
    auto [it, inserted] = table.try_emplace(m.trajectory.current(), m.weight);
    if (!inserted) it->second = value_add(it->second, m.weight);
  }
  std::vector<std::pair<WorldState, Value>> out;
  out.reserve(table.size());
  for (auto& [w, v] : table)
    out.emplace_back(w, normalize ? value_div(v, total) : v);
  return out;
}

}  // namespace sitcalc
