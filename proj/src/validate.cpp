#include "sitcalc/validate.hpp"

#include "sitcalc/engine.hpp"
#include "sitcalc/eval.hpp"

#include <map>
#include <set>
#include <sstream>

namespace sitcalc {

namespace {

using Severity = Diagnostic::Severity;

ExprType param_type(const ActionTheory& theory, const std::string& domain) {
  if (domain == "bool") return ExprType::boolean();
  if (domain == "int") return ExprType::numeric();
  const DomainDecl* d = theory.find_domain(domain);
  if (d == nullptr) return ExprType::invalid();
  return d->is_range || d->is_int ? ExprType::numeric() : ExprType::symbol(domain);
}

void check_domains(const ActionTheory& theory, std::vector<Diagnostic>& diags) {
  for (const auto& f : theory.fluents) {
    if (f.range == "int")
      diags.push_back({Severity::Error, f.loc,
                       "fluent '" + f.name + "' has an unbounded range"});
    else if (f.range != "bool" && theory.find_domain(f.range) == nullptr)
      diags.push_back({Severity::Error, f.loc,
                       "fluent '" + f.name + "' uses unknown domain '" + f.range + "'"});
    for (const auto& p : f.params) {
      const DomainDecl* d = theory.find_domain(p.domain);
      if (p.domain == "bool") continue;
      if (d == nullptr)
        diags.push_back({Severity::Error, f.loc,
                         "fluent parameter domain '" + p.domain + "' is unknown"});
      else if (!d->finite())
        diags.push_back({Severity::Error, f.loc,
                         "fluent parameter domain must be finite"});
    }
  }
  for (const auto& s : theory.schemas) {
    for (const auto& p : s.params) {
      if (p.domain == "bool") continue;
      const DomainDecl* d = theory.find_domain(p.domain);
      if (d == nullptr) {
        diags.push_back({Severity::Error, s.loc,
                         "parameter domain '" + p.domain + "' of action '" +
                             s.name + "' is unknown"});
      } else if (!d->finite() && p.mode == ParamMode::Actual) {
        diags.push_back({Severity::Error, s.loc,
                         "actual parameter '" + p.name + "' of action '" + s.name +
                             "' ranges over an unbounded domain; "
                             "actual parameter domains must be finite"});
      }
    }
  }
}

void check_types(const ActionTheory& theory, std::vector<Diagnostic>& diags) {
  for (const auto& s : theory.schemas) {
    TypeEnv env;
    for (const auto& p : s.params) env[p.name] = param_type(theory, p.domain);
    ExprType pre = infer_type(theory, *s.precondition, env, diags);
    if (pre.ok() && pre.tag != ExprType::Bool)
      diags.push_back({Severity::Error, s.loc,
                       "precondition of '" + s.name + "' is not boolean"});
    ExprType lk = infer_type(theory, *s.likelihood, env, diags);
    if (lk.ok() && lk.tag != ExprType::Num)
      diags.push_back({Severity::Error, s.loc,
                       "likelihood of '" + s.name + "' is not numeric"});
  }
  for (const auto& rule : theory.rules) {
    const FluentDecl& f = theory.fluents[rule.fluent];
    for (const auto& c : rule.cases) {
      TypeEnv env;
      for (size_t i = 0; i < rule.fluent_params.size() && i < f.params.size(); ++i)
        env[rule.fluent_params[i]] = param_type(theory, f.params[i].domain);
      const ActionSchema& s = theory.schemas[c.schema];
      for (size_t i = 0; i < c.pattern_vars.size() && i < s.params.size(); ++i)
        env[c.pattern_vars[i]] = param_type(theory, s.params[i].domain);
      if (c.guard) {
        ExprType g = infer_type(theory, *c.guard, env, diags);
        if (g.ok() && g.tag != ExprType::Bool)
          diags.push_back({Severity::Error, c.loc, "case guard is not boolean"});
      }
      ExprType v = infer_type(theory, *c.value, env, diags);
      ExprType want = param_type(theory, f.range);
      if (v.ok() && want.ok() && !(v.tag == want.tag && v.domain == want.domain))
        diags.push_back({Severity::Error, c.loc,
                         "case value for '" + f.name + "' has type " + v.str() +
                             ", expected " + want.str()});
    }
  }
}

void check_observation_templates(const ActionTheory& theory,
                                 std::vector<Diagnostic>& diags) {
  for (const auto& s : theory.schemas) {
    std::set<int> seen;
    for (int p : s.obs_params) {
      if (p < 0 || p >= static_cast<int>(s.params.size()))
        diags.push_back({Severity::Error, s.loc,
                         "observation template of '" + s.name +
                             "' references a missing parameter"});
      else if (!seen.insert(p).second)
        diags.push_back({Severity::Error, s.loc,
                         "observation template of '" + s.name +
                             "' repeats parameter '" + s.params[p].name + "'"});
    }
    for (size_t i = 0; i < s.params.size(); ++i) {
      if (s.params[i].mode == ParamMode::Nominal && !s.is_visible(static_cast<int>(i)))
        diags.push_back({Severity::Warning, s.loc,
                         "nominal parameter '" + s.params[i].name + "' of '" +
                             s.name + "' is not in the observation template; "
                             "the agent forgets its own command"});
    }
  }
  // Groups should agree on the visible tuple shape, or signatures silently
  // skip schemas.
  for (const auto& [group, ids] : theory.obs_groups) {
    if (ids.size() < 2) continue;
    const ActionSchema& first = theory.schemas[ids.front()];
    for (size_t k = 1; k < ids.size(); ++k) {
      const ActionSchema& other = theory.schemas[ids[k]];
      bool same = other.obs_params.size() == first.obs_params.size();
      if (same) {
        for (size_t i = 0; i < first.obs_params.size(); ++i)
          same &= first.params[first.obs_params[i]].domain ==
                  other.params[other.obs_params[i]].domain;
      }
      if (!same)
        diags.push_back({Severity::Warning, other.loc,
                         "observation group '" + group +
                             "' mixes schemas with different visible shapes"});
    }
  }
}

void check_successor_overlap(const ActionTheory& theory,
                             std::vector<Diagnostic>& diags) {
  for (const auto& rule : theory.rules) {
    std::set<int> unguarded;
    for (const auto& c : rule.cases) {
      if (c.guard) continue;
      if (!unguarded.insert(c.schema).second)
        diags.push_back({Severity::Warning, c.loc,
                         "successor rule for '" + theory.fluents[rule.fluent].name +
                             "' has overlapping unguarded cases for action '" +
                             theory.schemas[c.schema].name +
                             "'; the first case always wins"});
    }
  }
}

void check_init(const ActionTheory& theory, std::vector<Diagnostic>& diags) {
  if (theory.init.empty()) {
    diags.push_back({Severity::Error, {},
                     "theory declares no initial belief (init block required)"});
    return;
  }
  Rational total(0);
  for (const auto& w : theory.init) {
    if (w.weight.is_negative())
      diags.push_back({Severity::Error, w.loc, "initial weight must be nonnegative"});
    total += w.weight;
    if (w.world.values.size() != theory.ground_fluents.size()) {
      diags.push_back({Severity::Error, w.loc, "initial world is not total"});
      continue;
    }
    for (size_t i = 0; i < w.world.values.size(); ++i) {
      const GroundFluent& g = theory.ground_fluents[i];
      const FluentDecl& f = theory.fluents[g.fluent];
      const Value& v = w.world.values[i];
      bool ok = f.range == "bool" ? v.kind() == ValueKind::Boolean
                                  : theory.find_domain(f.range) != nullptr &&
                                        theory.find_domain(f.range)->contains(v);
      if (!ok)
        diags.push_back({Severity::Error, w.loc,
                         "initial value " + v.str() + " of '" + g.label +
                             "' is outside its domain"});
    }
  }
  if (!(total > Rational(0)))
    diags.push_back({Severity::Error, theory.init.front().loc,
                     "initial total weight must be positive"});
}

// Constant-folds a likelihood with no free parameters or fluents; negative
// constants are theory errors even before any world is considered.
void check_constant_likelihoods(const ActionTheory& theory,
                                std::vector<Diagnostic>& diags) {
  static const ActionTheory empty;
  for (const auto& s : theory.schemas) {
    Trajectory dummy;
    dummy.states = {WorldState{}};
    try {
      Value v = evaluate(empty, *s.likelihood, dummy, {});
      bool negative = v.kind() == ValueKind::Number ? v.as_rational().is_negative()
                      : v.kind() == ValueKind::Real ? v.as_real() < 0.0
                                                    : false;
      if (negative)
        diags.push_back({Severity::Error, s.loc,
                         "likelihood of '" + s.name + "' is " + v.str() +
                             "; likelihood must be nonnegative"});
    } catch (const EvalError&) {
      // Not constant; the per-world sweep and the engine's runtime check
      // cover state-dependent likelihoods.
    }
  }
}

// Forward normalization: for every initial world and every command (group
// key plus a full nominal binding), the likelihoods of the Poss-satisfying
// completions should sum to 1. The paper's own sensor axioms break the
// literal per-class constraint, and bel renormalizes anyway, so violations
// warn instead of erroring. Commands with no executable completion are
// skipped: those are impossibility, not denormalization.
void check_normalization(const ActionTheory& theory,
                         std::vector<Diagnostic>& diags) {
  constexpr std::int64_t kEnumerationCap = 200000;

  for (const auto& [group, ids] : theory.obs_groups) {
    const ActionSchema& lead = theory.schemas[ids.front()];
    std::vector<int> lead_nominals = lead.nominal_params();

    // Nominal bindings enumerate over the lead schema's nominal domains.
    std::vector<std::vector<Value>> nominal_domains;
    bool enumerable = true;
    std::int64_t combinations = 1;
    for (int p : lead_nominals) {
      const std::string& dom = lead.params[p].domain;
      if (dom == "bool") {
        nominal_domains.push_back({Value::boolean(false), Value::boolean(true)});
        combinations *= 2;
        continue;
      }
      const DomainDecl* d = theory.find_domain(dom);
      if (d == nullptr || !d->finite()) {
        enumerable = false;
        break;
      }
      nominal_domains.push_back(d->values());
      combinations *= d->size();
      if (combinations > kEnumerationCap) break;
    }
    if (!enumerable) {
      diags.push_back({Severity::Info, lead.loc,
                       "normalization of '" + group +
                           "' not checked: unbounded nominal domain"});
      continue;
    }
    if (combinations * static_cast<std::int64_t>(theory.init.size()) >
        kEnumerationCap) {
      diags.push_back({Severity::Info, lead.loc,
                       "normalization of '" + group +
                           "' not checked: command space too large"});
      continue;
    }

    bool warned = false;
    std::vector<size_t> idx(nominal_domains.size(), 0);
    for (;;) {
      std::vector<Value> binding;
      for (size_t i = 0; i < nominal_domains.size(); ++i)
        binding.push_back(nominal_domains[i][idx[i]]);

      for (const auto& init : theory.init) {
        if (warned) break;
        Trajectory traj;
        traj.states = {init.world};
        Command cmd{group, binding};

        Rational sum(0);
        bool any = false;
        bool exact = true;
        double fsum = 0;
        for (int si : ids) {
          const ActionSchema& s = theory.schemas[si];
          std::vector<int> nominals = s.nominal_params();
          if (nominals.size() != binding.size()) continue;
          std::map<int, Value> fixed;
          bool ok = true;
          for (size_t i = 0; i < binding.size(); ++i) {
            const std::string& dom = s.params[nominals[i]].domain;
            const DomainDecl* d = theory.find_domain(dom);
            bool in = dom == "bool" ? binding[i].kind() == ValueKind::Boolean
                                    : d != nullptr && d->contains(binding[i]);
            if (!in) {
              ok = false;
              break;
            }
            fixed.emplace(nominals[i], binding[i]);
          }
          if (!ok) continue;
          std::vector<GroundAction> completions;
          try {
            // Same enumeration the engine's oi_class uses, but over a full
            // nominal binding rather than a signature.
            ObservationSignature probe;
            probe.group = group;
            for (int p : s.obs_params) {
              auto pos = std::find(nominals.begin(), nominals.end(), p);
              if (pos == nominals.end()) {
                probe.args.clear();
                break;
              }
              probe.args.push_back(binding[static_cast<size_t>(pos - nominals.begin())]);
            }
            completions.clear();
            GroundAction proto;
            proto.schema = si;
            (void)proto;
            // Direct enumeration of actual completions under the binding.
            std::vector<int> open;
            for (size_t i = 0; i < s.params.size(); ++i)
              if (fixed.find(static_cast<int>(i)) == fixed.end())
                open.push_back(static_cast<int>(i));
            std::vector<std::vector<Value>> doms;
            bool finite = true;
            for (int slot : open) {
              const std::string& dom = s.params[slot].domain;
              if (dom == "bool") {
                doms.push_back({Value::boolean(false), Value::boolean(true)});
                continue;
              }
              const DomainDecl* d = theory.find_domain(dom);
              if (d == nullptr || !d->finite()) {
                finite = false;
                break;
              }
              doms.push_back(d->values());
            }
            if (!finite) continue;
            GroundAction a;
            a.schema = si;
            a.args.assign(s.params.size(), Value());
            for (auto& [slot, v] : fixed) a.args[slot] = v;
            std::vector<size_t> cidx(open.size(), 0);
            for (;;) {
              for (size_t i = 0; i < open.size(); ++i)
                a.args[open[i]] = doms[i][cidx[i]];
              completions.push_back(a);
              size_t k = open.size();
              bool done = open.empty();
              while (k > 0) {
                --k;
                if (++cidx[k] < doms[k].size()) break;
                cidx[k] = 0;
                if (k == 0) done = true;
              }
              if (done) break;
            }
          } catch (const TheoryError&) {
            continue;
          }
          for (const GroundAction& a : completions) {
            try {
              if (!poss(theory, a, traj)) continue;
              Value lk = likelihood(theory, a, traj);
              any = true;
              if (lk.kind() == ValueKind::Number)
                sum += lk.as_rational();
              else
                exact = false;
              fsum += lk.numeric_to_double();
            } catch (const EvalError& err) {
              diags.push_back({Severity::Error, s.loc,
                               "evaluating '" + s.name + "': " + err.what()});
              return;
            } catch (const TheoryError& err) {
              diags.push_back({Severity::Error, s.loc, err.what()});
              return;
            }
          }
        }
        (void)cmd;
        if (!any) continue;  // command impossible in this world
        bool normalized = exact ? sum == Rational(1)
                                : std::abs(fsum - 1.0) < 1e-9;
        if (!normalized) {
          std::ostringstream os;
          os << "likelihoods of command '" << group << "(";
          for (size_t i = 0; i < binding.size(); ++i) {
            if (i) os << ", ";
            os << binding[i].str();
          }
          os << ")' sum to " << (exact ? sum.str() : std::to_string(fsum))
             << " over the executable completions of initial world #"
             << (&init - theory.init.data()) << " (expected 1)";
          diags.push_back({Severity::Warning, lead.loc, os.str()});
          warned = true;  // one warning per group is enough
        }
      }
      if (warned) break;

      size_t k = nominal_domains.size();
      bool done = nominal_domains.empty();
      while (k > 0) {
        --k;
        if (++idx[k] < nominal_domains[k].size()) break;
        idx[k] = 0;
        if (k == 0) done = true;
      }
      if (done) break;
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate_theory(const ActionTheory& theory) {
  std::vector<Diagnostic> diags;
  check_domains(theory, diags);
  check_types(theory, diags);
  check_observation_templates(theory, diags);
  check_successor_overlap(theory, diags);
  check_init(theory, diags);
  check_constant_likelihoods(theory, diags);
  if (!has_errors(diags)) check_normalization(theory, diags);
  return diags;
}

}  // namespace sitcalc
