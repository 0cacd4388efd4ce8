#include "sitcalc/theory.hpp"

#include <functional>
#include <sstream>

namespace sitcalc {

std::string ObservationSignature::str() const {
  std::ostringstream os;
  os << group << "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) os << ", ";
    os << args[i].str();
  }
  os << ")";
  return os.str();
}

std::int64_t DomainDecl::size() const {
  if (is_int) return -1;
  if (is_range) return hi < lo ? 0 : hi - lo + 1;
  return static_cast<std::int64_t>(symbols.size());
}

std::vector<Value> DomainDecl::values() const {
  std::vector<Value> out;
  if (is_int) return out;
  if (is_range) {
    for (std::int64_t v = lo; v <= hi; ++v) out.push_back(Value::integer(v));
  } else {
    for (const auto& s : symbols) out.push_back(Value::symbol(s));
  }
  return out;
}

bool DomainDecl::contains(const Value& v) const {
  if (is_int || is_range) {
    if (!v.is_integer()) return false;
    if (is_int) return true;
    Rational q = v.as_rational();
    return q >= Rational(lo) && q <= Rational(hi);
  }
  if (v.kind() != ValueKind::Symbol) return false;
  for (const auto& s : symbols)
    if (s == v.as_symbol()) return true;
  return false;
}

std::vector<int> ActionSchema::nominal_params() const {
  std::vector<int> out;
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i].mode == ParamMode::Nominal) out.push_back(static_cast<int>(i));
  return out;
}

bool ActionSchema::is_visible(int param) const {
  for (int p : obs_params)
    if (p == param) return true;
  return false;
}

const DomainDecl* ActionTheory::find_domain(const std::string& name) const {
  auto it = domain_index.find(name);
  return it == domain_index.end() ? nullptr : &domains[it->second];
}

const FluentDecl* ActionTheory::find_fluent(const std::string& name) const {
  auto it = fluent_index.find(name);
  return it == fluent_index.end() ? nullptr : &fluents[it->second];
}

const ActionSchema* ActionTheory::find_schema(const std::string& name) const {
  auto it = schema_index.find(name);
  return it == schema_index.end() ? nullptr : &schemas[it->second];
}

const ProgramPtr* ActionTheory::find_program(const std::string& name) const {
  for (const auto& [n, p] : programs)
    if (n == name) return &p;
  return nullptr;
}

int ActionTheory::ground_fluent_id(int fluent,
                                   const std::vector<Value>& args) const {
  auto it = ground_index_.find({fluent, args});
  return it == ground_index_.end() ? -1 : it->second;
}

namespace {

void enumerate_ground(const ActionTheory& theory, const FluentDecl& decl,
                      size_t param, std::vector<Value>& args,
                      const std::function<void(const std::vector<Value>&)>& emit) {
  if (param == decl.params.size()) {
    emit(args);
    return;
  }
  const DomainDecl* dom = theory.find_domain(decl.params[param].domain);
  if (dom == nullptr || dom->is_int) return;  // rejected by validation
  for (const Value& v : dom->values()) {
    args.push_back(v);
    enumerate_ground(theory, decl, param + 1, args, emit);
    args.pop_back();
  }
}

}  // namespace

void ActionTheory::finalize() {
  domain_index.clear();
  fluent_index.clear();
  schema_index.clear();
  obs_groups.clear();
  ground_fluents.clear();
  ground_index_.clear();

  for (size_t i = 0; i < domains.size(); ++i)
    domain_index.emplace(domains[i].name, static_cast<int>(i));
  for (size_t i = 0; i < fluents.size(); ++i)
    fluent_index.emplace(fluents[i].name, static_cast<int>(i));
  for (size_t i = 0; i < schemas.size(); ++i) {
    schema_index.emplace(schemas[i].name, static_cast<int>(i));
    obs_groups[schemas[i].obs_group].push_back(static_cast<int>(i));
  }

  for (size_t f = 0; f < fluents.size(); ++f) {
    std::vector<Value> args;
    enumerate_ground(*this, fluents[f], 0, args,
                     [&](const std::vector<Value>& ground_args) {
                       GroundFluent g;
                       g.fluent = static_cast<int>(f);
                       g.args = ground_args;
                       std::ostringstream label;
                       label << fluents[f].name;
                       if (!ground_args.empty()) {
                         label << "(";
                         for (size_t i = 0; i < ground_args.size(); ++i) {
                           if (i) label << ", ";
                           label << ground_args[i].str();
                         }
                         label << ")";
                       }
                       g.label = label.str();
                       ground_index_.emplace(
                           std::make_pair(g.fluent, g.args),
                           static_cast<int>(ground_fluents.size()));
                       ground_fluents.push_back(std::move(g));
                     });
  }

  // Every fluent gets a rule slot; missing declarations become the pure
  // frame default (no cases, value always persists).
  std::vector<SuccessorRule> ordered(fluents.size());
  for (size_t f = 0; f < fluents.size(); ++f) {
    ordered[f].fluent = static_cast<int>(f);
    for (auto& p : fluents[f].params) ordered[f].fluent_params.push_back(p.name);
  }
  for (auto& rule : rules) {
    if (rule.fluent >= 0 && rule.fluent < static_cast<int>(ordered.size()))
      ordered[rule.fluent] = rule;
  }
  rules = std::move(ordered);
}

}  // namespace sitcalc
