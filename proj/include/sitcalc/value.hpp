#pragma once

#include "sitcalc/diagnostics.hpp"
#include "sitcalc/rational.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace sitcalc {

enum class ValueKind { Boolean, Number, Real, Symbol };

const char* to_string(ValueKind k);

// A runtime value: boolean, exact rational (integers are rationals with unit
// denominator), double, or a symbol from a declared object domain.
class Value {
 public:
  Value() : v_(false) {}

  static Value boolean(bool b) { return Value(Var(b)); }
  static Value number(Rational q) { return Value(Var(std::move(q))); }
  static Value integer(std::int64_t n) { return Value(Var(Rational(n))); }
  static Value real(double d) { return Value(Var(d)); }
  static Value symbol(std::string s) { return Value(Var(std::move(s))); }

  ValueKind kind() const { return static_cast<ValueKind>(v_.index()); }
  bool is_numeric() const {
    return kind() == ValueKind::Number || kind() == ValueKind::Real;
  }
  bool is_integer() const {
    return kind() == ValueKind::Number && as_rational().is_integer();
  }

  // Accessors throw EvalError when the kind does not match.
  bool as_bool() const;
  const Rational& as_rational() const;
  double as_real() const;
  const std::string& as_symbol() const;

  // Number or Real, widened to double.
  double numeric_to_double() const;

  std::string str() const;

  // Structural identity: same kind and same representation. Used for
  // container keys and the deterministic member order.
  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator<(const Value& a, const Value& b);

 private:
  using Var = std::variant<bool, Rational, double, std::string>;
  explicit Value(Var v) : v_(std::move(v)) {}
  Var v_;
};

// Semantic operations; all throw EvalError on a kind mismatch. Exact
// arithmetic stays exact: Number op Number yields Number (division included);
// any Real operand widens the result to Real.
Value value_add(const Value& a, const Value& b);
Value value_sub(const Value& a, const Value& b);
Value value_mul(const Value& a, const Value& b);
Value value_div(const Value& a, const Value& b);
Value value_neg(const Value& a);
Value value_abs(const Value& a);

// Semantic equality: numerics compare numerically across Number/Real.
bool value_equals(const Value& a, const Value& b);
// -1 / 0 / +1; ordering requires numeric operands.
int value_order(const Value& a, const Value& b);

}  // namespace sitcalc
