#include "sitcalc/value.hpp"

#include <cmath>
#include <sstream>

namespace sitcalc {

const char* to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Boolean: return "boolean";
    case ValueKind::Number: return "number";
    case ValueKind::Real: return "real";
    case ValueKind::Symbol: return "symbol";
  }
  return "?";
}

namespace {

[[noreturn]] void kind_error(const char* what, const Value& v) {
  throw EvalError(std::string("expected ") + what + ", got " +
                  to_string(v.kind()) + " value " + v.str());
}

[[noreturn]] void mixed_error(const char* op, const Value& a, const Value& b) {
  throw EvalError(std::string("cannot ") + op + " " + to_string(a.kind()) +
                  " and " + to_string(b.kind()) + " (" + a.str() + ", " +
                  b.str() + ")");
}

std::string real_str(double d) {
  std::ostringstream os;
  os.precision(17);
  os << d;
  return os.str();
}

}  // namespace

bool Value::as_bool() const {
  if (kind() != ValueKind::Boolean) kind_error("boolean", *this);
  return std::get<bool>(v_);
}

const Rational& Value::as_rational() const {
  if (kind() != ValueKind::Number) kind_error("number", *this);
  return std::get<Rational>(v_);
}

double Value::as_real() const {
  if (kind() != ValueKind::Real) kind_error("real", *this);
  return std::get<double>(v_);
}

const std::string& Value::as_symbol() const {
  if (kind() != ValueKind::Symbol) kind_error("symbol", *this);
  return std::get<std::string>(v_);
}

double Value::numeric_to_double() const {
  if (kind() == ValueKind::Number) return as_rational().to_double();
  if (kind() == ValueKind::Real) return as_real();
  kind_error("numeric value", *this);
}

std::string Value::str() const {
  switch (kind()) {
    case ValueKind::Boolean: return as_bool() ? "true" : "false";
    case ValueKind::Number: return as_rational().str();
    case ValueKind::Real: return real_str(as_real());
    case ValueKind::Symbol: return as_symbol();
  }
  return "?";
}

bool operator<(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case ValueKind::Boolean: return a.as_bool() < b.as_bool();
    case ValueKind::Number: return a.as_rational() < b.as_rational();
    case ValueKind::Real: return a.as_real() < b.as_real();
    case ValueKind::Symbol: return a.as_symbol() < b.as_symbol();
  }
  return false;
}

namespace {

template <typename ExactOp, typename RealOp>
Value numeric_op(const char* name, const Value& a, const Value& b,
                 ExactOp exact, RealOp real) {
  if (!a.is_numeric() || !b.is_numeric()) mixed_error(name, a, b);
  if (a.kind() == ValueKind::Number && b.kind() == ValueKind::Number)
    return Value::number(exact(a.as_rational(), b.as_rational()));
  return Value::real(real(a.numeric_to_double(), b.numeric_to_double()));
}

}  // namespace

Value value_add(const Value& a, const Value& b) {
  return numeric_op(
      "add", a, b, [](const Rational& x, const Rational& y) { return x + y; },
      [](double x, double y) { return x + y; });
}

Value value_sub(const Value& a, const Value& b) {
  return numeric_op(
      "subtract", a, b,
      [](const Rational& x, const Rational& y) { return x - y; },
      [](double x, double y) { return x - y; });
}

Value value_mul(const Value& a, const Value& b) {
  return numeric_op(
      "multiply", a, b,
      [](const Rational& x, const Rational& y) { return x * y; },
      [](double x, double y) { return x * y; });
}

Value value_div(const Value& a, const Value& b) {
  if (!a.is_numeric() || !b.is_numeric()) mixed_error("divide", a, b);
  bool zero = b.kind() == ValueKind::Number ? b.as_rational().is_zero()
                                            : b.as_real() == 0.0;
  if (zero) throw EvalError("division by zero");
  return numeric_op(
      "divide", a, b,
      [](const Rational& x, const Rational& y) { return x / y; },
      [](double x, double y) { return x / y; });
}

Value value_neg(const Value& a) {
  if (a.kind() == ValueKind::Number) return Value::number(-a.as_rational());
  if (a.kind() == ValueKind::Real) return Value::real(-a.as_real());
  kind_error("numeric value", a);
}

Value value_abs(const Value& a) {
  if (a.kind() == ValueKind::Number)
    return Value::number(a.as_rational().abs());
  if (a.kind() == ValueKind::Real) return Value::real(std::fabs(a.as_real()));
  kind_error("numeric value", a);
}

bool value_equals(const Value& a, const Value& b) {
  if (a.is_numeric() && b.is_numeric()) {
    if (a.kind() == ValueKind::Number && b.kind() == ValueKind::Number)
      return a.as_rational() == b.as_rational();
    return a.numeric_to_double() == b.numeric_to_double();
  }
  if (a.kind() != b.kind()) mixed_error("compare", a, b);
  return a == b;
}

int value_order(const Value& a, const Value& b) {
  if (!a.is_numeric() || !b.is_numeric()) mixed_error("order", a, b);
  if (a.kind() == ValueKind::Number && b.kind() == ValueKind::Number) {
    auto c = a.as_rational() <=> b.as_rational();
    return c < 0 ? -1 : c > 0 ? 1 : 0;
  }
  double x = a.numeric_to_double();
  double y = b.numeric_to_double();
  return x < y ? -1 : x > y ? 1 : 0;
}

}  // namespace sitcalc
