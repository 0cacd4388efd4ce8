#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace sitcalc {

// Arbitrary-precision rational, kept in lowest terms with a positive
// denominator. Products of step likelihoods over long histories stay exact,
// so golden fractions such as 57/235 reproduce bit for bit.
class Rational {
 public:
  using Int = boost::multiprecision::cpp_int;

  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(Int num, Int den);
  Rational(std::int64_t num, std::int64_t den) : Rational(Int(num), Int(den)) {}

  // Accepts "a", "-a/b" and decimal literals like "0.25".
  // Throws std::invalid_argument on malformed input.
  static Rational parse(const std::string& text);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const;

  // "a" when integral, "a/b" otherwise.
  std::string str() const;

  Rational operator-() const;
  Rational abs() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  // Throws std::domain_error on division by zero.
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void normalize();

  Int num_;
  Int den_;
};

}  // namespace sitcalc
