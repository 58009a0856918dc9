#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace bconv {

/// Arbitrary-precision rational, always kept reduced with a positive
/// denominator. The sign lives in the numerator.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(long n) : num_(n), den_(1) {}            // NOLINT: implicit by design
  Rational(const mpz_class& n) : num_(n), den_(1) {}
  Rational(const mpz_class& num, const mpz_class& den);

  /// Lenient parse of "p", "p/q" (unreduced and negative denominators
  /// accepted, e.g. "4/12" -> 1/3, "-6/-8" -> 3/4).
  static Rational parse(std::string_view text);

  /// Exact value of a finite double (doubles are dyadic rationals).
  static Rational from_double(double x);

  const mpz_class& num() const { return num_; }
  const mpz_class& den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational abs() const;
  double to_double() const;

  /// "num/den", with "/den" omitted for integers.
  std::string str() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on division by zero
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

private:
  void normalize();

  mpz_class num_;
  mpz_class den_;  // > 0
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Reduced fraction num/den. Throws std::invalid_argument when den == 0.
Rational reduce(const mpz_class& num, const mpz_class& den);

/// Largest e with p^e | n. Throws for n == 0 (the valuation is infinite)
/// and for non-prime p.
unsigned long valuation(const mpz_class& n, const mpz_class& p);

struct PrimePower {
  mpz_class prime;
  unsigned long exponent;
};

/// Prime factorization of n >= 1, primes ascending. factorize(1) is empty.
std::vector<PrimePower> factorize(const mpz_class& n);

/// Positional expansion of a nonnegative integer, least-significant digit
/// first; the expansion of 0 is the empty digit list.
struct DigitExpansion {
  int base = 10;
  std::vector<int> digits;

  mpz_class value() const;
};

DigitExpansion to_digits(const mpz_class& m, int base);
mpz_class from_digits(const DigitExpansion& d);

/// Validated scale parameter lambda = a/b with gcd(a,b) = 1 and 0 < a < b.
/// Factorizations of a and b are computed once and cached; the exact
/// decision procedures walk them prime by prime.
class LambdaParam {
public:
  LambdaParam(const mpz_class& a, const mpz_class& b);
  LambdaParam(long a, long b) : LambdaParam(mpz_class(a), mpz_class(b)) {}

  static LambdaParam parse(std::string_view text);

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  Rational value() const { return Rational(a_, b_); }
  double to_double() const { return value().to_double(); }

  bool b_even() const { return mpz_even_p(b_.get_mpz_t()) != 0; }
  bool a_even() const { return mpz_even_p(a_.get_mpz_t()) != 0; }

  const std::vector<PrimePower>& a_factors() const { return a_factors_; }
  const std::vector<PrimePower>& b_factors() const { return b_factors_; }

  std::string str() const;

  bool operator==(const LambdaParam& o) const { return a_ == o.a_ && b_ == o.b_; }

private:
  mpz_class a_;
  mpz_class b_;
  std::vector<PrimePower> a_factors_;
  std::vector<PrimePower> b_factors_;
};

}  // namespace bconv
