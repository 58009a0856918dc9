#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bconv/rational.hpp"

using namespace bconv;

namespace {

// Unreduced reference arithmetic: plain numerator/denominator pairs, no gcd.
// Equality against a Rational by cross multiplication.
struct RawFrac {
  mpz_class n, d;
};

RawFrac raw_add(const RawFrac& a, const RawFrac& b) { return {a.n * b.d + b.n * a.d, a.d * b.d}; }
RawFrac raw_sub(const RawFrac& a, const RawFrac& b) { return {a.n * b.d - b.n * a.d, a.d * b.d}; }
RawFrac raw_mul(const RawFrac& a, const RawFrac& b) { return {a.n * b.n, a.d * b.d}; }

bool raw_equal(const RawFrac& a, const Rational& r) { return a.n * r.den() == r.num() * a.d; }

}  // namespace

TEST_CASE("reduce examples") {
  CHECK(reduce(4, 12) == Rational(1, 3));
  CHECK(reduce(-6, -8) == Rational(3, 4));
  CHECK(reduce(0, 7) == Rational(0));
  CHECK(reduce(0, 7).den() == 1);
  CHECK(reduce(5, -10).str() == "-1/2");
  CHECK_THROWS_AS(reduce(1, 0), std::invalid_argument);
}

TEST_CASE("serialization") {
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(-7).str() == "-7");
  CHECK(Rational::parse("4/12") == Rational(1, 3));
  CHECK(Rational::parse("-6/-8") == Rational(3, 4));
  CHECK(Rational::parse(" 5 ") == Rational(5));
  CHECK(Rational::parse("+5/10") == Rational(1, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);

  // round trip through str()
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int i = 0; i < 200; ++i) {
    long den = d(rng);
    if (den == 0) continue;
    Rational r(d(rng), den);
    CHECK(Rational::parse(r.str()) == r);
  }
}

TEST_CASE("arithmetic agrees with unreduced reference on random pairs") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 10000; ++i) {
    long d1 = d(rng), d2 = d(rng);
    if (d1 == 0 || d2 == 0) continue;
    RawFrac a{d(rng), d1}, b{d(rng), d2};
    Rational ra(a.n, a.d), rb(b.n, b.d);
    CHECK(raw_equal(raw_add(a, b), ra + rb));
    CHECK(raw_equal(raw_sub(a, b), ra - rb));
    CHECK(raw_equal(raw_mul(a, b), ra * rb));
    CHECK(ra + rb == rb + ra);
    if (!rb.is_zero()) CHECK((ra / rb) * rb == ra);
  }
}

TEST_CASE("ordering and sign") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(-1, 2).is_negative());
  CHECK(Rational(-1, 2).abs() == Rational(1, 2));
  CHECK(Rational(7, 1).is_integer());
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::invalid_argument);
}

TEST_CASE("valuation") {
  CHECK(valuation(48, 2) == 4);
  CHECK(valuation(48, 3) == 1);
  CHECK(valuation(7, 5) == 0);
  CHECK(valuation(-48, 2) == 4);
  CHECK_THROWS_AS(valuation(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(valuation(10, 4), std::invalid_argument);

  // valuation(p^e m, p) = e whenever p does not divide m
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> ed(0, 12);
  std::uniform_int_distribution<long> md(1, 100000);
  for (long p : {2L, 3L, 5L, 7L, 13L}) {
    for (int i = 0; i < 200; ++i) {
      unsigned e = ed(rng);
      mpz_class m = md(rng);
      if (mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
      mpz_class pe;
      mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
      CHECK(valuation(pe * m, p) == e);
    }
  }
}

TEST_CASE("digit expansions") {
  CHECK(to_digits(7, 4).digits == std::vector<int>{3, 1});
  CHECK(to_digits(5, 4).digits == std::vector<int>{1, 1});
  CHECK(to_digits(0, 4).digits.empty());
  CHECK_THROWS_AS(to_digits(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(to_digits(-3, 4), std::invalid_argument);

  // from_digits . to_digits = identity below 4^10
  std::mt19937 rng(11);
  std::uniform_int_distribution<unsigned long> md(0, (1UL << 20) - 1);  // 4^10 = 2^20
  for (int i = 0; i < 2000; ++i) {
    mpz_class m(md(rng));
    CHECK(from_digits(to_digits(m, 4)) == m);
  }
  for (int base : {2, 3, 10, 16}) {
    for (int i = 0; i < 200; ++i) {
      mpz_class m(md(rng));
      DigitExpansion d = to_digits(m, base);
      if (m > 0) CHECK(d.digits.back() != 0);
      CHECK(from_digits(d) == m);
    }
  }
}

TEST_CASE("lambda param") {
  LambdaParam lam(3, 4);
  CHECK(lam.b_even());
  CHECK(lam.str() == "3/4");
  CHECK(LambdaParam::parse("9/12") == LambdaParam(3, 4));
  CHECK_THROWS_AS(LambdaParam(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(LambdaParam(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(LambdaParam::parse("5/4"), std::invalid_argument);
  CHECK_THROWS_AS(LambdaParam::parse("-1/2"), std::invalid_argument);
}
