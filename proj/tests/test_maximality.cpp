#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bconv/maximality.hpp"
#include "bconv/zero_oracle.hpp"

using namespace bconv;

namespace {
const LambdaParam& lam34() {
  static const LambdaParam lam(3, 4);
  return lam;
}
}  // namespace

TEST_CASE("gamma_1 membership") {
  CHECK(is_member_gamma1(Rational(0)));
  CHECK(is_member_gamma1(Rational(1, 3)));
  CHECK(is_member_gamma1(Rational(5, 3)));
  CHECK(is_member_gamma1(Rational(7)));  // 21/3, 21 = 111 base 4
  CHECK_FALSE(is_member_gamma1(Rational(7, 3)));
  CHECK_FALSE(is_member_gamma1(Rational(2, 3)));
  CHECK_FALSE(is_member_gamma1(Rational(-1, 3)));
  CHECK_FALSE(is_member_gamma1(Rational(1, 4)));
  CHECK_FALSE(is_member_gamma1(Rational(1, 9)));
}

TEST_CASE("witness examples") {
  auto w = non_orthogonal_witness(Rational(7, 3));
  CHECK(w.witness == Rational(1, 3));
  CHECK(w.tag == WitnessCase::digit_three);

  w = non_orthogonal_witness(Rational(2, 3));
  CHECK(w.witness == Rational(0));
  CHECK(w.tag == WitnessCase::not_orthogonal_to_zero);

  w = non_orthogonal_witness(Rational(4, 9));
  CHECK(w.witness == Rational(1, 3));
  CHECK(w.tag == WitnessCase::residual_power_of_three);

  // 11/3: 11 = 2 + 2*4 + ... digits {3, 2}; lowest digit >= 2 is a 3 at r=0
  w = non_orthogonal_witness(Rational(11, 3));
  CHECK(w.tag == WitnessCase::digit_three);
  CHECK(w.witness == Rational(1, 3));

  // 9/3 = 3: digits of 9 are {1, 2}; the 2 sits at r=1 with prefix 1
  w = non_orthogonal_witness(Rational(3));
  CHECK(w.tag == WitnessCase::digit_two);
  CHECK(w.witness == Rational(1, 3));

  // odd/4 members (factor index 0) take gamma = 1/3
  w = non_orthogonal_witness(Rational(1, 4));
  CHECK(w.tag == WitnessCase::quarter_denominator);
  CHECK(w.witness == Rational(1, 3));

  CHECK_THROWS_AS(non_orthogonal_witness(Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(non_orthogonal_witness(Rational(0)), std::invalid_argument);
}

TEST_CASE("scaled digit cases keep the witness inside gamma_1") {
  // x = 4 = (1/4)(4/3)^2 * 9: cancel one 3, leaving 4 * 3 / 3 with digit 3
  auto w = non_orthogonal_witness(Rational(4));
  CHECK(w.tag == WitnessCase::scaled_digit_three);
  CHECK(is_member_gamma1(w.witness));
  CHECK(w.witness == Rational(4, 3));

  // negative members force an odd 2-adic valuation instead
  w = non_orthogonal_witness(Rational(-1, 3));
  CHECK(w.tag == WitnessCase::negative_digit_force);
  CHECK(is_member_gamma1(w.witness));
  CHECK(w.witness == Rational(1, 3));

  w = non_orthogonal_witness(Rational(-1));  // -3/3
  CHECK(w.tag == WitnessCase::negative_digit_force);
  CHECK(w.witness == Rational(5, 3));
}

TEST_CASE("random members outside gamma_1 always get a confirmed witness") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<unsigned long> nd(0, 4);
  std::uniform_int_distribution<long> kd(-1000, 1000);
  int produced = 0;
  int case1_smaller = 0, case1_total = 0;
  while (produced < 1000) {
    ZeroDecomposition gen;
    gen.n = nd(rng);
    gen.k = kd(rng);
    Rational x = gen.reconstruct(lam34());
    if (is_member_gamma1(x)) continue;

    WitnessResult w = non_orthogonal_witness(x);  // throws on any oracle failure
    CHECK(is_member_gamma1(w.witness));
    CHECK_FALSE(decompose_zero(x - w.witness, lam34()).has_value());
    if (w.tag == WitnessCase::digit_two || w.tag == WitnessCase::digit_three) {
      ++case1_total;
      if (w.witness < x) ++case1_smaller;
    }
    ++produced;
  }
  CHECK(produced == 1000);
  CHECK(case1_total > 0);
  CHECK(case1_smaller == case1_total);  // the digit construction strips high digits
}

TEST_CASE("rationals outside the zero set get gamma = 0") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<long> num(-500, 500);
  std::uniform_int_distribution<long> den(1, 100);
  for (int i = 0; i < 500; ++i) {
    long n = num(rng);
    if (n == 0) continue;
    Rational x(n, den(rng));
    if (is_member_gamma1(x) || decompose_zero(x, lam34())) continue;
    auto w = non_orthogonal_witness(x);
    CHECK(w.witness == Rational(0));
    CHECK(w.tag == WitnessCase::not_orthogonal_to_zero);
  }
}
