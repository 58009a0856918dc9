#include "bconv/maximality.hpp"

#include <stdexcept>

#include "bconv/zero_oracle.hpp"

namespace bconv {

namespace {

const LambdaParam& three_quarters() {
  static const LambdaParam lam(3, 4);
  return lam;
}

bool digits_are_binary(const mpz_class& m) {
  mpz_class rest = m;
  while (rest > 0) {
    if (mpz_fdiv_ui(rest.get_mpz_t(), 4) > 1) return false;
    rest /= 4;
  }
  return true;
}

mpz_class pow4(unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), mpz_class(4).get_mpz_t(), e);
  return r;
}

// For positive odd w with some base-4 digit >= 2: the digit construction.
// r is the lowest such position; the witness numerator keeps the digits
// below r and, when the digit is 3, adds 4^r, so that w minus it starts
// with a 2 at position r. Returns the numerator and whether the digit was 3.
std::pair<mpz_class, bool> digit_prefix(const mpz_class& w) {
  mpz_class rest = w, prefix = 0, place = 1;
  while (rest > 0) {
    unsigned long d = mpz_fdiv_ui(rest.get_mpz_t(), 4);
    if (d >= 2) return {d == 3 ? prefix + place : prefix, d == 3};
    prefix += d * place;
    place *= 4;
    rest /= 4;
  }
  throw std::logic_error("digit construction on a {0,1}-digit numerator");
}

// For positive odd w: a {0,1}-digit v >= 1 such that val_2(w + v) is odd,
// i.e. w + v = 2 * 4^i * (odd). Chooses base-4 digits of v with carries so
// that w + v reads [0, ..., 0, 2, junk...]. Always terminates: position 0
// either finishes (digit 1) or sets the carry (digit 3), and with the carry
// up every position either finishes (digit 0 or 1) or keeps it (2 or 3).
mpz_class force_odd_two_valuation(const mpz_class& w) {
  mpz_class rest = w, v = 0, place = 1;
  int carry = 0;
  while (true) {
    int s = static_cast<int>(mpz_fdiv_ui(rest.get_mpz_t(), 4)) + carry;
    switch (s) {
      case 1: return v + place;
      case 2: return v;
      case 3: v += place; carry = 1; break;
      case 4: carry = 1; break;
      default: carry = 0; break;
    }
    rest /= 4;
    place *= 4;
  }
}

}  // namespace

std::string witness_case_name(WitnessCase c) {
  switch (c) {
    case WitnessCase::not_orthogonal_to_zero: return "not-orthogonal-to-zero";
    case WitnessCase::quarter_denominator: return "quarter-denominator";
    case WitnessCase::digit_two: return "digit-two";
    case WitnessCase::digit_three: return "digit-three";
    case WitnessCase::residual_power_of_three: return "residual-power-of-three";
    case WitnessCase::scaled_digit_two: return "scaled-digit-two";
    case WitnessCase::scaled_digit_three: return "scaled-digit-three";
    case WitnessCase::negative_digit_force: return "negative-digit-force";
    case WitnessCase::negative_scaled_digit_force: return "negative-scaled-digit-force";
  }
  return "?";
}

bool is_member_gamma1(const Rational& x) {
  if (x.is_zero()) return true;
  if (x.is_negative()) return false;
  Rational m = x * Rational(3);
  if (!m.is_integer()) return false;
  return digits_are_binary(m.num());
}

WitnessResult non_orthogonal_witness(const Rational& x) {
  if (is_member_gamma1(x))
    throw std::invalid_argument("witness requested for a gamma_1 member " + x.str());
  const LambdaParam& lam = three_quarters();

  WitnessResult result;
  auto dec = decompose_zero(x, lam);
  if (!dec) {
    result.witness = Rational(0);
    result.tag = WitnessCase::not_orthogonal_to_zero;
  } else if (dec->n == 0) {
    // x = odd/4. The difference x - 1/3 has an odd numerator over 3*4, which
    // no (1/4)(4/3)^n (2k+1) form can match.
    result.witness = Rational(1, 3);
    result.tag = WitnessCase::quarter_denominator;
  } else {
    mpz_class u = dec->odd_part();
    unsigned long m = dec->n;
    while (m > 1 && mpz_divisible_ui_p(u.get_mpz_t(), 3)) {
      u /= 3;
      --m;
    }
    if (m > 1) {
      // x = 4^{n-1} u / 3^m with 3 not dividing u: subtracting 1/3 leaves a
      // numerator with 2-adic valuation exactly 2 under denominator 3^m,
      // which needs factor index 1 < m.
      result.witness = Rational(1, 3);
      result.tag = WitnessCase::residual_power_of_three;
    } else if (u > 0) {
      auto [prefix, was_three] = digit_prefix(u);
      result.witness = Rational(pow4(dec->n - 1) * prefix, 3);
      if (dec->n == 1)
        result.tag = was_three ? WitnessCase::digit_three : WitnessCase::digit_two;
      else
        result.tag = was_three ? WitnessCase::scaled_digit_three : WitnessCase::scaled_digit_two;
    } else {
      mpz_class v = force_odd_two_valuation(-u);
      result.witness = Rational(pow4(dec->n - 1) * v, 3);
      result.tag = dec->n == 1 ? WitnessCase::negative_digit_force
                               : WitnessCase::negative_scaled_digit_force;
    }
  }

  if (!is_member_gamma1(result.witness))
    throw std::logic_error("constructed witness " + result.witness.str() +
                           " is outside gamma_1");
  if (decompose_zero(x - result.witness, lam))
    throw std::logic_error("witness " + result.witness.str() + " for " + x.str() +
                           " failed the orthogonality oracle check");
  return result;
}

}  // namespace bconv
