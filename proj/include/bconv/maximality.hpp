#pragma once

#include <string>

#include "bconv/rational.hpp"

namespace bconv {

// Constructive maximality of the gamma_1 family at scale 3/4: every rational
// outside gamma_1 has a witness inside it whose exponential fails to be
// orthogonal. Which construction produced the witness:
enum class WitnessCase {
  not_orthogonal_to_zero,  // x outside the zero set; gamma = 0 already works
  quarter_denominator,     // x = odd/4 (factor index 0); gamma = 1/3
  digit_two,               // x = m/3, first base-4 digit of m >= 2 is a 2
  digit_three,             // x = m/3, first base-4 digit of m >= 2 is a 3
  residual_power_of_three,     // x = 4^{n-1} u / 3^m, m > 1 after canceling; gamma = 1/3
  scaled_digit_two,            // x = 4^{n-1} u / 3: digit construction shifted by 4^{n-1}
  scaled_digit_three,
  negative_digit_force,        // x = -w/3: gamma forces odd 2-adic valuation of x - gamma
  negative_scaled_digit_force,
};

std::string witness_case_name(WitnessCase c);

struct WitnessResult {
  Rational witness;  // element of gamma_1, non-orthogonal to the input
  WitnessCase tag = WitnessCase::not_orthogonal_to_zero;
};

/// True iff x = m/3 for a nonnegative integer m whose base-4 digits are all
/// 0 or 1 (this includes x = 0).
bool is_member_gamma1(const Rational& x);

/// For x outside gamma_1, produces gamma in gamma_1 with exp(2 pi i x t) not
/// orthogonal to exp(2 pi i gamma t) at scale 3/4. The result is re-checked
/// against the exact zero-set oracle on every call; a failed check throws
/// std::logic_error. Throws std::invalid_argument when x is in gamma_1.
WitnessResult non_orthogonal_witness(const Rational& x);

}  // namespace bconv
