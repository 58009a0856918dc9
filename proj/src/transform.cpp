#include "bconv/transform.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bconv {

namespace {

void validate(const EvalParams& p) {
  if (p.min_factors < 1) throw std::invalid_argument("min_factors must be >= 1");
  if (!(p.target_width > 0)) throw std::invalid_argument("target_width must be positive");
  if (p.precision < 16 || p.precision > 1 << 20)
    throw std::invalid_argument("precision out of range");
}

// Smallest usable N: the tail bound needs 2 pi lambda^N |t| <= 1/2, and the
// geometric tail sum should sit below the width target. Chosen with double
// arithmetic; soundness does not depend on the choice (the rigorous tail
// bound is evaluated afterwards and stays valid for any argument <= 1).
int choose_factor_count(double abs_t, double lambda, const EvalParams& p) {
  int n = p.min_factors;
  double budget = 0.5 * p.target_width * (1.0 - lambda * lambda);
  for (; n < 1000000; ++n) {
    double theta = 2.0 * M_PI * std::pow(lambda, n) * abs_t;
    if (theta <= 0.5 && theta * theta <= budget) break;
  }
  return n;
}

// Interval over mpfr with outward rounding.
class Ival {
public:
  explicit Ival(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
  }
  ~Ival() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }
  Ival(const Ival&) = delete;
  Ival& operator=(const Ival&) = delete;

  mpfr_ptr lo() { return lo_; }
  mpfr_ptr hi() { return hi_; }
  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }

  void set_ui(unsigned long v) {
    mpfr_set_ui(lo_, v, MPFR_RNDD);
    mpfr_set_ui(hi_, v, MPFR_RNDU);
  }

  // *this *= o, outward: min/max of the four endpoint products.
  void mul(const Ival& o, mpfr_prec_t prec) {
    mpfr_t cand_lo, cand_hi, tmp;
    mpfr_inits2(prec, cand_lo, cand_hi, tmp, nullptr);
    mpfr_mul(cand_lo, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(tmp, lo_, o.hi_, MPFR_RNDD);
    mpfr_min(cand_lo, cand_lo, tmp, MPFR_RNDD);
    mpfr_mul(tmp, hi_, o.lo_, MPFR_RNDD);
    mpfr_min(cand_lo, cand_lo, tmp, MPFR_RNDD);
    mpfr_mul(tmp, hi_, o.hi_, MPFR_RNDD);
    mpfr_min(cand_lo, cand_lo, tmp, MPFR_RNDD);

    mpfr_mul(cand_hi, lo_, o.lo_, MPFR_RNDU);
    mpfr_mul(tmp, lo_, o.hi_, MPFR_RNDU);
    mpfr_max(cand_hi, cand_hi, tmp, MPFR_RNDU);
    mpfr_mul(tmp, hi_, o.lo_, MPFR_RNDU);
    mpfr_max(cand_hi, cand_hi, tmp, MPFR_RNDU);
    mpfr_mul(tmp, hi_, o.hi_, MPFR_RNDU);
    mpfr_max(cand_hi, cand_hi, tmp, MPFR_RNDU);

    mpfr_set(lo_, cand_lo, MPFR_RNDD);
    mpfr_set(hi_, cand_hi, MPFR_RNDU);
    mpfr_clears(cand_lo, cand_hi, tmp, nullptr);
  }

private:
  mpfr_t lo_, hi_;
};

}  // namespace

Enclosure nu_hat(double t, const LambdaParam& lambda, const EvalParams& params) {
  validate(params);
  if (!std::isfinite(t)) throw std::invalid_argument("nu_hat needs a finite argument");

  const mpfr_prec_t prec = params.precision;
  const double lam_d = lambda.to_double();
  const int n_factors = choose_factor_count(std::fabs(t), lam_d, params);

  // 2 pi as an interval.
  Ival two_pi(prec);
  mpfr_const_pi(two_pi.lo(), MPFR_RNDD);
  mpfr_mul_ui(two_pi.lo(), two_pi.lo(), 2, MPFR_RNDD);
  mpfr_const_pi(two_pi.hi(), MPFR_RNDU);
  mpfr_mul_ui(two_pi.hi(), two_pi.hi(), 2, MPFR_RNDU);

  mpq_class r;          // lambda^n t, exact (t is dyadic)
  mpq_set_d(r.get_mpq_t(), t);
  mpq_class lam_q(lambda.a(), lambda.b());

  Ival prod(prec);
  prod.set_ui(1);

  Ival theta(prec), factor(prec);
  mpfr_t delta, tmp;
  mpfr_inits2(prec, delta, tmp, nullptr);

  for (int n = 0; n < n_factors; ++n) {
    // theta = 2 pi r with r exact; endpoint pairing depends on sign(r).
    if (sgn(r) >= 0) {
      mpfr_mul_q(theta.lo(), two_pi.lo(), r.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(theta.hi(), two_pi.hi(), r.get_mpq_t(), MPFR_RNDU);
    } else {
      mpfr_mul_q(theta.lo(), two_pi.hi(), r.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(theta.hi(), two_pi.lo(), r.get_mpq_t(), MPFR_RNDU);
    }
    // cos over the tiny interval: 1-Lipschitz widening around the left end.
    mpfr_sub(delta, theta.hi(), theta.lo(), MPFR_RNDU);
    mpfr_cos(factor.lo(), theta.lo(), MPFR_RNDD);
    mpfr_cos(factor.hi(), theta.lo(), MPFR_RNDU);
    mpfr_sub(factor.lo(), factor.lo(), delta, MPFR_RNDD);
    mpfr_add(factor.hi(), factor.hi(), delta, MPFR_RNDU);
    if (mpfr_cmp_si(factor.lo(), -1) < 0) mpfr_set_si(factor.lo(), -1, MPFR_RNDD);
    if (mpfr_cmp_si(factor.hi(), 1) > 0) mpfr_set_si(factor.hi(), 1, MPFR_RNDU);

    prod.mul(factor, prec);
    r *= lam_q;
  }

  // Tail product over n >= n_factors sits in [exp(-s), 1] with
  // s = (2 pi lambda^N t)^2 / (1 - lambda^2), rounded up.
  Ival tail(prec);
  mpq_class r_abs = abs(r);
  mpfr_mul_q(tmp, two_pi.hi(), r_abs.get_mpq_t(), MPFR_RNDU);
  mpfr_sqr(tmp, tmp, MPFR_RNDU);
  mpq_class one_minus_lam2 = 1 - lam_q * lam_q;
  mpfr_set_q(delta, one_minus_lam2.get_mpq_t(), MPFR_RNDD);
  mpfr_div(tmp, tmp, delta, MPFR_RNDU);
  mpfr_neg(tmp, tmp, MPFR_RNDD);
  mpfr_exp(tail.lo(), tmp, MPFR_RNDD);
  if (mpfr_sgn(tail.lo()) < 0) mpfr_set_zero(tail.lo(), 1);
  mpfr_set_ui(tail.hi(), 1, MPFR_RNDU);

  prod.mul(tail, prec);

  Enclosure out;
  out.lo = mpfr_get_d(prod.lo(), MPFR_RNDD);
  out.hi = mpfr_get_d(prod.hi(), MPFR_RNDU);
  mpfr_clears(delta, tmp, nullptr);
  return out;
}

Enclosure nu_hat_excluding_zero(double t, const LambdaParam& lambda, EvalParams params,
                                double width_floor) {
  Enclosure e = nu_hat(t, lambda, params);
  while (e.mag_lower() == 0.0 && params.target_width > width_floor) {
    params.target_width *= 1e-6;
    e = nu_hat(t, lambda, params);
  }
  return e;
}

Rational moment(unsigned k, const LambdaParam& lambda) {
  std::vector<Rational> m(k + 1);
  m[0] = Rational(1);
  Rational lam = lambda.value();
  std::vector<Rational> lam_pow(k + 1, Rational(1));
  for (unsigned j = 1; j <= k; ++j) lam_pow[j] = lam_pow[j - 1] * lam;

  for (unsigned i = 1; i <= k; ++i) {
    Rational sum(0);
    for (unsigned j = (i % 2); j < i; j += 2) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), i, j);
      sum += Rational(binom) * lam_pow[j] * m[j];
    }
    // ((-1)^{i-j} + 1) = 2 exactly on the terms kept above; the 1/2 cancels.
    m[i] = sum / (Rational(1) - lam_pow[i]);
  }
  return m[k];
}

double functional_equation_residual(double t, const LambdaParam& lambda,
                                    const EvalParams& params) {
  if (!std::isfinite(t)) throw std::invalid_argument("residual needs a finite argument");
  double lhs = nu_hat(t, lambda, params).mid();
  double rhs = std::cos(2.0 * M_PI * t) * nu_hat(lambda.to_double() * t, lambda, params).mid();
  return std::fabs(lhs - rhs);
}

double moment_series_check(double t, const LambdaParam& lambda, unsigned K,
                           const EvalParams& params) {
  if (!std::isfinite(t) || std::fabs(t) > 0.1 + 1e-15)
    throw std::invalid_argument("moment series check needs |t| <= 0.1");
  if (K % 2 != 0) throw std::invalid_argument("moment series check needs even K");

  double mid = nu_hat(t, lambda, params).mid();
  double series = 0.0;
  double theta2 = (2.0 * M_PI * t) * (2.0 * M_PI * t);
  double power = 1.0;       // (2 pi t)^{2j}
  double factorial = 1.0;   // (2j)!
  for (unsigned j = 0; 2 * j <= K; ++j) {
    if (j > 0) {
      power *= theta2;
      factorial *= (2.0 * j - 1.0) * (2.0 * j);
    }
    double term = power * moment(2 * j, lambda).to_double() / factorial;
    series += (j % 2 == 0) ? term : -term;
  }
  return std::fabs(mid - series);
}

}  // namespace bconv
