#include "bconv/zero_oracle.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace bconv {

namespace {

unsigned long val_at(const mpz_class& n, const mpz_class& p) {
  if (n == 0) return 0;
  mpz_class rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

struct NWindow {
  unsigned long lo = 0;
  unsigned long hi = 0;
};

// Feasible n for m = p a^n / (q b^n) to be an odd integer, or nullopt.
std::optional<NWindow> feasible_window(const mpz_class& p, const mpz_class& q,
                                       const LambdaParam& lambda) {
  NWindow w;
  bool have_hi = false;

  for (const PrimePower& pp : lambda.b_factors()) {
    if (mpz_divisible_p(q.get_mpz_t(), pp.prime.get_mpz_t())) return std::nullopt;
    unsigned long cap = val_at(p, pp.prime) / pp.exponent;
    if (!have_hi || cap < w.hi) w.hi = cap;
    have_hi = true;
  }
  // b >= 2 always has a prime factor, so the window is bounded.
  if (!have_hi) throw std::logic_error("lambda denominator without prime factors");

  for (const PrimePower& pp : lambda.a_factors()) {
    unsigned long vq = val_at(q, pp.prime);
    if (vq > 0) w.lo = std::max(w.lo, (vq + pp.exponent - 1) / pp.exponent);
  }

  // Every prime of q must divide a (primes of b were rejected above).
  mpz_class qr = q;
  for (const PrimePower& pp : lambda.a_factors()) {
    mpz_class reduced;
    mpz_remove(reduced.get_mpz_t(), qr.get_mpz_t(), pp.prime.get_mpz_t());
    qr = reduced;
  }
  for (const PrimePower& pp : lambda.b_factors()) {
    mpz_class reduced;
    mpz_remove(reduced.get_mpz_t(), qr.get_mpz_t(), pp.prime.get_mpz_t());
    qr = reduced;
  }
  if (qr != 1) return std::nullopt;

  // val_2(m) = val_2(p) - val_2(q) + n (val_2(a) - val_2(b)) must be 0.
  unsigned long v2p = val_at(p, 2);
  unsigned long v2q = val_at(q, 2);
  if (lambda.b_even()) {
    unsigned long e2 = val_at(lambda.b(), 2);
    // v2q = 0 here: 2 | b and 2 | q was rejected above.
    if (v2p % e2 != 0) return std::nullopt;
    unsigned long pin = v2p / e2;
    if (pin < w.lo || pin > w.hi) return std::nullopt;
    w.lo = w.hi = pin;
  } else if (lambda.a_even()) {
    unsigned long e2 = val_at(lambda.a(), 2);
    if (v2q < v2p || (v2q - v2p) % e2 != 0) return std::nullopt;
    unsigned long pin = (v2q - v2p) / e2;
    if (pin < w.lo || pin > w.hi) return std::nullopt;
    w.lo = w.hi = pin;
  } else {
    if (v2p != 0 || v2q != 0) return std::nullopt;
  }

  if (w.lo > w.hi) return std::nullopt;
  return w;
}

ZeroDecomposition make_witness(const mpz_class& p, const mpz_class& q, const LambdaParam& lambda,
                               unsigned long n, const Rational& t) {
  mpz_class an, bn;
  mpz_pow_ui(an.get_mpz_t(), lambda.a().get_mpz_t(), n);
  mpz_pow_ui(bn.get_mpz_t(), lambda.b().get_mpz_t(), n);
  mpz_class numer = p * an;
  mpz_class denom = q * bn;
  if (!mpz_divisible_p(numer.get_mpz_t(), denom.get_mpz_t()))
    throw std::logic_error("zero-oracle window produced a non-integer odd part");
  mpz_class m = numer / denom;
  if (mpz_even_p(m.get_mpz_t()))
    throw std::logic_error("zero-oracle window produced an even odd part");
  ZeroDecomposition d;
  d.n = n;
  d.k = (m - 1) / 2;
  if (d.reconstruct(lambda) != t)
    throw std::logic_error("zero-oracle witness failed reconstruction");
  return d;
}

}  // namespace

Rational ZeroDecomposition::reconstruct(const LambdaParam& lambda) const {
  mpz_class an, bn;
  mpz_pow_ui(an.get_mpz_t(), lambda.a().get_mpz_t(), n);
  mpz_pow_ui(bn.get_mpz_t(), lambda.b().get_mpz_t(), n);
  return Rational(bn * odd_part(), 4 * an);
}

std::optional<ZeroDecomposition> decompose_zero(const Rational& t, const LambdaParam& lambda) {
  if (t.is_zero()) return std::nullopt;
  Rational x = t * Rational(4);
  auto w = feasible_window(x.num(), x.den(), lambda);
  if (!w) return std::nullopt;
  return make_witness(x.num(), x.den(), lambda, w->lo, t);
}

std::vector<ZeroDecomposition> decompose_zero_all(const Rational& t, const LambdaParam& lambda) {
  std::vector<ZeroDecomposition> out;
  if (t.is_zero()) return out;
  Rational x = t * Rational(4);
  auto w = feasible_window(x.num(), x.den(), lambda);
  if (!w) return out;
  for (unsigned long n = w->lo; n <= w->hi; ++n)
    out.push_back(make_witness(x.num(), x.den(), lambda, n, t));
  return out;
}

bool are_orthogonal(const Rational& l, const Rational& lp, const LambdaParam& lambda) {
  if (l == lp)
    throw std::invalid_argument("orthogonality of a function against itself is its norm");
  return decompose_zero(l - lp, lambda).has_value();
}

OrthogonalityReport check_family(const std::vector<Rational>& freqs, const LambdaParam& lambda) {
  std::vector<Rational> sorted = freqs;
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw std::invalid_argument("duplicate frequency " + sorted[i].str());

  OrthogonalityReport report;
  for (size_t i = 0; i < sorted.size(); ++i)
    for (size_t j = i + 1; j < sorted.size(); ++j)
      if (!decompose_zero(sorted[j] - sorted[i], lambda)) {
        report.ok = false;
        report.violation = {sorted[i], sorted[j]};
        return report;
      }
  return report;
}

}  // namespace bconv
