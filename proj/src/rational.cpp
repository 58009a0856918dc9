#include "bconv/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace bconv {

namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

mpz_class parse_integer(std::string_view text) {
  std::string s = trim(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  try {
    return mpz_class(s);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad integer literal: '" + s + "'");
  }
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational Rational::parse(std::string_view text) {
  std::string s = trim(text);
  size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s), 1);
  return Rational(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  mpq_class q(x);
  return Rational(mpz_class(q.get_num()), mpz_class(q.get_den()));
}

Rational Rational::abs() const {
  Rational r = *this;
  if (r.num_ < 0) r.num_ = -r.num_;
  return r;
}

double Rational::to_double() const {
  mpq_class q;
  mpq_set_num(q.get_mpq_t(), num_.get_mpz_t());
  mpq_set_den(q.get_mpq_t(), den_.get_mpz_t());
  return q.get_d();
}

std::string Rational::str() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::invalid_argument("rational division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return num_ * o.den_ < o.num_ * den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational reduce(const mpz_class& num, const mpz_class& den) {
  return Rational(num, den);
}

unsigned long valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero is infinite");
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
    throw std::invalid_argument("valuation base must be prime, got " + p.get_str());
  mpz_class rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

namespace {

// Pollard rho (Brent cycle detection). n odd composite > 1.
mpz_class rho_factor(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1, diff;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x - y;
      if (diff < 0) diff = -diff;
      if (diff == 0) break;  // cycle without factor, retry with next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(mpz_class n, std::vector<PrimePower>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 32) != 0) {
    out.push_back({n, 1});
    return;
  }
  mpz_class d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<PrimePower> factorize(const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("factorize expects n >= 1");
  std::vector<PrimePower> out;
  mpz_class rest = n;
  auto strip = [&](const mpz_class& p) {
    mpz_class reduced;
    unsigned long e = mpz_remove(reduced.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    if (e > 0) {
      out.push_back({p, e});
      rest = reduced;
    }
  };
  strip(2);
  strip(3);
  for (unsigned long d = 5; rest > 1 && d <= 1000000 && mpz_class(d) * d <= rest; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (rest > 1) {
    std::vector<PrimePower> big;
    factor_into(rest, big);
    // merge equal primes from the recursive split
    for (auto& pp : big) {
      bool merged = false;
      for (auto& q : out)
        if (q.prime == pp.prime) {
          q.exponent += pp.exponent;
          merged = true;
        }
      if (!merged) out.push_back(pp);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& l, const PrimePower& r) { return l.prime < r.prime; });
  return out;
}

mpz_class DigitExpansion::value() const {
  mpz_class v = 0;
  for (size_t i = digits.size(); i-- > 0;) v = v * base + digits[i];
  return v;
}

DigitExpansion to_digits(const mpz_class& m, int base) {
  if (base < 2) throw std::invalid_argument("digit expansion needs base >= 2");
  if (m < 0) throw std::invalid_argument("digit expansion expects a nonnegative integer");
  DigitExpansion d;
  d.base = base;
  mpz_class rest = m;
  while (rest > 0) {
    d.digits.push_back(static_cast<int>(mpz_fdiv_ui(rest.get_mpz_t(), base)));
    rest /= base;
  }
  return d;
}

mpz_class from_digits(const DigitExpansion& d) {
  if (d.base < 2) throw std::invalid_argument("digit expansion needs base >= 2");
  for (int digit : d.digits)
    if (digit < 0 || digit >= d.base) throw std::invalid_argument("digit out of range for base");
  return d.value();
}

LambdaParam::LambdaParam(const mpz_class& a, const mpz_class& b) : a_(a), b_(b) {
  if (a_ <= 0 || b_ <= 0 || a_ >= b_)
    throw std::invalid_argument("lambda must satisfy 0 < a < b, got " + a_.get_str() + "/" +
                                b_.get_str());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
  if (g != 1)
    throw std::invalid_argument("lambda must be in reduced form, got " + a_.get_str() + "/" +
                                b_.get_str());
  a_factors_ = factorize(a_);
  b_factors_ = factorize(b_);
}

LambdaParam LambdaParam::parse(std::string_view text) {
  Rational r = Rational::parse(text);
  if (r.is_negative() || r.is_zero() || r.den() == 1)
    throw std::invalid_argument("lambda must lie strictly between 0 and 1, got " + r.str());
  return LambdaParam(r.num(), r.den());
}

std::string LambdaParam::str() const {
  return a_.get_str() + "/" + b_.get_str();
}

}  // namespace bconv
