#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "bconv/transform.hpp"
#include "bconv/zero_oracle.hpp"

using namespace bconv;

namespace {

// Direct enumeration of the zero-set parametrization: t is a member iff
// 4t (a/b)^n equals an odd integer 2k+1 for some n <= n_max with |k| <= k_max.
// Independent of the valuation-based decision path.
std::optional<std::pair<unsigned long, mpz_class>> brute_force_member(
    const Rational& t, const LambdaParam& lam, unsigned long n_max, const mpz_class& k_max) {
  if (t.is_zero()) return std::nullopt;
  Rational m = t * Rational(4);
  Rational ratio(lam.a(), lam.b());
  for (unsigned long n = 0; n <= n_max; ++n) {
    if (m.is_integer() && mpz_odd_p(m.num().get_mpz_t())) {
      mpz_class k = (m.num() - 1) / 2;
      mpz_class k_abs = k < 0 ? mpz_class(-k) : k;
      if (k_abs <= k_max) return std::make_pair(n, k);
    }
    m = m * ratio;
  }
  return std::nullopt;
}

const LambdaParam& lam34() {
  static const LambdaParam lam(3, 4);
  return lam;
}

}  // namespace

TEST_CASE("decompose examples") {
  auto d = decompose_zero(Rational(1, 3), lam34());
  REQUIRE(d.has_value());
  CHECK(d->n == 1);
  CHECK(d->k == 0);

  CHECK_FALSE(decompose_zero(Rational(2), lam34()).has_value());

  d = decompose_zero(Rational(1), lam34());
  REQUIRE(d.has_value());
  CHECK(d->n == 1);
  CHECK(d->k == 1);

  CHECK_FALSE(decompose_zero(Rational(1, 9), lam34()).has_value());
  CHECK_FALSE(decompose_zero(Rational(4, 9) - Rational(1, 3), lam34()).has_value());
  CHECK_FALSE(decompose_zero(Rational(0), lam34()).has_value());
}

TEST_CASE("witness reconstruction is exact") {
  std::mt19937 rng(100);
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<long> den(1, 5000);
  std::vector<LambdaParam> lambdas{{3, 4}, {1, 4}, {3, 5}, {2, 3}, {5, 6}, {7, 8}};
  for (const LambdaParam& lam : lambdas)
    for (int i = 0; i < 500; ++i) {
      long n = num(rng);
      if (n == 0) continue;
      Rational t(n, den(rng));
      auto d = decompose_zero(t, lam);
      if (d) CHECK(d->reconstruct(lam) == t);
    }
}

TEST_CASE("brute force equivalence within the window") {
  std::mt19937 rng(101);
  mpz_class k_cap = 100000;

  SUBCASE("members generated from the parametrization") {
    // n <= 6 and |k| <= 1000 keep every minimal witness inside the
    // enumeration window n <= 12, |k| <= 10^5.
    std::uniform_int_distribution<unsigned long> nd(0, 6);
    std::uniform_int_distribution<long> kd(-1000, 1000);
    std::vector<LambdaParam> lambdas{{3, 4}, {3, 5}, {2, 3}, {5, 6}};
    for (const LambdaParam& lam : lambdas)
      for (int i = 0; i < 400; ++i) {
        ZeroDecomposition gen;
        gen.n = nd(rng);
        gen.k = kd(rng);
        Rational t = gen.reconstruct(lam);
        auto fast = decompose_zero(t, lam);
        REQUIRE(fast.has_value());
        auto slow = brute_force_member(t, lam, 12, k_cap);
        // the generated witness may not be minimal; the oracle's must be
        REQUIRE(slow.has_value());
        CHECK(fast->n == slow->first);
        CHECK(fast->k == slow->second);
        CHECK(fast->n <= gen.n);
      }
  }

  SUBCASE("random rationals, both directions") {
    std::uniform_int_distribution<long> num(-3000, 3000);
    std::uniform_int_distribution<long> den(1, 300);
    std::vector<LambdaParam> lambdas{{3, 4}, {3, 5}, {2, 3}, {5, 6}};
    for (const LambdaParam& lam : lambdas)
      for (int i = 0; i < 1000; ++i) {
        long n = num(rng);
        if (n == 0) continue;
        Rational t(n, den(rng));
        auto fast = decompose_zero(t, lam);
        auto slow = brute_force_member(t, lam, 64, mpz_class(1) << 128);
        CHECK(fast.has_value() == slow.has_value());
        if (fast && slow) CHECK(fast->n == slow->first);
      }
  }
}

TEST_CASE("multiple witnesses for odd/odd lambda") {
  // 25/12 = (1/4)(5/3)^1 * 5 = (1/4)(5/3)^2 * 3 for lambda = 3/5
  LambdaParam lam(3, 5);
  Rational t(25, 12);
  auto all = decompose_zero_all(t, lam);
  REQUIRE(all.size() == 2);
  CHECK(all[0].n == 1);
  CHECK(all[0].odd_part() == 5);
  CHECK(all[1].n == 2);
  CHECK(all[1].odd_part() == 3);
  for (const auto& w : all) CHECK(w.reconstruct(lam) == t);

  auto minimal = decompose_zero(t, lam);
  REQUIRE(minimal.has_value());
  CHECK(minimal->n == 1);

  // the 2-adic pin makes the witness unique whenever a or b is even
  auto unique34 = decompose_zero_all(Rational(1), lam34());
  CHECK(unique34.size() == 1);
}

TEST_CASE("are_orthogonal") {
  CHECK(are_orthogonal(Rational(1, 3), Rational(4, 3), lam34()));
  CHECK_FALSE(are_orthogonal(Rational(1, 3), Rational(4, 9), lam34()));
  // (1/4)(5/3)*7 = 35/12 against 0 for lambda = 3/5
  CHECK(are_orthogonal(Rational(0), Rational(35, 12), LambdaParam(3, 5)));
  CHECK_THROWS_AS(are_orthogonal(Rational(1, 3), Rational(1, 3), lam34()),
                  std::invalid_argument);
}

TEST_CASE("are_orthogonal symmetry, translation, odd scaling") {
  std::mt19937 rng(102);
  std::uniform_int_distribution<long> num(-400, 400);
  std::uniform_int_distribution<long> den(1, 60);
  std::uniform_int_distribution<long> odd(-30, 30);
  for (int i = 0; i < 600; ++i) {
    long dl = den(rng), dr = den(rng), dc = den(rng);
    Rational l(num(rng), dl), r(num(rng), dr), c(num(rng), dc);
    if (l == r) continue;
    bool base = are_orthogonal(l, r, lam34());
    CHECK(are_orthogonal(r, l, lam34()) == base);
    CHECK(are_orthogonal(l + c, r + c, lam34()) == base);
    long m = 2 * odd(rng) + 1;
    // odd scaling preserves membership (one direction)
    if (base) CHECK(are_orthogonal(l * Rational(m), r * Rational(m), lam34()));
  }
}

TEST_CASE("check_family") {
  LambdaParam lam = lam34();
  auto ok = check_family({Rational(0), Rational(1, 3), Rational(4, 3), Rational(16, 3)}, lam);
  CHECK(ok.ok);

  auto bad = check_family({Rational(0), Rational(1, 3), Rational(4, 9)}, lam);
  REQUIRE_FALSE(bad.ok);
  CHECK(bad.violation->first == Rational(1, 3));
  CHECK(bad.violation->second == Rational(4, 9));

  CHECK(check_family({Rational(0)}, lam).ok);
  CHECK(check_family({}, lam).ok);
  CHECK_THROWS_AS(check_family({Rational(1, 3), Rational(2, 6)}, lam), std::invalid_argument);
}

TEST_CASE("oracle agrees with certified numerics") {
  std::mt19937 rng(103);
  std::uniform_int_distribution<long> num(-1000, 1000);
  std::uniform_int_distribution<int> pw(0, 6);
  EvalParams params;
  for (int i = 0; i < 50; ++i) {
    long n = num(rng);
    if (n == 0) continue;
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 3, pw(rng));
    Rational t(n, den);
    bool exact = decompose_zero(t, lam34()).has_value();
    Enclosure e = nu_hat(t.to_double(), lam34(), params);
    if (exact)
      CHECK(e.mag_lower() <= 1e-8);
    else
      CHECK(e.mag_lower() > 1e-8);
  }
}
