#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bconv/rational.hpp"

namespace bconv {

// The Fourier transform of the Bernoulli convolution with scale a/b vanishes
// exactly on the rationals of the form (1/4)(b/a)^n (2k+1), n >= 0, k integer.
// Membership in that set decides orthogonality of exponentials, so everything
// here is exact.

/// Witness that a rational lies in the zero set: the index n of the vanishing
/// cosine factor and the integer k of its odd part 2k+1.
struct ZeroDecomposition {
  unsigned long n = 0;
  mpz_class k;

  mpz_class odd_part() const { return 2 * k + 1; }

  /// (1/4)(b/a)^n (2k+1); equals the decomposed rational exactly.
  Rational reconstruct(const LambdaParam& lambda) const;
};

/// Decides whether t lies in the zero set for the given lambda and, if so,
/// returns the witness with minimal n. t = 0 is never in the set.
///
/// Write 4t = p/q reduced. Then t is in the set iff some n >= 0 makes
/// m = p a^n / (q b^n) an odd integer, and the feasible n form an interval
/// computed prime by prime:
///   - a prime of b dividing q kills every n;
///   - each prime r | b caps n at val_r(p) / val_r(b);
///   - each prime r | a dividing q forces n >= ceil(val_r(q) / val_r(a));
///   - a prime of q dividing neither a nor b kills every n;
///   - val_2(m) must be exactly 0, which pins n when a or b is even and is
///     independent of n when both are odd.
/// Every n in the resulting interval yields an odd integer m, so the minimal
/// witness is its left endpoint.
std::optional<ZeroDecomposition> decompose_zero(const Rational& t, const LambdaParam& lambda);

/// All witnesses (n, k) for t, ascending in n. More than one exists only when
/// both a and b are odd and powers of b divide the odd part.
std::vector<ZeroDecomposition> decompose_zero_all(const Rational& t, const LambdaParam& lambda);

/// exp(2 pi i l t) and exp(2 pi i l' t) are orthogonal in L2 of the measure
/// iff l - l' lies in the zero set. Throws for l == l'.
bool are_orthogonal(const Rational& l, const Rational& lp, const LambdaParam& lambda);

struct OrthogonalityReport {
  bool ok = true;
  std::optional<std::pair<Rational, Rational>> violation;
};

/// Checks all pairwise differences of a finite set of distinct frequencies.
/// On failure reports the first violating pair (l, l'), l < l', in ascending
/// scan order. Throws for duplicate entries.
OrthogonalityReport check_family(const std::vector<Rational>& freqs, const LambdaParam& lambda);

}  // namespace bconv
