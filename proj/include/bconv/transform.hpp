#pragma once

#include "bconv/rational.hpp"

namespace bconv {

/// Closed interval certified to contain the true value of a truncated
/// infinite product (endpoints rounded outward).
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;

  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  /// Distance from 0 to the interval; 0 when the interval meets 0.
  double mag_lower() const { return lo > 0 ? lo : (hi < 0 ? -hi : 0.0); }
};

struct EvalParams {
  int min_factors = 1;          // lower bound on explicitly computed factors
  double target_width = 1e-10;  // desired enclosure width
  int precision = 128;          // working precision in bits
};

/// Certified evaluation of the transform product over cos(2 pi lambda^n t).
///
/// Picks N >= min_factors with 2 pi lambda^N |t| <= 1/2 (and small enough for
/// target_width), multiplies the first N factors in interval arithmetic, and
/// encloses the tail product in [exp(-(2 pi lambda^N t)^2 / (1 - lambda^2)), 1]:
/// each tail factor satisfies cos(theta) >= exp(-theta^2) for |theta| <= 1/2,
/// and the squared arguments sum to a closed-form geometric series.
Enclosure nu_hat(double t, const LambdaParam& lambda, const EvalParams& params = {});

/// nu_hat with adaptive refinement: tightens target_width until the enclosure
/// excludes 0 or the width target falls below width_floor. Values of the
/// product can be genuinely tiny (around 2^-N after N factors), so certifying
/// "nonzero" needs enclosures much narrower than any fixed tolerance.
Enclosure nu_hat_excluding_zero(double t, const LambdaParam& lambda, EvalParams params = {},
                                double width_floor = 1e-30);

/// Exact k-th moment of the measure, from the invariance identity
/// m_k (1 - lambda^k) = (1/2) sum_{j<k} C(k,j) lambda^j m_j ((-1)^{k-j} + 1).
/// m_0 = 1 and all odd moments vanish.
Rational moment(unsigned k, const LambdaParam& lambda);

/// |mid nu_hat(t) - cos(2 pi t) mid nu_hat(lambda t)|; the two sides use
/// independent truncations, so this doubles as a self-consistency metric.
double functional_equation_residual(double t, const LambdaParam& lambda,
                                    const EvalParams& params = {});

/// |mid nu_hat(t) - sum_{j<=K/2} (-1)^j (2 pi t)^{2j} m_{2j} / (2j)!| for
/// |t| <= 0.1 and even K. Cross-validates the product evaluation against the
/// exact moment recursion.
double moment_series_check(double t, const LambdaParam& lambda, unsigned K,
                           const EvalParams& params = {});

}  // namespace bconv
