#pragma once

#include <iosfwd>
#include <vector>

#include "bconv/families.hpp"
#include "bconv/rational.hpp"

namespace bconv {

/// Grid scan of the truncated Parseval sum
///   Q(t) = sum over the first n_terms family elements gamma of
///          (prod_{n < n_factors} cos(2 pi lambda^n (t - gamma)))^2.
/// Double precision throughout; certified enclosures are available per point
/// through nu_hat for spot checks.
struct ScanConfig {
  FrequencyFamily family;
  LambdaParam lambda;
  double t_min = 0.0;
  double t_max = 2.0;
  double step = 0.005;
  int n_terms = 40;
  int n_factors = 40;
  int jobs = 0;                 // 0 = one per hardware thread
  bool contributions = false;   // keep the per-gamma breakdown in each row
};

struct ScanRow {
  double t = 0.0;
  double q = 0.0;
  std::vector<double> contributions;
};

double parseval_sum(double t, const ScanConfig& config);

/// One row per grid point t_min + i*step, endpoints inclusive, ordered by t.
/// Rows are computed independently (grid partitioned across jobs) and the
/// result does not depend on the partitioning. Throws resource_limit_error
/// for grids above 10^7 points.
std::vector<ScanRow> scan(const ScanConfig& config);

/// Strict local maxima with q >= threshold, sorted by t. A plateau counts
/// once, at its smallest t. Throws for empty input.
std::vector<std::pair<double, double>> peak_report(const std::vector<ScanRow>& rows,
                                                   double threshold);

/// CSV: header "t,q" (plus ",q_0..q_{n-1}" with contributions), 12
/// significant digits per value.
void write_csv(std::ostream& os, const std::vector<ScanRow>& rows);
std::vector<ScanRow> read_csv(std::istream& is);

/// Minimal line plot: one polyline plus axes.
void write_svg(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace bconv
