#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bconv/rational.hpp"

namespace bconv {

/// Frequency sets whose exponentials are mutually orthogonal (or are being
/// tested for it). All built-in kinds enumerate ascending with 0 first.
///
///   lambda_k:     {0} u {4^j/3^k : j >= k-1}, scale 3/4
///   gamma_k:      {0} u {sum a_j 4^j / 3^k : a_j in {0,1}, j >= k-1}, scale 3/4
///   even_b:       {0} u {b^i/(4a) : i >= 1}, any reduced a/b with b even
///   quarter_onb:  {(1/4) sum a_i 4^i : a_i in {0,1}} u {0}, scale 1/4
///   lambda_union: ascending merge of several lambda_k sets
///   custom:       an explicit finite list
enum class FamilyKind { lambda_k, gamma_k, even_b, quarter_onb, lambda_union, custom };

class FrequencyFamily {
public:
  static FrequencyFamily lambda_family(int k);
  static FrequencyFamily gamma_family(int k);
  static FrequencyFamily even_b(const LambdaParam& lambda);
  static FrequencyFamily quarter_onb_family();
  static FrequencyFamily lambda_union(const std::vector<int>& ks);
  static FrequencyFamily custom(std::vector<Rational> freqs, const LambdaParam& lambda);

  /// Exclusions match exact pre-translation elements.
  FrequencyFamily& exclude(const std::vector<Rational>& freqs);
  FrequencyFamily& translate(const Rational& c);

  /// First `count` elements (exclusions skipped, translation applied).
  /// Throws when a finite custom list runs out.
  std::vector<Rational> enumerate(std::size_t count) const;

  FamilyKind kind() const { return kind_; }
  std::string kind_name() const;
  const LambdaParam& lambda() const { return lambda_; }
  int k() const { return k_; }
  const std::vector<int>& ks() const { return ks_; }
  const std::vector<Rational>& exclusions() const { return exclusions_; }
  const Rational& translation() const { return translation_; }

  /// One-line JSON metadata header used by the text serialization.
  std::string metadata(std::size_t count) const;

private:
  explicit FrequencyFamily(FamilyKind kind, const LambdaParam& lambda)
      : kind_(kind), lambda_(lambda) {}

  FamilyKind kind_;
  LambdaParam lambda_;
  int k_ = 0;
  std::vector<int> ks_;
  std::vector<Rational> custom_;
  std::vector<Rational> exclusions_;
  Rational translation_;
};

/// Writes the metadata header line followed by one "num/den" per element.
std::string serialize_family(const FrequencyFamily& family, std::size_t count);

/// {0, 4^{k-1}/3^k, ..., count elements in total}. Scale fixed at 3/4.
std::vector<Rational> lambda_k(int k, std::size_t count);

/// All of gamma_k with digit positions up to max_power, sorted ascending:
/// 2^(max_power - k + 2) elements including 0.
std::vector<Rational> gamma_k(int k, int max_power);

/// {0} followed by count elements b^i/(4a), i = 1..count. Requires b even.
std::vector<Rational> even_b_family(const LambdaParam& lambda, std::size_t count);

/// Candidate spectrum for scale 1/4: one quarter of every subset sum of
/// {4^0..4^max_power}. The 1/4 factor comes from the refinement identity
/// cos^2(2 pi t) + cos^2(2 pi (t - c)) = 1, which holds exactly for c an odd
/// multiple of 1/4; the integer-spaced variant is orthogonal too but its
/// Parseval sums fall visibly short of 1.
std::vector<Rational> quarter_onb(int max_power);

enum class LambdaVerdict { infinite_exists, finite_only };

struct LambdaClass {
  LambdaVerdict verdict;
  std::optional<FrequencyFamily> witness_family;
};

/// b even: a countably infinite orthogonal family exists (witness attached).
/// b odd: every orthogonal family is finite.
LambdaClass classify_lambda(const LambdaParam& lambda);

struct MaxSetResult {
  std::vector<Rational> frequencies;  // ascending, always contains 0
  unsigned long n_max = 0;
  unsigned long k_max = 0;
  std::size_t candidate_count = 0;
  bool exact_within_window = true;  // maximal among the window's candidates
};

/// Exhaustive search for a maximum-cardinality pairwise-orthogonal set
/// containing 0, over the candidates (1/4)(b/a)^n (2k+1) with n <= n_max and
/// |k| <= k_max. Exact within the window; no claim beyond it. Throws
/// resource_limit_error above 10^5 candidates.
MaxSetResult max_set_search(const LambdaParam& lambda, unsigned long n_max, unsigned long k_max);

}  // namespace bconv
