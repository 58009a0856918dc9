#include "bconv/families.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bconv/errors.hpp"
#include "bconv/zero_oracle.hpp"

namespace bconv {

namespace {

const LambdaParam& three_quarters() {
  static const LambdaParam lam(3, 4);
  return lam;
}

mpz_class pow_mpz(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Binary counter read as a base-4 number: i -> sum over set bits j of 4^j.
// Strictly increasing in i, so it enumerates {0,1}-digit numbers ascending.
mpz_class spread_base4(std::size_t i) {
  mpz_class v = 0;
  for (int j = 0; i != 0; ++j, i >>= 1)
    if (i & 1) v += pow_mpz(4, j);
  return v;
}

// Ascending generator over one family's raw elements (pre-exclusion).
class Stream {
public:
  Stream(FamilyKind kind, int k, const LambdaParam& lambda) : kind_(kind), k_(k) {
    switch (kind_) {
      case FamilyKind::lambda_k:
        next_pow_ = pow_mpz(4, k_ - 1);
        denom_ = pow_mpz(3, k_);
        break;
      case FamilyKind::gamma_k:
        scale_ = pow_mpz(4, k_ - 1);
        denom_ = pow_mpz(3, k_);
        break;
      case FamilyKind::even_b:
        denom_ = 4 * lambda.a();
        next_pow_ = lambda.b();
        b_ = lambda.b();
        break;
      case FamilyKind::quarter_onb:
        break;
      default:
        throw std::logic_error("stream over non-generator family kind");
    }
  }

  Rational next() {
    std::size_t i = index_++;
    switch (kind_) {
      case FamilyKind::lambda_k: {
        if (i == 0) return Rational(0);
        Rational r(next_pow_, denom_);
        next_pow_ *= 4;
        return r;
      }
      case FamilyKind::gamma_k:
        return Rational(scale_ * spread_base4(i), denom_);
      case FamilyKind::even_b: {
        if (i == 0) return Rational(0);
        Rational r(next_pow_, denom_);
        next_pow_ *= b_;
        return r;
      }
      case FamilyKind::quarter_onb:
        return Rational(spread_base4(i), 4);
      default:
        throw std::logic_error("stream over non-generator family kind");
    }
  }

private:
  FamilyKind kind_;
  int k_;
  std::size_t index_ = 0;
  mpz_class next_pow_, denom_, scale_, b_;
};

}  // namespace

FrequencyFamily FrequencyFamily::lambda_family(int k) {
  if (k < 1) throw std::invalid_argument("lambda_k needs k >= 1");
  FrequencyFamily f(FamilyKind::lambda_k, three_quarters());
  f.k_ = k;
  return f;
}

FrequencyFamily FrequencyFamily::gamma_family(int k) {
  if (k < 1) throw std::invalid_argument("gamma_k needs k >= 1");
  FrequencyFamily f(FamilyKind::gamma_k, three_quarters());
  f.k_ = k;
  return f;
}

FrequencyFamily FrequencyFamily::even_b(const LambdaParam& lambda) {
  if (!lambda.b_even())
    throw std::domain_error("no infinite family construction for odd denominator " + lambda.str());
  return FrequencyFamily(FamilyKind::even_b, lambda);
}

FrequencyFamily FrequencyFamily::quarter_onb_family() {
  return FrequencyFamily(FamilyKind::quarter_onb, LambdaParam(1, 4));
}

FrequencyFamily FrequencyFamily::lambda_union(const std::vector<int>& ks) {
  if (ks.empty()) throw std::invalid_argument("lambda_union needs at least one k");
  for (int k : ks)
    if (k < 1) throw std::invalid_argument("lambda_union needs k >= 1");
  FrequencyFamily f(FamilyKind::lambda_union, three_quarters());
  f.ks_ = ks;
  std::sort(f.ks_.begin(), f.ks_.end());
  f.ks_.erase(std::unique(f.ks_.begin(), f.ks_.end()), f.ks_.end());
  return f;
}

FrequencyFamily FrequencyFamily::custom(std::vector<Rational> freqs, const LambdaParam& lambda) {
  FrequencyFamily f(FamilyKind::custom, lambda);
  std::sort(freqs.begin(), freqs.end());
  freqs.erase(std::unique(freqs.begin(), freqs.end()), freqs.end());
  f.custom_ = std::move(freqs);
  return f;
}

FrequencyFamily& FrequencyFamily::exclude(const std::vector<Rational>& freqs) {
  exclusions_.insert(exclusions_.end(), freqs.begin(), freqs.end());
  std::sort(exclusions_.begin(), exclusions_.end());
  exclusions_.erase(std::unique(exclusions_.begin(), exclusions_.end()), exclusions_.end());
  return *this;
}

FrequencyFamily& FrequencyFamily::translate(const Rational& c) {
  translation_ += c;
  return *this;
}

std::vector<Rational> FrequencyFamily::enumerate(std::size_t count) const {
  std::vector<Rational> out;
  if (count == 0) return out;
  out.reserve(count);
  auto excluded = [&](const Rational& r) {
    return std::binary_search(exclusions_.begin(), exclusions_.end(), r);
  };
  auto emit = [&](const Rational& r) {
    if (excluded(r)) return false;
    out.push_back(translation_.is_zero() ? r : r + translation_);
    return out.size() == count;
  };

  switch (kind_) {
    case FamilyKind::custom: {
      for (const Rational& r : custom_)
        if (emit(r)) return out;
      throw std::invalid_argument("custom family exhausted after " +
                                  std::to_string(out.size()) + " of " + std::to_string(count) +
                                  " requested elements");
    }
    case FamilyKind::lambda_union: {
      std::vector<Stream> streams;
      std::vector<Rational> heads;
      for (int k : ks_) {
        streams.emplace_back(FamilyKind::lambda_k, k, lambda_);
        heads.push_back(streams.back().next());
      }
      Rational last;
      bool first = true;
      while (true) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < heads.size(); ++i)
          if (heads[i] < heads[best]) best = i;
        Rational v = heads[best];
        heads[best] = streams[best].next();
        if (!first && v == last) continue;  // 0 is shared by every set
        first = false;
        last = v;
        if (emit(v)) return out;
      }
    }
    default: {
      Stream s(kind_, k_, lambda_);
      while (true)
        if (emit(s.next())) return out;
    }
  }
}

std::string FrequencyFamily::kind_name() const {
  switch (kind_) {
    case FamilyKind::lambda_k: return "lambda-k";
    case FamilyKind::gamma_k: return "gamma-k";
    case FamilyKind::even_b: return "even-b";
    case FamilyKind::quarter_onb: return "quarter-onb";
    case FamilyKind::lambda_union: return "lambda-union";
    case FamilyKind::custom: return "custom";
  }
  return "?";
}

std::string FrequencyFamily::metadata(std::size_t count) const {
  nlohmann::json j;
  j["kind"] = kind_name();
  if (kind_ == FamilyKind::lambda_k || kind_ == FamilyKind::gamma_k) j["k"] = k_;
  if (kind_ == FamilyKind::lambda_union) j["ks"] = ks_;
  j["lambda"] = lambda_.str();
  j["count"] = count;
  nlohmann::json ex = nlohmann::json::array();
  for (const Rational& r : exclusions_) ex.push_back(r.str());
  j["exclusions"] = ex;
  j["translation"] = translation_.str();
  return j.dump();
}

std::string serialize_family(const FrequencyFamily& family, std::size_t count) {
  std::string out = "# " + family.metadata(count) + "\n";
  for (const Rational& r : family.enumerate(count)) out += r.str() + "\n";
  return out;
}

std::vector<Rational> lambda_k(int k, std::size_t count) {
  if (k < 1) throw std::invalid_argument("lambda_k needs k >= 1");
  if (count == 0) throw std::invalid_argument("lambda_k needs count >= 1");
  return FrequencyFamily::lambda_family(k).enumerate(count);
}

std::vector<Rational> gamma_k(int k, int max_power) {
  if (k < 1) throw std::invalid_argument("gamma_k needs k >= 1");
  if (max_power < k - 1)
    throw std::invalid_argument("gamma_k needs max_power >= k-1");
  int positions = max_power - k + 2;
  if (positions > 26)
    throw resource_limit_error("gamma_k with " + std::to_string(positions) +
                               " digit positions enumerates 2^" + std::to_string(positions) +
                               " elements; keep max_power - k below 25");
  return FrequencyFamily::gamma_family(k).enumerate(std::size_t(1) << positions);
}

std::vector<Rational> even_b_family(const LambdaParam& lambda, std::size_t count) {
  return FrequencyFamily::even_b(lambda).enumerate(count + 1);
}

std::vector<Rational> quarter_onb(int max_power) {
  if (max_power < 0) throw std::invalid_argument("quarter_onb needs max_power >= 0");
  if (max_power > 25)
    throw resource_limit_error("quarter_onb with max_power " + std::to_string(max_power) +
                               " enumerates 2^" + std::to_string(max_power + 1) + " elements");
  return FrequencyFamily::quarter_onb_family().enumerate(std::size_t(1) << (max_power + 1));
}

LambdaClass classify_lambda(const LambdaParam& lambda) {
  if (lambda.b_even())
    return {LambdaVerdict::infinite_exists, FrequencyFamily::even_b(lambda)};
  return {LambdaVerdict::finite_only, std::nullopt};
}

namespace {

// Max clique, Tomita-style branch and bound with greedy coloring.
// Deterministic: vertices are visited in a fixed order and a new best is
// kept only when strictly larger.
class CliqueSearch {
public:
  explicit CliqueSearch(const std::vector<std::vector<bool>>& adj) : adj_(adj), n_(adj.size()) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> all(n_);
    for (std::size_t i = 0; i < n_; ++i) all[i] = i;
    expand(all);
    return best_;
  }

private:
  void expand(const std::vector<std::size_t>& cand) {
    if (cand.empty()) {
      if (cur_.size() > best_.size()) best_ = cur_;
      return;
    }
    // Greedy coloring; color numbers bound the clique size reachable from
    // each prefix of cand.
    std::vector<std::size_t> order;
    std::vector<std::size_t> color(cand.size());
    {
      std::vector<std::vector<std::size_t>> classes;
      for (std::size_t v : cand) {
        std::size_t c = 0;
        while (c < classes.size()) {
          bool clash = false;
          for (std::size_t u : classes[c])
            if (adj_[u][v]) {
              clash = true;
              break;
            }
          if (!clash) break;
          ++c;
        }
        if (c == classes.size()) classes.emplace_back();
        classes[c].push_back(v);
      }
      for (std::size_t c = 0; c < classes.size(); ++c)
        for (std::size_t v : classes[c]) {
          order.push_back(v);
          color[order.size() - 1] = c + 1;
        }
    }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (cur_.size() + color[i] <= best_.size()) return;
      std::size_t v = order[i];
      cur_.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t j = 0; j < i; ++j)
        if (adj_[v][order[j]]) next.push_back(order[j]);
      expand(next);
      cur_.pop_back();
    }
  }

  const std::vector<std::vector<bool>>& adj_;
  std::size_t n_;
  std::vector<std::size_t> cur_, best_;
};

}  // namespace

MaxSetResult max_set_search(const LambdaParam& lambda, unsigned long n_max, unsigned long k_max) {
  std::size_t raw = (n_max + 1) * (2 * k_max + 1);
  if (raw > 100000)
    throw resource_limit_error(
        "search window has " + std::to_string(raw) +
        " candidates (limit 100000); reduce n_max or k_max");

  std::set<Rational> uniq;
  for (unsigned long n = 0; n <= n_max; ++n) {
    Rational base(pow_mpz(lambda.b(), n), 4 * pow_mpz(lambda.a(), n));
    for (long k = -static_cast<long>(k_max); k <= static_cast<long>(k_max); ++k)
      uniq.insert(base * Rational(2 * k + 1));
  }
  std::vector<Rational> cand(uniq.begin(), uniq.end());

  std::vector<std::vector<bool>> adj(cand.size(), std::vector<bool>(cand.size(), false));
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (decompose_zero(cand[j] - cand[i], lambda)) adj[i][j] = adj[j][i] = true;

  std::vector<std::size_t> clique = CliqueSearch(adj).run();

  MaxSetResult result;
  result.n_max = n_max;
  result.k_max = k_max;
  result.candidate_count = cand.size();
  result.frequencies.push_back(Rational(0));  // 0 is adjacent to every candidate
  for (std::size_t v : clique) result.frequencies.push_back(cand[v]);
  std::sort(result.frequencies.begin(), result.frequencies.end());
  return result;
}

}  // namespace bconv
