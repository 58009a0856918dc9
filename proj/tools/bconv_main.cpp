// bconv: exact orthogonality decisions, frequency family construction, and
// Parseval scans for Bernoulli convolution measures with rational scale.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bconv/errors.hpp"
#include "bconv/families.hpp"
#include "bconv/maximality.hpp"
#include "bconv/parseval.hpp"
#include "bconv/rational.hpp"
#include "bconv/transform.hpp"
#include "bconv/zero_oracle.hpp"

namespace {

using namespace bconv;

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const std::string& item : split_commas(s)) out.push_back(Rational::parse(item));
  return out;
}

std::pair<double, double> parse_range(const std::string& s) {
  size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must look like lo:hi, got '" + s + "'");
  return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
}

EvalParams eval_params_from_env() {
  EvalParams p;
  if (const char* env = std::getenv("BSPEC_PRECISION")) {
    int bits = std::atoi(env);
    if (bits > 0) p.precision = bits;
  }
  return p;
}

// Shared family flags for the `family` and `scan` subcommands.
struct FamilyOptions {
  std::string kind = "lambda-k";
  int k = 1;
  std::string ks;
  std::string lambda;
  std::string freqs;
  std::string exclude;
  std::string translate;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family,--kind", kind,
                    "lambda-k | gamma-k | even-b | quarter-onb | lambda-union | custom")
        ->capture_default_str();
    cmd->add_option("--k", k, "index for lambda-k / gamma-k")->capture_default_str();
    cmd->add_option("--ks", ks, "comma list of k for lambda-union");
    cmd->add_option("--freqs", freqs, "comma list of rationals for a custom family");
    cmd->add_option("--exclude", exclude, "comma list of excluded elements");
    cmd->add_option("--translate", translate, "rational added to every element");
  }

  FrequencyFamily build(const std::string& lambda_flag) const {
    auto lam = [&]() -> LambdaParam {
      if (!lambda_flag.empty()) return LambdaParam::parse(lambda_flag);
      throw std::invalid_argument("this family kind needs --lambda");
    };
    FrequencyFamily family = [&]() {
      if (kind == "lambda-k") return FrequencyFamily::lambda_family(k);
      if (kind == "gamma-k") return FrequencyFamily::gamma_family(k);
      if (kind == "even-b") return FrequencyFamily::even_b(lam());
      if (kind == "quarter-onb") return FrequencyFamily::quarter_onb_family();
      if (kind == "lambda-union") {
        std::vector<int> kk;
        for (const std::string& item : split_commas(ks)) kk.push_back(std::stoi(item));
        return FrequencyFamily::lambda_union(kk);
      }
      if (kind == "custom") return FrequencyFamily::custom(parse_rationals(freqs), lam());
      throw std::invalid_argument("unknown family kind '" + kind + "'");
    }();
    if (!exclude.empty()) family.exclude(parse_rationals(exclude));
    if (!translate.empty()) family.translate(Rational::parse(translate));
    return family;
  }
};

struct ScanFlags {
  FamilyOptions family;
  std::string lambda;
  std::string range = "0:2";
  double step = 0.005;
  int terms = 40;
  int factors = 40;
  int jobs = 0;
  bool contributions = false;
  std::string out;
  std::string svg;

  void attach(CLI::App* cmd) {
    family.attach(cmd);
    cmd->add_option("--lambda", lambda, "scale a/b for the transform (defaults to the family's)");
    cmd->add_option("--range", range, "grid range lo:hi")->capture_default_str();
    cmd->add_option("--step", step, "grid step")->capture_default_str();
    cmd->add_option("--terms", terms, "family elements summed")->capture_default_str();
    cmd->add_option("--factors", factors, "cosine factors per product")->capture_default_str();
    cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)");
    cmd->add_flag("--contributions", contributions, "emit the per-element breakdown");
    cmd->add_option("--out", out, "CSV output path (default: stdout)");
    cmd->add_option("--svg", svg, "also write an SVG line plot");
  }

  ScanConfig build() const {
    FrequencyFamily fam = family.build(lambda);
    LambdaParam lam = lambda.empty() ? fam.lambda() : LambdaParam::parse(lambda);
    ScanConfig config{fam, lam};
    auto [lo, hi] = parse_range(range);
    config.t_min = lo;
    config.t_max = hi;
    config.step = step;
    config.n_terms = terms;
    config.n_factors = factors;
    config.jobs = jobs;
    config.contributions = contributions;
    return config;
  }
};

void run_scan_to_files(const ScanConfig& config, const std::string& out, const std::string& svg) {
  std::vector<ScanRow> rows = scan(config);
  if (out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open '" + out + "' for writing");
    write_csv(os, rows);
  }
  if (!svg.empty()) {
    std::ofstream os(svg);
    if (!os) throw std::runtime_error("cannot open '" + svg + "' for writing");
    write_svg(os, rows);
  }
}

struct FigureSpec {
  std::string name;
  std::string flags;  // the exact scan flag set, for the log
  FrequencyFamily family;
};

std::vector<FigureSpec> figure_specs() {
  std::vector<FigureSpec> figs;
  figs.push_back({"fig1", "--family lambda-k --k 1", FrequencyFamily::lambda_family(1)});
  figs.push_back({"fig2", "--family lambda-union --ks 1,2 --exclude 1/3",
                  FrequencyFamily::lambda_union({1, 2}).exclude({Rational(1, 3)})});
  figs.push_back({"fig3", "--family lambda-union --ks 1,2,3 --exclude 1/3,4/3,4/9,16/3",
                  FrequencyFamily::lambda_union({1, 2, 3})
                      .exclude({Rational(1, 3), Rational(4, 3), Rational(4, 9),
                                Rational(16, 3)})});
  figs.push_back({"fig4", "--family gamma-k --k 1", FrequencyFamily::gamma_family(1)});
  return figs;
}

// Direct enumeration over the zero-set parametrization, used by selftest as
// an independent route: t is a member iff 4t (a/b)^n is an odd integer for
// some n up to the cap.
bool in_zero_set_direct(const Rational& t, const LambdaParam& lam, unsigned long n_cap) {
  if (t.is_zero()) return false;
  Rational m = t * Rational(4);
  Rational ratio(lam.a(), lam.b());
  for (unsigned long n = 0; n <= n_cap; ++n) {
    if (m.is_integer() && mpz_odd_p(m.num().get_mpz_t())) return true;
    m = m * ratio;
  }
  return false;
}

int run_selftest(unsigned long seed, int samples) {
  std::mt19937 rng(static_cast<unsigned>(seed));
  int failures = 0;

  {
    std::vector<LambdaParam> lambdas{{3, 4}, {3, 5}, {2, 3}, {5, 6}, {1, 4}};
    std::uniform_int_distribution<int> num(-2000, 2000);
    std::uniform_int_distribution<int> den(1, 400);
    std::uniform_int_distribution<size_t> pick(0, lambdas.size() - 1);
    int checked = 0;
    for (int i = 0; i < samples; ++i) {
      int n = num(rng);
      if (n == 0) continue;
      Rational t(n, den(rng));
      const LambdaParam& lam = lambdas[pick(rng)];
      bool direct = in_zero_set_direct(t, lam, 64);
      auto dec = decompose_zero(t, lam);
      bool mismatch = direct != dec.has_value();
      if (dec && dec->reconstruct(lam) != t) mismatch = true;
      if (mismatch) {
        ++failures;
        std::cerr << "selftest: decompose mismatch at t=" << t.str() << " lambda=" << lam.str()
                  << "\n";
      }
      ++checked;
    }
    std::cout << "selftest: " << checked << " decompose/direct agreements\n";
  }

  {
    LambdaParam lam(3, 4);
    std::uniform_int_distribution<int> nn(0, 4);
    std::uniform_int_distribution<long> kk(-1000, 1000);
    int checked = 0;
    for (int i = 0; i < samples; ++i) {
      ZeroDecomposition d;
      d.n = static_cast<unsigned long>(nn(rng));
      d.k = kk(rng);
      Rational x = d.reconstruct(lam);
      if (is_member_gamma1(x)) continue;
      try {
        WitnessResult w = non_orthogonal_witness(x);
        if (!is_member_gamma1(w.witness)) throw std::logic_error("witness outside gamma_1");
        ++checked;
      } catch (const std::exception& e) {
        ++failures;
        std::cerr << "selftest: witness failure at x=" << x.str() << ": " << e.what() << "\n";
      }
    }
    std::cout << "selftest: " << checked << " maximality witnesses confirmed\n";
  }

  {
    LambdaParam lam(3, 4);
    EvalParams params = eval_params_from_env();
    std::uniform_int_distribution<int> num(-1000, 1000);
    std::uniform_int_distribution<int> pw(0, 6);
    int checked = 0;
    for (int i = 0; i < samples / 5 + 1; ++i) {
      int n = num(rng);
      if (n == 0) continue;
      mpz_class den;
      mpz_pow_ui(den.get_mpz_t(), mpz_class(3).get_mpz_t(), pw(rng));
      Rational t(n, den);
      bool exact = decompose_zero(t, lam).has_value();
      bool numeric = nu_hat(t.to_double(), lam, params).mag_lower() <= 1e-8;
      if (exact != numeric) {
        ++failures;
        std::cerr << "selftest: oracle/numeric mismatch at t=" << t.str() << "\n";
      }
      ++checked;
    }
    std::cout << "selftest: " << checked << " oracle/numeric agreements\n";
  }

  if (failures) {
    std::cerr << "selftest: " << failures << " failure(s) with seed " << seed << "\n";
    return 1;
  }
  std::cout << "selftest: ok (seed " << seed << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal exponentials for Bernoulli convolution measures"};
  app.require_subcommand(1);
  int exit_code = 0;

  // check
  auto* cmd_check = app.add_subcommand("check", "decide orthogonality of a pair or a family");
  std::string check_lambda, check_pair, check_freqs;
  cmd_check->add_option("--lambda", check_lambda, "scale a/b")->required();
  cmd_check->add_option("--pair", check_pair, "two rationals l,l'");
  cmd_check->add_option("--freqs", check_freqs, "comma list of rationals");
  cmd_check->callback([&]() {
    LambdaParam lam = LambdaParam::parse(check_lambda);
    if (!check_pair.empty()) {
      std::vector<Rational> pair = parse_rationals(check_pair);
      if (pair.size() != 2) throw std::invalid_argument("--pair needs exactly two rationals");
      std::cout << (are_orthogonal(pair[0], pair[1], lam) ? "orthogonal" : "not-orthogonal")
                << "\n";
    } else if (!check_freqs.empty()) {
      OrthogonalityReport report = check_family(parse_rationals(check_freqs), lam);
      if (report.ok)
        std::cout << "ok\n";
      else
        std::cout << "violation " << report.violation->first.str() << ","
                  << report.violation->second.str() << "\n";
    } else {
      throw std::invalid_argument("check needs --pair or --freqs");
    }
  });

  // decompose
  auto* cmd_dec = app.add_subcommand("decompose", "zero-set membership with witness");
  std::string dec_lambda, dec_t;
  bool dec_all = false;
  cmd_dec->add_option("--lambda", dec_lambda, "scale a/b")->required();
  cmd_dec->add_option("--t", dec_t, "rational frequency")->required();
  cmd_dec->add_flag("--all", dec_all, "list every witness, not just minimal n");
  cmd_dec->callback([&]() {
    LambdaParam lam = LambdaParam::parse(dec_lambda);
    Rational t = Rational::parse(dec_t);
    if (dec_all) {
      auto all = decompose_zero_all(t, lam);
      if (all.empty()) {
        std::cout << "not-in-zero-set\n";
      } else {
        for (const auto& d : all)
          std::cout << "in-zero-set n=" << d.n << " k=" << d.k.get_str() << "\n";
      }
    } else {
      auto d = decompose_zero(t, lam);
      if (d)
        std::cout << "in-zero-set n=" << d->n << " k=" << d->k.get_str() << "\n";
      else
        std::cout << "not-in-zero-set\n";
    }
  });

  // family
  auto* cmd_family = app.add_subcommand("family", "enumerate a frequency family");
  FamilyOptions family_opts;
  std::string family_lambda;
  int family_count = 16;
  int family_max_power = -1;
  family_opts.attach(cmd_family);
  cmd_family->add_option("--lambda", family_lambda, "scale a/b (even-b / custom kinds)");
  cmd_family->add_option("--count", family_count, "elements to print")->capture_default_str();
  cmd_family->add_option("--max-power", family_max_power,
                         "full gamma-k / quarter-onb set up to this digit position");
  cmd_family->callback([&]() {
    FrequencyFamily fam = family_opts.build(family_lambda);
    std::size_t count = static_cast<std::size_t>(family_count);
    if (family_max_power >= 0) {
      if (fam.kind() == FamilyKind::gamma_k)
        count = gamma_k(fam.k(), family_max_power).size();
      else if (fam.kind() == FamilyKind::quarter_onb)
        count = quarter_onb(family_max_power).size();
      else
        throw std::invalid_argument("--max-power only applies to gamma-k / quarter-onb");
    }
    std::cout << serialize_family(fam, count);
  });

  // classify
  auto* cmd_classify = app.add_subcommand("classify", "infinite orthogonal families or not");
  std::string classify_lam_flag;
  cmd_classify->add_option("--lambda", classify_lam_flag, "scale a/b")->required();
  cmd_classify->callback([&]() {
    LambdaClass cls = classify_lambda(LambdaParam::parse(classify_lam_flag));
    if (cls.verdict == LambdaVerdict::infinite_exists) {
      std::cout << "infinite-exists\n";
      std::cout << "# witness " << cls.witness_family->metadata(8) << "\n";
    } else {
      std::cout << "finite-only\n";
    }
  });

  // search
  auto* cmd_search = app.add_subcommand("search", "maximum orthogonal set within a window");
  std::string search_lambda;
  unsigned long search_nmax = 3, search_kmax = 30;
  cmd_search->add_option("--lambda", search_lambda, "scale a/b")->required();
  cmd_search->add_option("--n-max", search_nmax, "power window bound")->capture_default_str();
  cmd_search->add_option("--k-max", search_kmax, "odd part window bound |k|")
      ->capture_default_str();
  cmd_search->callback([&]() {
    MaxSetResult r = max_set_search(LambdaParam::parse(search_lambda), search_nmax, search_kmax);
    std::cout << "# candidates=" << r.candidate_count << " n_max=" << r.n_max
              << " k_max=" << r.k_max << " exact-within-window="
              << (r.exact_within_window ? "yes" : "no") << " size=" << r.frequencies.size()
              << "\n";
    for (const Rational& f : r.frequencies) std::cout << f.str() << "\n";
  });

  // witness
  auto* cmd_witness = app.add_subcommand("witness", "gamma_1 maximality witness (scale 3/4)");
  std::string witness_x;
  cmd_witness->add_option("--x", witness_x, "rational outside gamma_1")->required();
  cmd_witness->callback([&]() {
    WitnessResult w = non_orthogonal_witness(Rational::parse(witness_x));
    std::cout << "gamma=" << w.witness.str() << " case=" << witness_case_name(w.tag) << "\n";
  });

  // nuhat
  auto* cmd_nuhat = app.add_subcommand("nuhat", "certified transform enclosure");
  std::string nuhat_lambda;
  double nuhat_t = 0.0;
  EvalParams nuhat_params = eval_params_from_env();
  cmd_nuhat->add_option("--lambda", nuhat_lambda, "scale a/b")->required();
  cmd_nuhat->add_option("--t", nuhat_t, "evaluation point")->required();
  cmd_nuhat->add_option("--min-factors", nuhat_params.min_factors)->capture_default_str();
  cmd_nuhat->add_option("--target-width", nuhat_params.target_width)->capture_default_str();
  cmd_nuhat->add_option("--precision", nuhat_params.precision)->capture_default_str();
  cmd_nuhat->callback([&]() {
    Enclosure e = nu_hat(nuhat_t, LambdaParam::parse(nuhat_lambda), nuhat_params);
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g] mid=%.17g width=%.3g", e.lo, e.hi, e.mid(),
                  e.width());
    std::cout << buf << "\n";
  });

  // moments
  auto* cmd_moments = app.add_subcommand("moments", "exact moments of the measure");
  std::string moments_lambda;
  unsigned moments_max_k = 8;
  cmd_moments->add_option("--lambda", moments_lambda, "scale a/b")->required();
  cmd_moments->add_option("--max-k", moments_max_k, "highest moment")->capture_default_str();
  cmd_moments->callback([&]() {
    LambdaParam lam = LambdaParam::parse(moments_lambda);
    for (unsigned k = 0; k <= moments_max_k; ++k)
      std::cout << k << " " << moment(k, lam).str() << "\n";
  });

  // scan
  auto* cmd_scan = app.add_subcommand("scan", "Parseval sum over a grid, CSV out");
  ScanFlags scan_flags;
  scan_flags.attach(cmd_scan);
  cmd_scan->callback([&]() {
    run_scan_to_files(scan_flags.build(), scan_flags.out, scan_flags.svg);
  });

  // peaks
  auto* cmd_peaks = app.add_subcommand("peaks", "strict local maxima of a scan CSV");
  std::string peaks_in;
  double peaks_threshold = 0.9;
  cmd_peaks->add_option("--in", peaks_in, "scan CSV path")->required();
  cmd_peaks->add_option("--threshold", peaks_threshold, "minimum q")->capture_default_str();
  cmd_peaks->callback([&]() {
    std::ifstream is(peaks_in);
    if (!is) throw std::runtime_error("cannot open '" + peaks_in + "'");
    std::vector<ScanRow> rows = read_csv(is);
    for (auto& [t, q] : peak_report(rows, peaks_threshold)) {
      char buf[80];
      std::snprintf(buf, sizeof buf, "%.12g,%.12g", t, q);
      std::cout << buf << "\n";
    }
  });

  // repro
  auto* cmd_repro = app.add_subcommand("repro", "write the four reference scans fig1..fig4.csv");
  std::string repro_dir = ".";
  int repro_jobs = 0;
  cmd_repro->add_option("--out-dir", repro_dir, "output directory")->capture_default_str();
  cmd_repro->add_option("--jobs", repro_jobs, "worker threads (0 = all cores)");
  cmd_repro->callback([&]() {
    std::filesystem::create_directories(repro_dir);
    for (FigureSpec& fig : figure_specs()) {
      std::string path = repro_dir + "/" + fig.name + ".csv";
      std::cout << fig.name << ".csv: scan " << fig.flags
                << " --lambda 3/4 --range 0:2 --step 0.005 --terms 40 --factors 40 --out "
                << path << "\n";
      ScanConfig config{fig.family, LambdaParam(3, 4)};
      config.jobs = repro_jobs;
      std::ofstream os(path);
      if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
      write_csv(os, scan(config));
    }
  });

  // selftest
  auto* cmd_selftest = app.add_subcommand("selftest", "randomized property battery");
  unsigned long selftest_seed = 12345;
  int selftest_samples = 200;
  cmd_selftest->add_option("--seed", selftest_seed, "RNG seed")->capture_default_str();
  cmd_selftest->add_option("--samples", selftest_samples, "samples per battery")
      ->capture_default_str();
  cmd_selftest->callback([&]() { exit_code = run_selftest(selftest_seed, selftest_samples); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
