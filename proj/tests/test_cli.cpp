// Exercises the installed command-line surface end to end through a shell.
// argv[1]: path to the bconv binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace {

int g_failures = 0;
std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = g_binary + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::cerr << "popen failed for: " << cmd << "\n";
    std::exit(1);
  }
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "[FAIL] " << what << "\n";
  }
}

void expect_output(const std::string& args, const std::string& want, int code = 0) {
  RunResult r = run(args);
  expect(r.exit_code == code,
         args + " exit code " + std::to_string(r.exit_code) + " != " + std::to_string(code));
  expect(r.out.find(want) != std::string::npos,
         args + " output '" + r.out + "' missing '" + want + "'");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-bconv>\n";
    return 1;
  }
  g_binary = argv[1];

  expect_output("check --lambda 3/4 --pair 1/3,4/3", "orthogonal");
  expect_output("check --lambda 3/4 --pair 1/3,4/9", "not-orthogonal");
  expect_output("check --lambda 3/4 --freqs 0,1/3,4/3,16/3", "ok");
  expect_output("check --lambda 3/4 --freqs 0,1/3,4/9", "violation 1/3,4/9");

  expect_output("decompose --lambda 3/4 --t 1/3", "in-zero-set n=1 k=0");
  expect_output("decompose --lambda 3/4 --t 2", "not-in-zero-set");
  expect_output("decompose --lambda 3/5 --t 25/12 --all", "in-zero-set n=2 k=1");

  expect_output("classify --lambda 2/3", "finite-only");
  expect_output("classify --lambda 3/4", "infinite-exists");

  expect_output("family --kind lambda-k --k 1 --count 4", "16/3");
  expect_output("family --kind gamma-k --k 1 --max-power 1", "5/3");
  expect_output("family --kind even-b --lambda 5/6 --count 3", "3/10");

  expect_output("witness --x 7/3", "gamma=1/3 case=digit-three");
  expect_output("witness --x 2/3", "gamma=0 case=not-orthogonal-to-zero");

  expect_output("search --lambda 3/5 --n-max 3 --k-max 30", "size=2");

  expect_output("moments --lambda 3/4 --max-k 2", "2 16/7");
  expect_output("nuhat --lambda 3/4 --t 0", "mid=1");

  // domain errors exit 1, usage errors exit 2
  expect(run("classify --lambda 4/3").exit_code == 1, "invalid lambda should exit 1");
  expect(run("family --kind even-b --lambda 2/3 --count 3").exit_code == 1,
         "odd denominator for even-b should exit 1");
  expect(run("frobnicate").exit_code == 2, "unknown subcommand should exit 2");
  expect(run("check --lambda 3/4").exit_code == 1, "check without pair/freqs should exit 1");
  expect(run("classify").exit_code == 2, "missing required flag should exit 2");

  // scan produces a parseable CSV and peaks reads it back
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bconv_cli_test";
  fs::create_directories(dir);
  fs::path csv = dir / "scan.csv";
  RunResult scan = run("scan --family lambda-k --k 1 --lambda 3/4 --range 0:2 --step 0.01 "
                       "--terms 40 --factors 40 --out " + csv.string());
  expect(scan.exit_code == 0, "scan exit code");
  {
    std::ifstream is(csv);
    std::string header;
    std::getline(is, header);
    expect(header == "t,q", "scan CSV header, got '" + header + "'");
    size_t lines = 0;
    std::string line;
    while (std::getline(is, line))
      if (!line.empty()) ++lines;
    expect(lines == 201, "scan CSV row count " + std::to_string(lines));
  }
  RunResult peaks = run("peaks --in " + csv.string() + " --threshold 0.9");
  expect(peaks.exit_code == 0, "peaks exit code");
  expect(peaks.out.find("0.33") != std::string::npos,
         "peaks output should contain one near 1/3, got: " + peaks.out);

  RunResult selftest = run("selftest --samples 60");
  expect(selftest.exit_code == 0, "selftest exit code");
  expect(selftest.out.find("selftest: ok") != std::string::npos, "selftest summary");

  fs::remove_all(dir);
  if (g_failures) {
    std::cerr << g_failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "cli: all checks passed\n";
  return 0;
}
