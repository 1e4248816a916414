// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gr24/core.hpp"
#include "gr24/project.hpp"
#include "gr24/reconstruct.hpp"
#include "test_support.hpp"

using namespace gr24;
using namespace gr24::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Over 10,000 random rank-2 matrices, |defect| <= 1e-9 (max|entry|)^4; < 1 s.
Verdict laplace_identity() {
  Rng rng(1001);
  const auto start = Clock::now();
  double worst = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Matrix2x4 a = random_rank2_matrix(rng);
    const double e = a.max_abs();
    worst = std::max(worst, std::abs(plucker_defect(minors(a))) / (e * e * e * e));
  }
  const double t = seconds_since(start);
  return {worst <= 1e-9 && t < 1.0, fmt("worst |defect|/max^4 = %.3e, %.3f s", worst, t)};
}

// 1,000 random rank-2 matrices, every admissible pivot: canonical matrix is
// equivalent to A and exact matrix reproduces minors(A) within rel 1e-9; < 1 s.
Verdict reconstruction_round_trip() {
  Rng rng(1002);
  const Tolerance tol{};
  const auto start = Clock::now();
  int failures = 0, reconstructions = 0;
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix2x4 a = random_rank2_matrix(rng);
    const MinorSextuple m = minors(a);
    for (MinorPair p : kMinorPairs) {
      if (!(std::abs(m[p]) > tol.scale(m.max_abs()))) continue;
      ++reconstructions;
      if (!are_equivalent(a, reconstruct_canonical(m, Pivot{p}, tol), tol)) ++failures;
      const double err = max_abs_diff(minors(reconstruct_exact(m, Pivot{p}, tol)), m) / m.max_abs();
      worst = std::max(worst, err);
      if (err > 1e-9) ++failures;
    }
  }
  const double t = seconds_since(start);
  return {failures == 0 && t < 1.0,
          fmt("%d reconstructions, %d failures, worst rel minor error %.3e, %.3f s", reconstructions,
              failures, worst, t)};
}

// 1,000 (A, S) with |det S| in [0.1, 10]: minors(SA) = det S minors(A) within
// rel 1e-9 and recover_transform(A, SA) reproduces S within rel 1e-6.
Verdict determinant_factor() {
  Rng rng(1003);
  double worst_minor = 0, worst_s = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix2x4 a = random_rank2_matrix(rng);
    const Transform2x2 s = random_transform(rng, 0.1, 10);
    const Matrix2x4 b = s.apply(a);
    const MinorSextuple mb = minors(b);
    worst_minor = std::max(worst_minor, max_abs_diff(mb, minors(a).scaled(s.det())) / mb.max_abs());
    const Transform2x2 r = recover_transform(a, b);
    double ds = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) ds = std::max(ds, std::abs(r(i, j) - s(i, j)));
    worst_s = std::max(worst_s, ds / s.max_abs());
  }
  return {worst_minor <= 1e-9 && worst_s <= 1e-6,
          fmt("worst rel minor error %.3e, worst rel S error %.3e", worst_minor, worst_s)};
}

// 1,000 consistent sextuples with 5% noise: on-surface, Y - X = p X*, |p| < 1,
// |X - Y| <= 3 |noise|; hand cases exact; < 1 s.
Verdict projection_correctness() {
  Rng rng(1004);
  const auto start = Clock::now();
  int failures = 0;
  double worst_defect = 0, worst_normal = 0, worst_ratio = 0, worst_p = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const MinorSextuple clean = minors(random_rank2_matrix(rng));
    const double amp = 0.05 * clean.max_abs();
    auto v = clean.values();
    std::array<double, 6> noise{};
    for (std::size_t k = 0; k < 6; ++k) {
      noise[k] = uniform(rng, -amp, amp);
      v[k] += noise[k];
    }
    const MinorSextuple noisy = MinorSextuple::from_values(v);
    const ProjectionResult r = project(noisy);
    const PluckerVector y = to_plucker(noisy), x = to_plucker(r.corrected);
    const double mag = r.corrected.max_abs();
    const double defect = std::abs(r.defect_after) / (mag * mag);
    const PluckerVector resid = y - x - r.p * star(x);
    double normal = 0;
    for (double c : resid.x) normal = std::max(normal, std::abs(c));
    normal /= std::sqrt(dot(y, y));
    const double noise_norm = oracle::distance6(noise, {0, 0, 0, 0, 0, 0});
    const double ratio = std::sqrt(dot(y - x, y - x)) / noise_norm;
    worst_defect = std::max(worst_defect, defect);
    worst_normal = std::max(worst_normal, normal);
    worst_ratio = std::max(worst_ratio, ratio);
    worst_p = std::max(worst_p, std::abs(r.p));
    if (defect > 1e-9 || normal > 1e-8 || !(std::abs(r.p) < 1) || ratio > 3) ++failures;
  }

  // Plücker coordinates (2,1,0,0,0,0) -> (2,0,0,0,0,0) with p = 1/2.
  const ProjectionResult half = project(MinorSextuple{2, 0, 0, 0, 0, 1});
  const bool half_ok = half.p == 0.5 && half.corrected == MinorSextuple{2, 0, 0, 0, 0, 0};
  // (1,1,0,0,0,0): p = 1, no unique nearest point.
  bool degenerate_ok = false;
  try {
    project(MinorSextuple{1, 0, 0, 0, 0, 1});
  } catch (const Error& e) {
    degenerate_ok = e.code() == ErrorCode::DegenerateProjection;
  }
  const double t = seconds_since(start);
  return {failures == 0 && half_ok && degenerate_ok && t < 1.0,
          fmt("%d failures, worst defect %.2e, worst normal residual %.2e, worst |X-Y|/|noise| %.3f, "
              "max |p| %.3e, hand cases %s/%s, %.3f s",
              failures, worst_defect, worst_normal, worst_ratio, worst_p, half_ok ? "ok" : "FAIL",
              degenerate_ok ? "ok" : "FAIL", t)};
}

// 500 trials: minors scaled by an unknown constant plus 1% noise, projected
// and reconstructed; the result has rank 2 and its minors are proportional to
// those of A with residual <= 5x noise (the cross-determinant measure that
// are_equivalent thresholds); < 2 s.
Verdict pipeline_recovery() {
  Rng rng(1005);
  constexpr double kNoise = 0.01;
  const auto start = Clock::now();
  int failures = 0;
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix2x4 a = random_rank2_matrix(rng);
    const double sign = uniform(rng, 0, 1) < 0.5 ? -1.0 : 1.0;
    const double scale = sign * std::exp(uniform(rng, std::log(0.1), std::log(10.0)));
    const MinorSextuple m = minors(a).scaled(scale);
    const double amp = kNoise * m.max_abs();
    auto v = m.values();
    for (double& c : v) c += uniform(rng, -amp, amp);
    try {
      const ProjectionResult r = project(MinorSextuple::from_values(v));
      const Matrix2x4 rebuilt = reconstruct_exact(r.corrected, select_pivot(r.corrected));
      const double residual = proportionality_residual(minors(a), minors(rebuilt));
      worst = std::max(worst, residual);
      // Rank at the default tolerance; the noise budget applies to proportionality only.
      if (rank(rebuilt) != 2 || residual > 5 * kNoise) ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  const double t = seconds_since(start);
  return {failures == 0 && t < 2.0,
          fmt("%d failures, worst proportionality residual %.4f (limit %.2f), %.3f s", failures, worst,
              5 * kNoise, t)};
}

// 1,000 random rank-2 matrices: both rows and 10 combinations are in the span;
// 10 vectors with an orthogonal component are not.
Verdict span_membership() {
  Rng rng(1006);
  int false_negatives = 0, false_positives = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix2x4 a = random_rank2_matrix(rng);
    const MinorSextuple m = minors(a);
    if (!span_contains(m, a.row(0))) ++false_negatives;
    if (!span_contains(m, a.row(1))) ++false_negatives;
    for (int k = 0; k < 10; ++k)
      if (!span_contains(m, combine(a, uniform(rng, -5, 5), uniform(rng, -5, 5)))) ++false_negatives;
    for (int k = 0; k < 10; ++k) {
      std::array<double, 4> n{};
      for (double& c : n) c = uniform(rng, -1, 1);
      n = oracle::orthogonal_part(a, n);
      auto x = combine(a, uniform(rng, -1, 1), uniform(rng, -1, 1));
      for (int c = 0; c < 4; ++c) x[c] += 10 * n[c];
      if (span_contains(m, x)) ++false_positives;
    }
  }
  return {false_negatives == 0 && false_positives == 0,
          fmt("%d in-span rejected, %d out-of-span accepted", false_negatives, false_positives)};
}

struct ToolRun {
  int code = -1;
  std::string out;
};

ToolRun run_tool(const std::string& args) {
  const std::string cmd = "cd '" GR24_GOLDEN_DIR "/inputs' && '" GR24_TOOL "' " + args + " 2>/dev/null";
  ToolRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every golden case run twice: byte-identical output matching the golden file;
// all six subcommands and every documented error name covered.
Verdict cli_determinism() {
  namespace fs = std::filesystem;
  std::vector<fs::path> cases;
  for (const auto& entry : fs::directory_iterator(GR24_GOLDEN_DIR))
    if (entry.path().extension() == ".args") cases.push_back(entry.path());
  std::sort(cases.begin(), cases.end());

  int mismatches = 0;
  std::set<std::string> commands, errors;
  for (const fs::path& args_path : cases) {
    std::string args = slurp(args_path);
    while (!args.empty() && (args.back() == '\n' || args.back() == ' ')) args.pop_back();
    const ToolRun first = run_tool(args);
    const ToolRun second = run_tool(args);
    fs::path stem = args_path;
    const std::string expected = slurp(stem.replace_extension(".out"));
    const int expected_code = std::stoi(slurp(stem.replace_extension(".code")));
    if (first.out != second.out || first.code != second.code || first.out != expected ||
        first.code != expected_code) {
      ++mismatches;
      std::printf("       mismatch: %s\n", args_path.filename().c_str());
    }
    commands.insert(args.substr(0, args.find(' ')));
    const auto pos = first.out.find("\"error\": \"");
    if (pos != std::string::npos) {
      const auto begin = pos + 10;
      errors.insert(first.out.substr(begin, first.out.find('"', begin) - begin));
    }
  }
  const std::vector<std::string> want_commands{"minors", "check", "reconstruct", "project", "equivalent", "pipeline"};
  const std::vector<std::string> want_errors{"PluckerViolated", "DegenerateProjection", "RankDeficient",
                                             "NotEquivalent",   "ParseError",           "NonFiniteValue"};
  int missing = 0;
  for (const auto& c : want_commands) missing += commands.count(c) == 0;
  for (const auto& e : want_errors) missing += errors.count(e) == 0;
  return {!cases.empty() && mismatches == 0 && missing == 0,
          fmt("%zu golden cases, %d mismatches, %zu subcommands, %zu error names, %d required items missing",
              cases.size(), mismatches, commands.size(), errors.size(), missing)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"AC1 Laplace/Plücker identity", laplace_identity},
      {"AC2 reconstruction round-trip", reconstruction_round_trip},
      {"AC3 determinant factor and transform recovery", determinant_factor},
      {"AC4 projection correctness", projection_correctness},
      {"AC5 pipeline recovery", pipeline_recovery},
      {"AC6 span membership", span_membership},
      {"AC7 CLI determinism and golden files", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
