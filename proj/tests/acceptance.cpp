// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include <unistd.h>

#include "gausshor/cli.hpp"
#include "gausshor/gauss_kernels.hpp"
#include "gausshor/shor_gauss.hpp"
#include "gausshor/superposition.hpp"

using namespace gausshor;

namespace {

const std::vector<std::int64_t> kSemiprimes = {15, 21, 33, 35, 55, 77, 91};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome gauss_identity() {
  double worst = 0;
  int count = 0;
  for (std::int64_t n = 9; n <= 225; n += 2) {
    if (is_prime(n)) continue;
    for (std::int64_t l = 0; l < n; ++l) {
      const double err = std::abs(std::norm(eval_G(l, n)) - static_cast<double>(n * gcd_conv(l, n)));
      worst = std::max(worst, err / static_cast<double>(n * n));
      ++count;
    }
  }
  return {worst <= 1e-6, fmt("%d evaluations, max |err|/N^2 = %.3g (tol 1e-6)", count, worst)};
}

Outcome w_closed_form() {
  double worst = 0;
  for (auto n : kSemiprimes) {
    const Semiprime s = factor_semiprime(n);
    for (std::int64_t k = 0; k < n; ++k)
      for (std::int64_t l = 0; l < n; ++l)
        worst = std::max(worst, std::abs(std::norm(eval_W(k, l, n)) - to_double(closed_W_sq(k, l, s))));
  }
  const double sig = std::norm(eval_W(14, 7, 91));
  double zeros = 0;
  for (std::int64_t k = 0; k < 13; ++k) zeros = std::max(zeros, std::norm(eval_W(4, 7 * k, 91)));
  const bool ok = worst <= 1e-9 && std::abs(sig - 7.0 / 91) <= 1e-9 && zeros <= 1e-9;
  return {ok, fmt("max diff %.3g; |W_14(7)|^2 = %.12f (7/91 = %.12f); max |W_4(7k)|^2 = %.3g", worst, sig, 7.0 / 91, zeros)};
}

Outcome purity() {
  double worst = 0, worst_qft = 0;
  int count = 0;
  for (std::int64_t n = 15; n <= 255; n += 2) {
    Semiprime s;
    try {
      s = factor_semiprime(n);
    } catch (const SemiprimeError&) {
      continue;
    }
    const auto phased = apply_quadratic_phase(uniform_product(n, n), n);
    const double before = purity_a(phased);
    const double after = purity_a(qft_b(phased));
    worst = std::max(worst, std::abs(after - to_double(purity_closed(s))));
    worst_qft = std::max(worst_qft, std::abs(after - before));
    ++count;
  }
  const bool exact91 = purity_closed(Semiprime{91, 7, 13}) == Rational(325, 8281);
  return {worst <= 1e-9 && worst_qft <= 1e-9 && exact91,
          fmt("%d semiprimes, max |measured-closed| = %.3g, max QFT change = %.3g, closed(91) = %s", count, worst,
              worst_qft, to_string(purity_closed(Semiprime{91, 7, 13})).c_str())};
}

Outcome shor_peaks() {
  const Semiprime s{91, 7, 13};
  const auto dist = probabilities(qft_vector(post_state(s, 11, {BranchKind::CaseFactor, 7})));
  const auto r = analyze_peaks(dist, 7, 11, 91);
  const double bound = to_double(peak_mass_bounds(s, 7).factor_total);
  std::vector<std::int64_t> expect;
  for (std::int64_t j = 1; j < 7; ++j) expect.push_back(static_cast<std::int64_t>(std::floor(j * 2048.0 / 7 + 0.5)));
  const double ratio = r.max_on_peak / r.max_off_structure;
  return {r.positions == expect && r.mass >= bound && ratio >= 100,
          fmt("peaks %lld..%lld, mass %.5f >= %.5f, height ratio %.1f >= 100", static_cast<long long>(r.positions.front()),
              static_cast<long long>(r.positions.back()), r.mass, bound, ratio)};
}

Outcome unit_branch() {
  const Semiprime s{91, 7, 13};
  const auto dist = probabilities(qft_vector(post_state(s, 11, {BranchKind::CaseUnit, 1})));
  const auto rp = analyze_peaks(dist, 7, 11, 91);
  const auto rq = analyze_peaks(dist, 13, 11, 91);
  const auto b = peak_mass_bounds(s, 7);
  const double bp = to_double(b.unit_per_peak_f), bq = to_double(b.unit_per_peak_other);
  const double total = rp.mass + rq.mass;
  return {rp.min_on_peak >= bp && rq.min_on_peak >= bq && total < 0.15,
          fmt("min m_p bin %.6f >= %.6f, min m_q bin %.6f >= %.6f, total %.5f < 0.15", rp.min_on_peak, bp,
              rq.min_on_peak, bq, total)};
}

Outcome branch_statistics() {
  const Semiprime s{91, 7, 13};
  const int q = 14;
  const std::uint64_t trials = 100000;
  const ShorGaussDriver driver(91, q);
  std::map<std::int64_t, std::uint64_t> hits;
  for (std::uint64_t i = 0; i < trials; ++i) ++hits[driver.run_trial(2024, i).b_outcome];
  double worst_sigma = 0;
  for (const auto& b : branch_probs(s, q)) {
    const double p = to_double(b.probability);
    const double sd = std::sqrt(trials * p * (1 - p));
    worst_sigma = std::max(worst_sigma, std::abs(hits[b.branch.label] - trials * p) / sd);
  }
  const Rational unit11 = branch_probs(s, 11).back().probability;
  const double gap = std::abs(to_double(unit11) - 72.0 / 91);
  return {worst_sigma <= 3 && unit11 == Rational(1620, 2048) && gap <= 0.001,
          fmt("1e5 trials, worst deviation %.2f sigma; CaseUnit(Q=11) = %s vs 72/91, gap %.5f", worst_sigma,
              to_string(unit11).c_str(), gap)};
}

Outcome superposition_marginal() {
  const Semiprime s{91, 7, 13};
  const auto run = run_exact(91);
  const auto pb = p_b_distribution(run);
  const double d0 = std::abs(pb.prob_of(0) - 325.0 / 8281);
  const double d7 = std::abs(pb.prob_of(14) - 156.0 / 8281);
  const double d13 = std::abs(pb.prob_of(26) - 150.0 / 8281);
  const double d1 = std::abs(pb.prob_of(4) - 72.0 / 8281);
  const double useful = success_mass(run).total_useful;
  const double du = std::abs(useful - 3097.0 / 8281);
  const double worst = std::max({d0, d7, d13, d1, du});
  std::string printed;
  for (std::int64_t n0 : {0, 14, 26, 4}) printed += " " + to_string(p_b_printed(s, n0));
  return {worst <= 1e-9, fmt("max diff %.3g, useful %.6f; quoted formula gives%s (does not normalize)", worst,
                             useful, printed.c_str())};
}

Outcome conditional_masses() {
  const auto run = run_exact(91);
  const double d0 = std::abs(factor_mass_a(run, 0) - 162.0 / 325);
  const double d14 = std::abs(factor_mass_a(run, 14) - 84.0 / 156);
  double coprime = 0;
  for (std::int64_t n0 = 1; n0 < 91; ++n0)
    if (std::gcd(n0, std::int64_t{91}) == 1) coprime = std::max(coprime, factor_mass_a(run, n0));
  return {d0 <= 1e-9 && d14 <= 1e-9 && coprime < 1e-12,
          fmt("n0=0 diff %.3g, n0=14 diff %.3g, max coprime factor mass %.3g", d0, d14, coprime)};
}

Outcome qubit_variant() {
  Outcome o;
  for (auto [n, q] : std::vector<std::pair<std::int64_t, int>>{{21, 9}, {15, 9}, {33, 11}, {35, 11}}) {
    const double mass = qubit_peak_mass(run_qubit(n, q));
    o.pass = o.pass && mass >= 0.40 && mass <= 0.50;
    o.detail += fmt("(%lld,%d) %.4f ", static_cast<long long>(n), q, mass);
  }
  o.detail += fmt("in [0.40, 0.50]? 4/pi^2 = %.4f is a worst-case per-peak bound", 4 / (std::numbers::pi * std::numbers::pi));
  return o;
}

Outcome end_to_end() {
  int failures = 0;
  std::uint64_t worst_shor = 0, worst_sup = 0;
  for (std::int64_t n : {15, 21, 35, 91}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto a = factor_driver(n, min_register_qubits(n), 200, seed);
      const auto b = sample_factor_driver(n, SuperpositionMode::Exact, 0, 100, seed);
      failures += !a.success + !b.success;
      if (a.success) worst_shor = std::max(worst_shor, a.trials);
      if (b.success) worst_sup = std::max(worst_sup, b.trials);
    }
  }
  return {failures == 0, fmt("%d failures over 80 runs; max trials used: shor-gauss %llu, superposition %llu", failures,
                             static_cast<unsigned long long>(worst_shor), static_cast<unsigned long long>(worst_sup))};
}

Outcome reconstruction() {
  int checked = 0, wrong = 0;
  for (auto n : kSemiprimes) {
    const Semiprime s = factor_semiprime(n);
    const int q = min_register_qubits(n);
    for (std::int64_t f : {s.p, s.q}) {
      const auto pos = peak_positions(f, q);
      for (std::int64_t j = 1; j < f; ++j) {
        if (std::gcd(j, f) != 1) continue;
        ++checked;
        wrong += recover_divisor(pos[j - 1], q, n).gcd_with_n != f;
      }
    }
  }
  return {wrong == 0 && checked > 0, fmt("%d peak positions, %d wrong", checked, wrong)};
}

std::vector<std::vector<std::string>> cli_suite() {
  return {
      {"gauss-table", "--n", "35", "--kind", "g"},
      {"gauss-table", "--n", "91", "--kind", "w", "--n0", "4"},
      {"gauss-table", "--n", "91", "--kind", "standard"},
      {"gauss-table", "--n", "21", "--kind", "truncated", "--terms", "5", "--format", "json"},
      {"shor-gauss", "--n", "91", "--q", "11", "--branch", "factor7", "--allow-small-register"},
      {"shor-gauss", "--n", "91", "--q", "11", "--branch", "unit", "--allow-small-register", "--format", "json"},
      {"shor-gauss", "--n", "91", "--q", "14", "--trials", "200", "--seed", "1"},
      {"shor-gauss", "--n", "35", "--trials", "50", "--seed", "5", "--mode", "direct-read"},
      {"superposition", "--n", "91", "--mode", "exact", "--trials", "1000", "--seed", "7"},
      {"superposition", "--n", "21", "--mode", "qubit", "--q", "9", "--n0", "24", "--trials", "50", "--seed", "3"},
      {"purity", "--n", "91"},
      {"sweep", "--format", "json"},
  };
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const auto base = std::filesystem::temp_directory_path() / ("gausshor_accept_" + std::to_string(::getpid()));
  const auto suite = cli_suite();
  std::vector<std::string> bytes[2];
  for (int pass = 0; pass < 2; ++pass) {
    const auto dir = base / std::to_string(pass);
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < suite.size(); ++i) {
      std::vector<std::string> args{"gausshor"};
      args.insert(args.end(), suite[i].begin(), suite[i].end());
      const auto file = dir / ("out" + std::to_string(i));
      args.push_back("--output");
      args.push_back(file.string());
      std::ostringstream out, err;
      if (run_cli(args, out, err) != kExitOk) return {false, "command " + std::to_string(i) + " failed: " + err.str()};
      bytes[pass].push_back(slurp(file));
    }
  }
  std::filesystem::remove_all(base);
  std::size_t total = 0, differ = 0;
  for (std::size_t i = 0; i < bytes[0].size(); ++i) {
    total += bytes[0][i].size();
    differ += bytes[0][i] != bytes[1][i] || bytes[0][i].empty();
  }
  return {differ == 0, fmt("%zu files, %zu bytes per run, %zu differ", bytes[0].size(), total, differ)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gauss-sum identity", gauss_identity},
      {"shifted-sum closed form", w_closed_form},
      {"purity", purity},
      {"shor-gauss factor-branch peaks", shor_peaks},
      {"shor-gauss unit-branch bounds", unit_branch},
      {"branch statistics", branch_statistics},
      {"superposition marginal", superposition_marginal},
      {"conditional masses", conditional_masses},
      {"qubit-register peak mass", qubit_variant},
      {"end-to-end factoring", end_to_end},
      {"rational reconstruction", reconstruction},
      {"cli determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
