#include "gausshor/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "gausshor/gauss_kernels.hpp"
#include "gausshor/report.hpp"
#include "gausshor/shor_gauss.hpp"
#include "gausshor/superposition.hpp"

namespace gausshor {

namespace {

struct RunConfig {
  std::string command;
  std::vector<std::int64_t> n;
  std::optional<int> q;
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
  std::string output_path;
  std::string format = "csv";
  bool allow_small_register = false;
  std::string kind = "g";
  std::int64_t n0 = 0;
  std::int64_t terms = 5;
  std::optional<std::int64_t> ell;
  std::string branch;
  std::string mode;
  std::string report = "all";
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Expands --config <file> into flags. Keys already given on the command line win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InvalidInput("--config needs a file");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file " + path);
  auto given = [&](const std::string& key) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (val.size() >= 2 && (val.front() == '"' || val.front() == '\'') && val.back() == val.front())
      val = val.substr(1, val.size() - 2);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "command") {
      if (args.size() < 2 || args[1].rfind("-", 0) == 0) args.insert(args.begin() + 1, val);
      continue;
    }
    if (given(key)) continue;
    if (key == "allow-small-register") {
      if (val == "true" || val == "1") args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(val);
  }
  return args;
}

std::string ell_annotation(std::int64_t ell, std::int64_t n) {
  const std::int64_t g = gcd_conv(ell % n, n);
  if (g == n) return "multiple-of-N";
  if (g > 1) return "factor-multiple";
  return "";
}

std::string n0_annotation(std::int64_t n0, std::int64_t n) {
  const std::int64_t g = gcd_conv(n0 % n, n);
  if (g == n) return "n0=0";
  if (g > 1) return "gcd=" + std::to_string(g);
  return "coprime";
}

// Halves even input down to its odd part.
std::int64_t reduce_even(std::int64_t n, Report& report, std::ostream& err) {
  if (n <= 0) throw InvalidInput("--n must be positive");
  const std::int64_t orig = n;
  while (n % 2 == 0) n /= 2;
  if (n != orig) {
    err << "note: n=" << orig << " is even; continuing with odd part " << n << '\n';
    report.meta.emplace_back("n_input", std::to_string(orig));
  }
  return n;
}

void add_scalar(Section& s, const std::string& name, double v) {
  s.records.push_back({static_cast<std::int64_t>(s.records.size()), v, name});
}

void add_driver(Report& report, const DriverResult& r) {
  Section& t = report.add_section("trials", SectionKind::Table);
  for (const auto& rec : r.records) {
    std::string ann = rec.note;
    if (rec.a_outcome) ann += ";a=" + std::to_string(*rec.a_outcome);
    if (rec.factor) ann += ";factor=" + std::to_string(*rec.factor);
    t.records.push_back({static_cast<std::int64_t>(rec.index), static_cast<double>(rec.b_outcome), ann});
  }
}

std::string driver_summary(const DriverResult& r) {
  return "factor=" + (r.success ? std::to_string(r.factor) : std::string("none")) +
         " trials=" + std::to_string(r.trials) + " seed=" + std::to_string(r.seed);
}

void add_distribution(Report& report, const std::string& name, const Distribution& d,
                      auto&& annotate) {
  Section& s = report.add_section(name, SectionKind::Distribution);
  s.records.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s.records.push_back({d.label(i), d.prob(i), annotate(d.label(i))});
}

// ---- commands -------------------------------------------------------------

int cmd_gauss_table(const RunConfig& cfg, Report& report, std::ostream& err) {
  const std::int64_t n = reduce_even(cfg.n.at(0), report, err);
  if (n < 3) throw InvalidInput("--n must have an odd part >= 3");
  report.meta.emplace_back("n", std::to_string(n));
  report.meta.emplace_back("kind", cfg.kind);
  if (cfg.kind == "w") report.meta.emplace_back("n0", std::to_string(cfg.n0));
  if (cfg.kind == "truncated") report.meta.emplace_back("terms", std::to_string(cfg.terms));

  std::vector<std::int64_t> ells;
  if (cfg.ell) {
    ells.push_back(*cfg.ell);
  } else {
    for (std::int64_t l = 1; l <= n; ++l) ells.push_back(l);
  }

  Section& s = report.add_section("gauss-table", SectionKind::Table);
  for (auto l : ells) {
    if (l < 0) throw InvalidInput("--ell must be nonnegative");
    Record r{l, 0.0, ell_annotation(l, n)};
    if (cfg.kind == "standard") {
      r.value = std::norm(eval_G(l, n));
    } else if (cfg.kind == "w") {
      if (cfg.n0 < 0) throw InvalidInput("--n0 must be nonnegative");
      r.value = std::norm(eval_W(cfg.n0, l, n));
    } else if (cfg.kind == "truncated") {
      r.value = std::norm(eval_truncated(l, n, cfg.terms));
      r.annotation = (l >= 1 && n % l == 0) ? "divisor" : "";
    } else {
      r.value = static_cast<double>(g_of(l, n));
    }
    s.records.push_back(std::move(r));
  }
  report.meta.emplace_back("value", cfg.kind == "g" ? "g" : "abs_sq");
  report.summary = "rows=" + std::to_string(s.records.size()) + " kind=" + cfg.kind + " n=" + std::to_string(n);
  return kExitOk;
}

Branch parse_branch(const std::string& text, const Semiprime& s) {
  if (text == "n" || text == "N") return {BranchKind::CaseN, s.n};
  if (text == "unit" || text == "1") return {BranchKind::CaseUnit, 1};
  if (text.rfind("factor", 0) == 0) {
    const std::string rest = text.substr(6);
    const std::int64_t f = rest.empty() ? s.p : std::stoll(rest);
    if (f != s.p && f != s.q) throw InvalidInput("--branch " + text + ": not a prime factor of " + std::to_string(s.n));
    return {BranchKind::CaseFactor, f};
  }
  throw InvalidInput("--branch must be n, unit, or factor<p>");
}

void add_peak_report(Report& report, const std::string& name, const PeakReport& pr) {
  {
    Section& peaks = report.add_section(name, SectionKind::Table);
    for (auto m : pr.positions) peaks.records.push_back({m, 0.0, "period=" + std::to_string(pr.period)});
  }
  Section& sum = report.add_section(name + "-summary", SectionKind::Table);
  add_scalar(sum, "period", static_cast<double>(pr.period));
  add_scalar(sum, "mass", pr.mass);
  add_scalar(sum, "dc", pr.dc);
  add_scalar(sum, "max_on_peak", pr.max_on_peak);
  add_scalar(sum, "min_on_peak", pr.min_on_peak);
  add_scalar(sum, "off_structure_mass", pr.off_structure_mass);
  add_scalar(sum, "max_off_structure", pr.max_off_structure);
  add_scalar(sum, "min_off_structure", pr.min_off_structure);
  add_scalar(sum, "height_ratio", pr.max_off_structure > 0 ? pr.max_on_peak / pr.max_off_structure : 0.0);
}

int cmd_shor_gauss(const RunConfig& cfg, Report& report, std::ostream& err) {
  const std::int64_t n = reduce_even(cfg.n.at(0), report, err);
  const Semiprime s = factor_semiprime(n);
  const int q = cfg.q.value_or(min_register_qubits(n));
  require_register(n, q, cfg.allow_small_register);
  const std::string mode = cfg.mode.empty() ? "qft" : cfg.mode;
  if (mode != "qft" && mode != "direct-read") throw InvalidInput("--mode must be qft or direct-read");
  report.meta.emplace_back("n", std::to_string(n));
  report.meta.emplace_back("q", std::to_string(q));
  report.meta.emplace_back("mode", mode);
  report.meta.emplace_back("seed", std::to_string(cfg.seed));
  report.meta.emplace_back("trials", std::to_string(cfg.trials));

  Section& br = report.add_section("branches", SectionKind::Distribution);
  for (const auto& b : branch_probs(s, q)) {
    const char* kind = b.branch.kind == BranchKind::CaseN      ? "case-N"
                       : b.branch.kind == BranchKind::CaseUnit ? "case-unit"
                                                               : "case-factor";
    br.records.push_back({b.branch.label, to_double(b.probability), std::string(kind) + ";exact=" + to_string(b.probability)});
  }

  std::vector<std::string> summary;
  if (!cfg.branch.empty()) {
    const Branch branch = parse_branch(cfg.branch, s);
    report.meta.emplace_back("branch", cfg.branch);
    const Distribution dist = probabilities(qft_vector(post_state(s, q, branch)));
    std::vector<std::int64_t> periods;
    if (branch.kind == BranchKind::CaseFactor) periods = {branch.label};
    if (branch.kind == BranchKind::CaseUnit) periods = {s.p, s.q};
    if (branch.kind == BranchKind::CaseN) periods = {s.n};

    std::map<std::int64_t, std::string> marks;
    for (auto m : peak_positions(s.n, q)) marks[m] = "m_N peak";
    for (auto period : periods) {
      const auto pos = peak_positions(period, q);
      for (std::size_t j = 0; j < pos.size(); ++j)
        marks[pos[j]] = "m_" + std::to_string(period) + " peak j=" + std::to_string(j + 1);
    }
    add_distribution(report, "qft", dist, [&](std::int64_t m) {
      auto it = marks.find(m);
      return it == marks.end() ? std::string() : it->second;
    });

    for (auto period : periods) {
      const PeakReport pr = analyze_peaks(dist, period, q, s.n);
      add_peak_report(report, "peaks-" + std::to_string(period), pr);
      summary.push_back("peak_mass_" + std::to_string(period) + "=" + format_value(pr.mass));
    }
    if (branch.kind != BranchKind::CaseN) {
      Section& bounds = report.add_section("bounds", SectionKind::Table);
      const PeakBounds b = peak_mass_bounds(s, branch.kind == BranchKind::CaseFactor ? branch.label : s.p);
      if (branch.kind == BranchKind::CaseFactor) {
        add_scalar(bounds, "factor_per_peak", to_double(b.factor_per_peak));
        add_scalar(bounds, "factor_total", to_double(b.factor_total));
        add_scalar(bounds, "factor_mn_per_peak", to_double(b.factor_mn_per_peak));
        add_scalar(bounds, "factor_mn_total", to_double(b.factor_mn_total));
      } else {
        add_scalar(bounds, "unit_per_peak_p", to_double(b.unit_per_peak_f));
        add_scalar(bounds, "unit_per_peak_q", to_double(b.unit_per_peak_other));
        add_scalar(bounds, "unit_per_peak_n", to_double(b.unit_per_peak_n));
        add_scalar(bounds, "unit_total", to_double(b.unit_total));
      }
    }
  }

  int code = kExitOk;
  if (cfg.trials > 0) {
    const DriverResult r = factor_driver(n, q, cfg.trials, cfg.seed,
                                         mode == "qft" ? TrialMode::Qft : TrialMode::DirectRead,
                                         cfg.allow_small_register);
    add_driver(report, r);
    summary.push_back(driver_summary(r));
    if (!r.success) code = kExitDriverFailure;
  }
  if (summary.empty()) summary.push_back("branches=4 q=" + std::to_string(q));
  for (std::size_t i = 0; i < summary.size(); ++i) report.summary += (i ? " " : "") + summary[i];
  return code;
}

void add_purity(Report& report, const ExactRun& run, std::vector<std::string>& summary) {
  const double measured = purity_a(run.psi2);
  const Rational closed = purity_closed(run.s);
  // Keep the N^2 denominator visible: 325/8281 rather than 25/637.
  const std::int64_t n2 = run.s.n * run.s.n;
  const std::string text = std::to_string((closed * n2).numerator()) + "/" + std::to_string(n2);
  Section& sec = report.add_section("purity", SectionKind::Table);
  add_scalar(sec, "measured", measured);
  add_scalar(sec, "closed=" + text, to_double(closed));
  summary.push_back("purity=" + format_value(measured) + " closed=" + text);
}

void add_truncated(Report& report, std::int64_t n, std::int64_t terms) {
  Section t{"truncated", SectionKind::Table, {}};
  Section g{"gauss-ratio", SectionKind::Table, {}};
  for (const auto& row : truncated_comparison(n, terms)) {
    const std::string ann = row.divides ? "divisor" : (row.factor_multiple ? "factor-multiple" : "");
    t.records.push_back({row.ell, row.truncated_abs, ann});
    g.records.push_back({row.ell, row.gauss_ratio, ann});
  }
  report.sections.push_back(std::move(t));
  report.sections.push_back(std::move(g));
}

int cmd_superposition(const RunConfig& cfg, Report& report, std::ostream& err) {
  const std::int64_t n = reduce_even(cfg.n.at(0), report, err);
  const Semiprime s = factor_semiprime(n);
  const std::string mode = cfg.mode.empty() ? "exact" : cfg.mode;
  const std::string& rep = cfg.report;
  static const std::vector<std::string> kReports = {"all", "pb", "conditional", "success", "purity", "truncated", "none"};
  if (std::find(kReports.begin(), kReports.end(), rep) == kReports.end())
    throw InvalidInput("--report must be one of all, pb, conditional, success, purity, truncated, none");
  auto want = [&](const char* r) { return rep == "all" || rep == r; };
  report.meta.emplace_back("n", std::to_string(n));
  report.meta.emplace_back("mode", mode);
  report.meta.emplace_back("report", rep);
  report.meta.emplace_back("seed", std::to_string(cfg.seed));
  report.meta.emplace_back("trials", std::to_string(cfg.trials));

  std::vector<std::string> summary;
  int code = kExitOk;
  if (mode == "exact") {
    const ExactRun run = run_exact(n);
    if (want("pb")) {
      add_distribution(report, "pb", p_b_distribution(run), [&](std::int64_t l) { return n0_annotation(l, n); });
      Section& ref = report.add_section("pb-closed", SectionKind::Table);
      for (std::int64_t n0 : {std::int64_t{0}, s.p, s.q, std::int64_t{1}}) {
        const Rational exact = p_b_closed(s, n0);
        const Rational printed = p_b_printed(s, n0);
        ref.records.push_back({n0, to_double(exact), n0_annotation(n0, n) + ";exact=" + to_string(exact) +
                                                         ";printed=" + to_string(printed)});
      }
    }
    if (want("conditional")) {
      if (cfg.n0 < 0 || cfg.n0 >= n) throw InvalidInput("--n0 must be in [0, N)");
      report.meta.emplace_back("n0", std::to_string(cfg.n0));
      add_distribution(report, "conditional", conditional_a(run.psi2, cfg.n0),
                       [&](std::int64_t l) { return ell_annotation(l, n); });
      Section& fm = report.add_section("factor-mass", SectionKind::Table);
      add_scalar(fm, "measured", factor_mass_a(run, cfg.n0));
      const Rational closed = factor_mass_closed(s, cfg.n0);
      add_scalar(fm, "closed=" + to_string(closed), to_double(closed));
    }
    if (want("success")) {
      const SuccessMass sm = success_mass(run);
      Section& sec = report.add_section("success", SectionKind::Table);
      add_scalar(sec, "p_b_zero", sm.p_b_zero);
      add_scalar(sec, "p_b_factor_multiple", sm.p_b_factor_multiple);
      add_scalar(sec, "p_b_coprime", sm.p_b_coprime);
      add_scalar(sec, "total_useful", sm.total_useful);
      add_scalar(sec, "printed_formula", useful_mass_printed(s));
      summary.push_back("useful=" + format_value(sm.total_useful));
    }
    if (want("purity")) add_purity(report, run, summary);
    if (want("truncated")) add_truncated(report, n, cfg.terms);
  } else if (mode == "qubit") {
    const int q = cfg.q.value_or(min_register_qubits(n));
    report.meta.emplace_back("q", std::to_string(q));
    if (rep == "purity" || rep == "success")
      throw InvalidInput("--report " + rep + " requires --mode exact");
    const QubitRun run = run_qubit(n, q);
    if (want("pb")) {
      add_distribution(report, "pb-prime", run.p_b, [&](std::int64_t k) {
        const auto j = nearest_peak_index(k, n, q);
        return j ? "peak j=" + std::to_string(*j) : std::string();
      });
      const double mass = qubit_peak_mass(run);
      Section& pm = report.add_section("peak-mass", SectionKind::Table);
      add_scalar(pm, "measured", mass);
      add_scalar(pm, "four_over_pi_sq", 4.0 / (std::numbers::pi * std::numbers::pi));
      summary.push_back("peak_mass=" + format_value(mass));
    }
    if (want("conditional")) {
      report.meta.emplace_back("n0", std::to_string(cfg.n0));
      const Distribution cond = conditional_after_peak(run, cfg.n0);
      add_distribution(report, "conditional", cond, [&](std::int64_t l) { return ell_annotation(l, n); });
      Section& fm = report.add_section("factor-mass", SectionKind::Table);
      add_scalar(fm, "measured", factor_mass(cond, n));
    }
    if (want("truncated")) add_truncated(report, n, cfg.terms);
  } else {
    throw InvalidInput("--mode must be exact or qubit");
  }

  if (cfg.trials > 0) {
    const int q = cfg.q.value_or(min_register_qubits(n));
    const DriverResult r = sample_factor_driver(
        n, mode == "exact" ? SuperpositionMode::Exact : SuperpositionMode::Qubit, q, cfg.trials, cfg.seed);
    add_driver(report, r);
    summary.push_back(driver_summary(r));
    if (!r.success) code = kExitDriverFailure;
  }
  if (summary.empty()) summary.push_back("n=" + std::to_string(n));
  for (std::size_t i = 0; i < summary.size(); ++i) report.summary += (i ? " " : "") + summary[i];
  return code;
}

int cmd_purity(const RunConfig& cfg, Report& report, std::ostream& err) {
  const std::int64_t n = reduce_even(cfg.n.at(0), report, err);
  report.meta.emplace_back("n", std::to_string(n));
  const ExactRun run = run_exact(n);
  std::vector<std::string> summary;
  add_purity(report, run, summary);
  report.summary = summary.front();
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, Report& report, std::ostream&) {
  std::vector<std::int64_t> list = cfg.n;
  if (list.empty()) list = {15, 21, 33, 35, 55, 77, 91};
  std::string joined;
  for (auto v : list) joined += (joined.empty() ? "" : ";") + std::to_string(v);
  report.meta.emplace_back("n", joined);

  Section purity{"purity", SectionKind::Table, {}};
  Section closed{"purity-closed", SectionKind::Table, {}};
  Section useful{"useful-mass", SectionKind::Table, {}};
  Section unit{"case-unit-probability", SectionKind::Table, {}};
  for (auto n : list) {
    const Semiprime s = factor_semiprime(n);
    const ExactRun run = run_exact(n);
    const Rational pc = purity_closed(s);
    purity.records.push_back({n, purity_a(run.psi2), ""});
    closed.records.push_back({n, to_double(pc), to_string(pc)});
    useful.records.push_back({n, success_mass(run).total_useful, ""});
    const int q = cfg.q.value_or(min_register_qubits(n));
    const Rational pu = branch_probs(s, q).back().probability;
    unit.records.push_back({n, to_double(pu), "q=" + std::to_string(q) + ";exact=" + to_string(pu)});
  }
  for (Section* sec : {&purity, &closed, &useful, &unit}) report.sections.push_back(std::move(*sec));
  report.summary = "rows=" + std::to_string(list.size());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Gauss-sum factoring simulator"};
  app.require_subcommand(1);

  std::int64_t n_single = 0;
  std::optional<std::int64_t> ell;
  int q_value = 0;

  auto common = [&](CLI::App* sub, bool with_trials) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", cfg.output_path, "Write the report to this file");
    if (with_trials) {
      sub->add_option("--trials", cfg.trials, "Driver trials (0 = no driver)");
      sub->add_option("--seed", cfg.seed, "64-bit seed");
    }
  };

  auto* gauss = app.add_subcommand("gauss-table", "Tabulate G, g, W, or the truncated sum over l");
  gauss->add_option("--n", n_single, "Modulus N")->required();
  gauss->add_option("--kind", cfg.kind)->check(CLI::IsMember({"standard", "w", "truncated", "g"}));
  gauss->add_option("--n0", cfg.n0, "Linear-phase shift for --kind w");
  gauss->add_option("--terms", cfg.terms, "Number of terms M for --kind truncated");
  auto* ell_opt = gauss->add_option("--ell", ell, "Single trial factor");
  common(gauss, false);

  auto* shor = app.add_subcommand("shor-gauss", "Shor-like algorithm with g(l, N)");
  shor->add_option("--n", n_single)->required();
  auto* shor_q = shor->add_option("--q", q_value, "Register qubits Q");
  shor->add_option("--branch", cfg.branch, "n, unit, or factor<p>");
  shor->add_option("--mode", cfg.mode, "qft or direct-read");
  shor->add_flag("--allow-small-register", cfg.allow_small_register, "Allow 2^Q <= N^2");
  common(shor, true);

  auto* sup = app.add_subcommand("superposition", "Superposition-of-Gauss-sums algorithm");
  sup->add_option("--n", n_single)->required();
  auto* sup_q = sup->add_option("--q", q_value, "Register qubits Q (qubit mode)");
  sup->add_option("--mode", cfg.mode, "exact or qubit");
  sup->add_option("--report", cfg.report);
  sup->add_option("--n0", cfg.n0, "B outcome to condition on");
  sup->add_option("--terms", cfg.terms, "Terms of the truncated sum");
  sup->add_flag("--allow-small-register", cfg.allow_small_register, "Accepted for symmetry; ignored");
  common(sup, true);

  auto* pur = app.add_subcommand("purity", "Purity of the entangled N x N state");
  pur->add_option("--n", n_single)->required();
  common(pur, false);

  auto* sweep = app.add_subcommand("sweep", "Batch summary over a list of semiprimes");
  sweep->add_option("--n", cfg.n, "Comma-separated list")->delimiter(',');
  auto* sweep_q = sweep->add_option("--q", q_value);
  common(sweep, false);

  try {
    const std::vector<std::string> args = merge_config(raw_args);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  if (*ell_opt) cfg.ell = ell;
  if (*shor_q || *sup_q || *sweep_q) cfg.q = q_value;
  if (!(*sweep)) cfg.n = {n_single};

  Report report;
  int code = kExitOk;
  try {
    if (*gauss) {
      report.command = "gauss-table";
      code = cmd_gauss_table(cfg, report, err);
    } else if (*shor) {
      report.command = "shor-gauss";
      code = cmd_shor_gauss(cfg, report, err);
    } else if (*sup) {
      report.command = "superposition";
      code = cmd_superposition(cfg, report, err);
    } else if (*pur) {
      report.command = "purity";
      code = cmd_purity(cfg, report, err);
    } else {
      report.command = "sweep";
      code = cmd_sweep(cfg, report, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  auto emit = [&](std::ostream& os) {
    if (cfg.format == "json")
      write_json(report, os);
    else
      write_csv(report, os);
  };
  if (cfg.output_path.empty()) {
    emit(out);
  } else {
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.output_path << '\n';
      return kExitInvalidInput;
    }
    emit(file);
    out << report.summary << '\n';
  }
  if (code == kExitDriverFailure) err << "driver exhausted its trials without a factor\n";
  return code;
}

}  // namespace gausshor
