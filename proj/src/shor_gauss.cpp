#include "gausshor/shor_gauss.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "gausshor/gauss_kernels.hpp"

namespace gausshor {

namespace {

using i128 = __int128;

std::int64_t reg_size(int q) { return std::int64_t{1} << q; }

std::int64_t round_half_up(std::int64_t num, std::int64_t den) {
  return static_cast<std::int64_t>((2 * static_cast<i128>(num) + den) / (2 * static_cast<i128>(den)));
}

std::vector<Complex> normalized_indicator(std::int64_t size, auto&& keep) {
  std::vector<Complex> v(size);
  std::int64_t count = 0;
  for (std::int64_t l = 0; l < size; ++l) {
    if (keep(l)) {
      v[l] = 1.0;
      ++count;
    }
  }
  if (count == 0) throw InvalidInput("post_state: branch has empty support");
  const double a = 1.0 / std::sqrt(static_cast<double>(count));
  for (auto& z : v) z *= a;
  return v;
}

}  // namespace

int min_register_qubits(std::int64_t n) {
  const i128 n2 = static_cast<i128>(n) * n;
  int q = 1;
  while ((i128{1} << q) <= n2) ++q;
  return q;
}

void require_register(std::int64_t n, int q, bool allow_small_register) {
  if (q < 1 || q > 40) throw InvalidInput("register size Q must be in [1, 40]");
  if (n < 3) throw InvalidInput("N must be >= 3");
  const i128 n2 = static_cast<i128>(n) * n;
  if ((i128{1} << q) <= n2 && !allow_small_register)
    throw InvalidInput("2^Q = " + std::to_string(reg_size(q)) + " does not exceed N^2 = " +
                       std::to_string(static_cast<std::int64_t>(n2)) +
                       "; pass --allow-small-register to override");
}

BipartiteState build_state(std::int64_t n, int q, bool allow_small_register, std::size_t cap) {
  require_register(n, q, allow_small_register);
  const std::int64_t size = reg_size(q);

  std::vector<std::int64_t> g(size);
  std::set<std::int64_t> values;
  for (std::int64_t l = 0; l < size; ++l) {
    g[l] = gcd_conv(l % n, n);
    values.insert(g[l]);
  }
  const std::vector<std::int64_t> labels(values.begin(), values.end());
  check_cap(size, labels.size(), cap);

  const std::size_t db = labels.size();
  std::vector<Complex> amps(size * db);
  const double a = 1.0 / std::sqrt(static_cast<double>(size));
  for (std::int64_t l = 0; l < size; ++l) {
    const auto idx = std::lower_bound(labels.begin(), labels.end(), g[l]) - labels.begin();
    amps[l * db + idx] = a;
  }
  return BipartiteState(size, db, std::move(amps), labels);
}

std::vector<BranchOutcome> branch_probs(const Semiprime& s, int q) {
  const std::int64_t size = reg_size(q);
  const std::int64_t mn = count_upper(size, s.n);
  const std::int64_t mp = count_upper(size, s.p);
  const std::int64_t mq = count_upper(size, s.q);
  return {
      {{BranchKind::CaseN, s.n}, Rational(mn, size)},
      {{BranchKind::CaseFactor, s.p}, Rational(mp - mn, size)},
      {{BranchKind::CaseFactor, s.q}, Rational(mq - mn, size)},
      {{BranchKind::CaseUnit, 1}, Rational(size - mp - mq + mn, size)},
  };
}

std::vector<Complex> post_state(const Semiprime& s, int q, Branch branch) {
  const std::int64_t size = reg_size(q);
  switch (branch.kind) {
    case BranchKind::CaseN:
      return normalized_indicator(size, [&](std::int64_t l) { return l % s.n == 0; });
    case BranchKind::CaseFactor: {
      const std::int64_t f = branch.label;
      if (f != s.p && f != s.q) throw InvalidInput("post_state: " + std::to_string(f) + " is not a factor");
      return normalized_indicator(size, [&](std::int64_t l) { return l % f == 0 && l % s.n != 0; });
    }
    case BranchKind::CaseUnit:
      return normalized_indicator(size, [&](std::int64_t l) { return l % s.p != 0 && l % s.q != 0; });
  }
  throw InvalidInput("post_state: unknown branch");
}

std::vector<Complex> qft_factor_branch_analytic(const Semiprime& s, int q, std::int64_t factor) {
  if (factor != s.p && factor != s.q) throw InvalidInput("not a factor");
  const std::int64_t size = reg_size(q);
  const std::int64_t mf = count_upper(size, factor);
  const std::int64_t mn = count_upper(size, s.n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(mf - mn) * static_cast<double>(size));
  std::vector<Complex> out(size);
  for (std::int64_t m = 0; m < size; ++m)
    out[m] = scale * (eval_F(factor * m, size, mf) - eval_F(s.n * m, size, mn));
  return out;
}

std::vector<Complex> qft_unit_branch_analytic(const Semiprime& s, int q) {
  const std::int64_t size = reg_size(q);
  const std::int64_t mp = count_upper(size, s.p);
  const std::int64_t mq = count_upper(size, s.q);
  const std::int64_t mn = count_upper(size, s.n);
  const double scale =
      1.0 / std::sqrt(static_cast<double>(size - mp - mq + mn) * static_cast<double>(size));
  std::vector<Complex> out(size);
  for (std::int64_t m = 0; m < size; ++m) {
    // F(m / 2^Q; 2^Q) is a full-period sum: 2^Q at m = 0, else 0.
    const Complex full = m == 0 ? Complex(static_cast<double>(size), 0.0) : Complex(0.0, 0.0);
    out[m] = scale * (full - eval_F(s.p * m, size, mp) - eval_F(s.q * m, size, mq) +
                      eval_F(s.n * m, size, mn));
  }
  return out;
}

std::vector<std::int64_t> peak_positions(std::int64_t period, int q) {
  if (period < 1) throw InvalidInput("peak_positions: period must be >= 1");
  const std::int64_t size = reg_size(q);
  std::vector<std::int64_t> out;
  for (std::int64_t j = 1; j < period; ++j) {
    const std::int64_t pos = round_half_up(j * size, period);
    if (pos >= size) continue;
    if (out.empty() || out.back() != pos) out.push_back(pos);
  }
  return out;
}

PeakReport analyze_peaks(const Distribution& dist, std::int64_t period, int q, std::int64_t n) {
  const std::int64_t size = reg_size(q);
  if (static_cast<std::int64_t>(dist.size()) != size)
    throw InvalidInput("analyze_peaks: distribution must have 2^Q bins");

  PeakReport r;
  r.period = period;
  r.positions = peak_positions(period, q);
  r.dc = dist.prob(0);
  r.min_on_peak = r.positions.empty() ? 0.0 : 1.0;
  for (auto m : r.positions) {
    const double v = dist.prob(m);
    r.mass += v;
    r.max_on_peak = std::max(r.max_on_peak, v);
    r.min_on_peak = std::min(r.min_on_peak, v);
  }

  const std::set<std::int64_t> on(r.positions.begin(), r.positions.end());
  for (auto m : peak_positions(n, q))
    if (!on.contains(m)) r.off_positions.push_back(m);
  r.min_off_structure = r.off_positions.empty() ? 0.0 : 1.0;
  for (auto m : r.off_positions) {
    const double v = dist.prob(m);
    r.off_structure_mass += v;
    r.max_off_structure = std::max(r.max_off_structure, v);
    r.min_off_structure = std::min(r.min_off_structure, v);
  }
  return r;
}

PeakBounds peak_mass_bounds(const Semiprime& s, std::int64_t factor) {
  if (factor != s.p && factor != s.q) throw InvalidInput("peak_mass_bounds: not a factor");
  const std::int64_t n = s.n;
  const std::int64_t f = factor;
  const std::int64_t other = n / f;
  const Rational c(2, 5);
  const std::int64_t unit_den = n * (n - s.p - s.q + 1);
  PeakBounds b;
  b.factor_per_peak = c * Rational(n - f, n * f);
  b.factor_total = c * Rational(n - f, n);
  b.factor_mn_per_peak = c * Rational(f, n * (n - f));
  b.factor_mn_total = c * Rational(f, n);
  b.unit_per_peak_f = c * Rational((other - 1) * (other - 1), unit_den);
  b.unit_per_peak_other = c * Rational((f - 1) * (f - 1), unit_den);
  b.unit_per_peak_n = c * Rational(1, unit_den);
  b.unit_total = c * Rational(n * s.q + n * s.p + s.q + s.p - 4 * n, unit_den);
  return b;
}

DivisorCandidate recover_divisor(std::int64_t m, int q, std::int64_t n) {
  const std::int64_t size = reg_size(q);
  if (m <= 0 || m >= size) throw InvalidInput("recover_divisor: m must be in (0, 2^Q)");
  if (n < 1) throw InvalidInput("recover_divisor: N must be >= 1");

  // Convergents h/k of m/size; keep the closest one with k <= N.
  i128 h_prev = 0, h = 1;
  i128 k_prev = 1, k = 0;
  i128 num = m, den = size;
  DivisorCandidate best{0, 1, gcd_conv(1, n)};
  bool have = false;
  while (den != 0) {
    const i128 a = num / den;
    const i128 h_next = a * h + h_prev;
    const i128 k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    if (k > n) break;
    const auto err = [&](i128 hh, i128 kk) {
      const i128 d = static_cast<i128>(m) * kk - hh * size;
      return d < 0 ? -d : d;
    };
    // |m/size - h/k| compared by cross-multiplication.
    if (!have || err(h, k) * best.denominator < err(best.numerator, best.denominator) * k) {
      best.numerator = static_cast<std::int64_t>(h);
      best.denominator = static_cast<std::int64_t>(k);
      have = true;
    }
    const i128 rem = num - a * den;
    num = den;
    den = rem;
  }
  best.gcd_with_n = gcd_conv(best.denominator % n, n);
  return best;
}

// ---- driver ---------------------------------------------------------------

ShorGaussDriver::ShorGaussDriver(std::int64_t n, int q, TrialMode mode, bool allow_small_register,
                                 std::size_t cap)
    : n_(n),
      q_(q),
      mode_(mode),
      b_marginal_(Distribution({0}, {1.0})),
      b_sampler_(b_marginal_) {
  const BipartiteState state = build_state(n, q, allow_small_register, cap);
  b_marginal_ = marginal_b(state);
  b_sampler_ = CdfSampler(b_marginal_);
  labels_.assign(state.labels_b().begin(), state.labels_b().end());
  a_direct_.resize(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const std::int64_t label = labels_[i];
    if (label == 1) {
      const auto collapsed = collapse_b(state, label);
      unit_qft_.emplace(probabilities(qft_vector(collapsed.state_a)));
    } else if (label != n && mode_ == TrialMode::DirectRead) {
      a_direct_[i].emplace(probabilities(collapse_b(state, label).state_a));
    }
  }
}

TrialRecord ShorGaussDriver::run_trial(std::uint64_t seed, std::uint64_t index) const {
  Rng rng = trial_rng(seed, index);
  TrialRecord rec;
  rec.index = index;
  const std::size_t bi = b_sampler_.sample_index(rng);
  const std::int64_t label = labels_[bi];
  rec.b_outcome = label;

  if (label == n_) {
    rec.note = "case-N";
    return rec;
  }
  if (label != 1) {
    if (mode_ == TrialMode::DirectRead) {
      const std::int64_t l = a_direct_[bi]->sample(rng);
      rec.a_outcome = l;
      const std::int64_t g = gcd_conv(l % n_, n_);
      if (g > 1 && g < n_) rec.factor = g;
      rec.note = "case-factor-direct";
    } else {
      rec.factor = label;
      rec.note = "case-factor";
    }
    return rec;
  }

  const std::int64_t m = unit_qft_->sample(rng);
  rec.a_outcome = m;
  if (m == 0) {
    rec.note = "case-unit-dc";
    return rec;
  }
  const DivisorCandidate c = recover_divisor(m, q_, n_);
  if (c.gcd_with_n > 1 && c.gcd_with_n < n_) rec.factor = c.gcd_with_n;
  rec.note = "case-unit-cf d=" + std::to_string(c.denominator);
  return rec;
}

DriverResult ShorGaussDriver::run(std::uint64_t max_trials, std::uint64_t seed) const {
  DriverResult out;
  out.n = n_;
  out.seed = seed;
  for (std::uint64_t i = 0; i < max_trials; ++i) {
    out.records.push_back(run_trial(seed, i));
    out.trials = i + 1;
    if (out.records.back().factor) {
      out.success = true;
      out.factor = *out.records.back().factor;
      break;
    }
  }
  return out;
}

DriverResult factor_driver(std::int64_t n, int q, std::uint64_t max_trials, std::uint64_t seed,
                           TrialMode mode, bool allow_small_register) {
  return ShorGaussDriver(n, q, mode, allow_small_register).run(max_trials, seed);
}

}  // namespace gausshor
