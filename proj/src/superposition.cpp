#include "gausshor/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <thread>

#include "gausshor/compensated.hpp"
#include "gausshor/gauss_kernels.hpp"

namespace gausshor {

namespace {

std::int64_t reg_size(int q) { return std::int64_t{1} << q; }

bool is_factor_gcd(std::int64_t g, std::int64_t n) { return g > 1 && g < n; }

void require_odd_n(std::int64_t n) {
  if (n < 3 || n % 2 == 0) throw InvalidInput("N must be odd and >= 3");
}

}  // namespace

ExactRun run_exact(std::int64_t n, std::size_t cap) {
  require_odd_n(n);
  const Semiprime s = factor_semiprime(n);
  check_cap(n, n, cap);
  BipartiteState psi0 = uniform_product(n, n, cap);
  BipartiteState psi1 = apply_quadratic_phase(psi0, n);
  return {s, qft_b(psi1)};
}

Distribution p_b_distribution(const ExactRun& run) { return marginal_b(run.psi2); }

SuccessMass success_mass(const ExactRun& run) {
  const std::int64_t n = run.s.n;
  const Distribution pb = p_b_distribution(run);
  std::map<std::int64_t, CompensatedSum> per_gcd;
  for (std::size_t i = 0; i < pb.size(); ++i) per_gcd[gcd_conv(pb.label(i), n)].add(pb.prob(i));

  SuccessMass out;
  CompensatedSum factor;
  for (const auto& [g, acc] : per_gcd) {
    out.by_gcd.emplace_back(g, acc.value());
    if (g == n)
      out.p_b_zero = acc.value();
    else if (g == 1)
      out.p_b_coprime = acc.value();
    else
      factor.add(acc.value());
  }
  out.p_b_factor_multiple = factor.value();
  out.total_useful = out.p_b_zero + out.p_b_factor_multiple;
  return out;
}

double factor_mass(const Distribution& over_ell, std::int64_t n) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < over_ell.size(); ++i)
    if (is_factor_gcd(gcd_conv(over_ell.label(i) % n, n), n)) acc.add(over_ell.prob(i));
  return acc.value();
}

double factor_mass_a(const ExactRun& run, std::int64_t n0) {
  return factor_mass(conditional_a(run.psi2, n0), run.s.n);
}

Rational normalization_closed(const Semiprime& s, std::int64_t n0) {
  const std::int64_t n = s.n;
  const std::int64_t g = gcd_conv(n0 % n, n);
  if (g == n) return Rational(4 * n - 2 * s.p - 2 * s.q + 1, n);
  if (g == 1) return Rational(n - s.p - s.q + 1, n);
  return Rational(2 * n - 2 * g - n / g + 1, n);
}

Rational p_b_closed(const Semiprime& s, std::int64_t n0) {
  return normalization_closed(s, n0) / s.n;
}

Rational factor_mass_closed(const Semiprime& s, std::int64_t n0) {
  const std::int64_t n = s.n;
  const std::int64_t g = gcd_conv(n0 % n, n);
  if (g == n) {
    const std::int64_t d = 2 * n - s.p - s.q;
    return Rational(d, 2 * d + 1);
  }
  if (g == 1) return Rational(0);
  return Rational(n - g, 2 * (n - g) - n / g + 1);
}

Rational p_b_printed(const Semiprime& s, std::int64_t n0) {
  const std::int64_t n = s.n;
  const std::int64_t g = gcd_conv(n0 % n, n);
  Rational braces(0);
  if (n0 % n == 0) braces += Rational(n - s.p - s.q + 1, n) + 1;
  if (g == s.p) braces += Rational(s.p * (s.q - 1), n);
  if (g == s.q) braces += Rational(s.q * (s.p - 1), n);
  return braces / n;
}

double useful_mass_printed(const Semiprime& s) {
  const double n = static_cast<double>(s.n);
  const double p = static_cast<double>(s.p);
  return 2.0 / (n * p) + 2.0 / p + 2.0 * p / (n * n) + 2.0 * p / n - p * p / (n * n) - 4.0 / n -
         1.0 / (n * n);
}

// ---- qubit-register variant ----------------------------------------------

namespace {

constexpr std::int64_t kResidueBlock = 8;

void require_qubit_register(std::int64_t n, int q) {
  require_odd_n(n);
  if (q < 1 || q > kMaxStreamingQubits)
    throw InvalidInput("qubit mode needs 1 <= Q <= " + std::to_string(kMaxStreamingQubits));
  if (static_cast<__int128>(n) * n >= (__int128{1} << q))
    throw InvalidInput("qubit mode needs N^2 < 2^Q");
}

// Number of l in [0, size) with l = r mod n.
std::int64_t residue_count(std::int64_t r, std::int64_t n, std::int64_t size) {
  return r < size ? (size - 1 - r) / n + 1 : 0;
}

// Sum over residues [begin, end) of count(r) |W~_.(r)|^2, accumulated in residue order.
std::vector<double> block_weights(std::int64_t begin, std::int64_t end, std::int64_t n,
                                  std::int64_t size) {
  std::vector<CompensatedSum> acc(size);
  for (std::int64_t r = begin; r < end; ++r) {
    const auto row = W_tilde_row(r, n, size);
    const double c = static_cast<double>(residue_count(r, n, size));
    for (std::int64_t k = 0; k < size; ++k) acc[k].add(c * std::norm(row[k]));
  }
  std::vector<double> out(size);
  for (std::int64_t k = 0; k < size; ++k) out[k] = acc[k].value();
  return out;
}

}  // namespace

QubitRun run_qubit(std::int64_t n, int q, unsigned threads) {
  require_qubit_register(n, q);
  const std::int64_t size = reg_size(q);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  const std::int64_t blocks = (n + kResidueBlock - 1) / kResidueBlock;
  std::vector<CompensatedSum> total(size);
  // Waves of up to `threads` blocks; partials are folded in block order.
  for (std::int64_t first = 0; first < blocks; first += threads) {
    const std::int64_t last = std::min<std::int64_t>(blocks, first + threads);
    std::vector<std::vector<double>> partial(last - first);
    std::vector<std::thread> pool;
    for (std::int64_t b = first; b < last; ++b) {
      pool.emplace_back([&, b] {
        const std::int64_t begin = b * kResidueBlock;
        partial[b - first] = block_weights(begin, std::min(n, begin + kResidueBlock), n, size);
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& part : partial)
      for (std::int64_t k = 0; k < size; ++k) total[k].add(part[k]);
  }

  std::vector<double> probs(size);
  const double scale = 1.0 / static_cast<double>(size);
  for (std::int64_t k = 0; k < size; ++k) probs[k] = total[k].value() * scale;
  return {n, q, Distribution(iota_labels(size), std::move(probs))};
}

BipartiteState run_qubit_dense(std::int64_t n, int q, std::size_t cap) {
  require_qubit_register(n, q);
  const std::int64_t size = reg_size(q);
  return qft_b(apply_quadratic_phase(uniform_product(size, size, cap), n));
}

std::optional<std::int64_t> nearest_peak_index(std::int64_t n_b, std::int64_t n, int q) {
  const std::int64_t size = reg_size(q);
  // j = round(n_b N / 2^Q); accept if |n_b N - j 2^Q| <= N / 2.
  const __int128 x = static_cast<__int128>(n_b) * n;
  const std::int64_t j = static_cast<std::int64_t>((2 * x + size) / (2 * static_cast<__int128>(size)));
  __int128 d = x - static_cast<__int128>(j) * size;
  if (d < 0) d = -d;
  if (2 * d > n) return std::nullopt;
  return j % n;
}

double qubit_peak_mass(const QubitRun& run) {
  CompensatedSum acc;
  for (std::size_t k = 0; k < run.p_b.size(); ++k)
    if (nearest_peak_index(run.p_b.label(k), run.n, run.q)) acc.add(run.p_b.prob(k));
  return acc.value();
}

Distribution conditional_qubit(std::int64_t n, int q, std::int64_t n0) {
  require_qubit_register(n, q);
  const std::int64_t size = reg_size(q);
  if (n0 < 0 || n0 >= size) throw InvalidInput("B outcome out of range");
  std::vector<double> residue(n);
  for (std::int64_t r = 0; r < n; ++r) residue[r] = std::norm(eval_W_tilde(n0, r, n, size));
  std::vector<double> w(size);
  for (std::int64_t l = 0; l < size; ++l) w[l] = residue[l % n];
  return Distribution::from_weights(iota_labels(size), std::move(w));
}

Distribution conditional_after_peak(const QubitRun& run, std::int64_t n_peak) {
  if (!nearest_peak_index(n_peak, run.n, run.q))
    throw InvalidInput("B outcome " + std::to_string(n_peak) + " is not within 1/2 of any j 2^Q/N");
  return conditional_qubit(run.n, run.q, n_peak);
}

std::vector<double> p_b_prime_without_remainder(std::int64_t n, int q) {
  require_qubit_register(n, q);
  const std::int64_t size = reg_size(q);
  std::vector<double> out(size);
  for (std::int64_t k = 0; k < size; ++k) {
    CompensatedSum acc;
    for (std::int64_t r = 0; r < n; ++r) {
      const auto split = split_W_tilde(k, r, n, size);
      acc.add(static_cast<double>(residue_count(r, n, size)) * std::norm(split.main));
    }
    out[k] = acc.value() / static_cast<double>(size);
  }
  return out;
}

// ---- driver ---------------------------------------------------------------

DriverResult sample_factor_driver(std::int64_t n, SuperpositionMode mode, int q,
                                  std::uint64_t max_trials, std::uint64_t seed) {
  require_odd_n(n);
  DriverResult out;
  out.n = n;
  out.seed = seed;

  std::optional<ExactRun> exact;
  std::optional<QubitRun> qubit;
  std::optional<CdfSampler> b_sampler;
  if (mode == SuperpositionMode::Exact) {
    exact.emplace(run_exact(n));
    b_sampler.emplace(p_b_distribution(*exact));
  } else {
    qubit.emplace(run_qubit(n, q));
    b_sampler.emplace(qubit->p_b);
  }
  std::map<std::int64_t, CdfSampler> a_cache;

  for (std::uint64_t i = 0; i < max_trials; ++i) {
    Rng rng = trial_rng(seed, i);
    TrialRecord rec;
    rec.index = i;
    rec.b_outcome = b_sampler->sample(rng);

    const std::int64_t key = exact ? rec.b_outcome : nearest_peak_index(rec.b_outcome, n, q).value_or(-1);
    const std::int64_t gb = key >= 0 ? gcd_conv(key, n) : 1;
    if (is_factor_gcd(gb, n)) {
      rec.factor = gb;
      rec.note = "b-gcd";
    } else {
      auto it = a_cache.find(rec.b_outcome);
      if (it == a_cache.end()) {
        Distribution cond = exact ? conditional_a(exact->psi2, rec.b_outcome)
                                  : conditional_qubit(n, q, rec.b_outcome);
        it = a_cache.emplace(rec.b_outcome, CdfSampler(cond)).first;
      }
      const std::int64_t l = it->second.sample(rng);
      rec.a_outcome = l;
      const std::int64_t ga = gcd_conv(l % n, n);
      if (is_factor_gcd(ga, n)) rec.factor = ga;
      rec.note = "a-gcd";
    }

    out.records.push_back(std::move(rec));
    out.trials = i + 1;
    if (out.records.back().factor) {
      out.success = true;
      out.factor = *out.records.back().factor;
      break;
    }
  }
  return out;
}

std::vector<TruncatedRow> truncated_comparison(std::int64_t n, std::int64_t terms) {
  require_odd_n(n);
  std::vector<TruncatedRow> rows;
  for (std::int64_t l = 1; l <= n; ++l) {
    TruncatedRow r;
    r.ell = l;
    r.truncated_abs = std::abs(eval_truncated(l, n, terms));
    r.gauss_ratio = std::norm(eval_G(l, n)) / static_cast<double>(n);
    r.divides = n % l == 0;
    r.factor_multiple = is_factor_gcd(gcd_conv(l % n, n), n);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace gausshor
