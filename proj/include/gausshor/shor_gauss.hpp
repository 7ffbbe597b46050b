#pragma once

// Shor-like factoring with the normalized Gauss sum g(l, N) = gcd(l, N) in
// place of modular exponentiation: prepare sum_l |l>_A |g(l, N)>_B over a
// 2^Q register, measure B, and look for the period of what is left in A.

#include <cstdint>
#include <optional>
#include <vector>

#include "gausshor/driver.hpp"
#include "gausshor/numtheory.hpp"
#include "gausshor/quantum_state.hpp"

namespace gausshor {

enum class BranchKind { CaseN, CaseFactor, CaseUnit };

/// A B-measurement outcome class; `label` is the measured g value (N, a factor, or 1).
struct Branch {
  BranchKind kind = BranchKind::CaseUnit;
  std::int64_t label = 1;
};

struct BranchOutcome {
  Branch branch;
  Rational probability;
};

/// Smallest Q with 2^Q > N^2.
int min_register_qubits(std::int64_t n);

/// Throws InvalidInput unless 2^Q > N^2 (or `allow_small_register`) and 1 <= Q <= 40.
void require_register(std::int64_t n, int q, bool allow_small_register);

/// The entangled state over A = {0 .. 2^Q-1} and the g-valued B register.
/// Only g is evaluated, never the factorization; B labels are the distinct g
/// values in ascending order ({1, p, q, N} for a semiprime).
BipartiteState build_state(std::int64_t n, int q, bool allow_small_register = false,
                           std::size_t cap = amplitude_cap());

/// Exact outcome probabilities from register counts, ordered CaseN,
/// CaseFactor(p), CaseFactor(q), CaseUnit. They sum to exactly 1.
std::vector<BranchOutcome> branch_probs(const Semiprime& s, int q);

/// Normalized A state left by `branch`, built from its support set.
std::vector<Complex> post_state(const Semiprime& s, int q, Branch branch);

/// QFT amplitudes of the factor branch from the geometric-sum closed form:
/// N^(f)/sqrt(2^Q) [F(f m / 2^Q; M_f) - F(N m / 2^Q; M_N)].
std::vector<Complex> qft_factor_branch_analytic(const Semiprime& s, int q, std::int64_t factor);

/// QFT amplitudes of the unit branch from four geometric sums.
std::vector<Complex> qft_unit_branch_analytic(const Semiprime& s, int q);

/// Nearest integers to j 2^Q / period for j = 1 .. period-1, ties rounded up,
/// deduplicated and ascending.
std::vector<std::int64_t> peak_positions(std::int64_t period, int q);

struct PeakReport {
  std::int64_t period = 0;
  std::vector<std::int64_t> positions;
  double mass = 0.0;          // total probability on `positions`
  double dc = 0.0;            // probability at m = 0
  double max_on_peak = 0.0;
  double min_on_peak = 0.0;
  std::vector<std::int64_t> off_positions;  // m_N positions not in `positions`
  double off_structure_mass = 0.0;
  double max_off_structure = 0.0;
  double min_off_structure = 0.0;
};

/// Peak statistics of a distribution over 2^Q bins for a candidate period,
/// with the N-spaced comb as the competing structure.
PeakReport analyze_peaks(const Distribution& dist, std::int64_t period, int q, std::int64_t n);

/// Analytic lower bounds on post-QFT peak masses. `factor` is the measured
/// factor f (the other is N/f). All values carry the 0.4 < 4/pi^2 constant.
struct PeakBounds {
  Rational factor_per_peak;     // 0.4 (N-f)/(N f)
  Rational factor_total;        // 0.4 (N-f)/N
  Rational factor_mn_per_peak;  // 0.4 f/(N (N-f))
  Rational factor_mn_total;     // 0.4 f/N
  Rational unit_per_peak_f;     // 0.4 (N/f - 1)^2 / (N (N-p-q+1))
  Rational unit_per_peak_other; // 0.4 (f - 1)^2 / (N (N-p-q+1))
  Rational unit_per_peak_n;     // 0.4 / (N (N-p-q+1))
  Rational unit_total;          // 0.4 (Nq + Np + q + p - 4N) / (N (N-q-p+1))
};
PeakBounds peak_mass_bounds(const Semiprime& s, std::int64_t factor);

struct DivisorCandidate {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  std::int64_t gcd_with_n = 1;
};

/// Continued-fraction reconstruction of m / 2^Q: the convergent j/d with
/// d <= N closest to m / 2^Q, and gcd_conv(d, N).
DivisorCandidate recover_divisor(std::int64_t m, int q, std::int64_t n);

enum class TrialMode {
  Qft,         // factor branch reports the measured label itself
  DirectRead,  // factor branch samples A without a transform and takes gcd(l, N)
};

/// Seeded trial runner. Precomputes the B marginal and the post-measurement
/// distributions once; every trial draws from trial_rng(seed, index).
class ShorGaussDriver {
 public:
  ShorGaussDriver(std::int64_t n, int q, TrialMode mode = TrialMode::Qft,
                  bool allow_small_register = false, std::size_t cap = amplitude_cap());

  TrialRecord run_trial(std::uint64_t seed, std::uint64_t index) const;
  DriverResult run(std::uint64_t max_trials, std::uint64_t seed) const;

  const Distribution& b_marginal() const { return b_marginal_; }

 private:
  std::int64_t n_;
  int q_;
  TrialMode mode_;
  Distribution b_marginal_;
  CdfSampler b_sampler_;
  std::vector<std::int64_t> labels_;
  std::vector<std::optional<CdfSampler>> a_direct_;  // per B label, DirectRead only
  std::optional<CdfSampler> unit_qft_;
};

DriverResult factor_driver(std::int64_t n, int q, std::uint64_t max_trials, std::uint64_t seed,
                           TrialMode mode = TrialMode::Qft, bool allow_small_register = false);

}  // namespace gausshor
