#pragma once

// Factoring with a superposition of Gauss sums: phase-entangle two registers
// with exp(2 pi i n_B^2 n_A / N), Fourier-transform B, and read the shifted
// Gauss sums W_n(l) out of the joint amplitudes.

#include <cstdint>
#include <optional>
#include <vector>

#include "gausshor/driver.hpp"
#include "gausshor/numtheory.hpp"
#include "gausshor/quantum_state.hpp"

namespace gausshor {

/// N x N run: psi2(l, n) = W_n(l) / sqrt(N).
struct ExactRun {
  Semiprime s;
  BipartiteState psi2;
};

/// Builds uniform_product(N, N) -> apply_quadratic_phase -> qft_b.
ExactRun run_exact(std::int64_t n, std::size_t cap = amplitude_cap());

Distribution p_b_distribution(const ExactRun& run);

struct SuccessMass {
  double p_b_zero = 0.0;
  double p_b_factor_multiple = 0.0;
  double p_b_coprime = 0.0;
  double total_useful = 0.0;  // zero + factor multiples
  std::vector<std::pair<std::int64_t, double>> by_gcd;  // P_B summed per gcd_conv(n0, N)
};

SuccessMass success_mass(const ExactRun& run);

/// Mass of a distribution over l on nonzero factor multiples, i.e. on l with
/// 1 < gcd_conv(l mod N, N) < N.
double factor_mass(const Distribution& over_ell, std::int64_t n);

/// Probability that A, conditioned on B = n0, lands on a factor multiple.
double factor_mass_a(const ExactRun& run, std::int64_t n0);

/// sum_l |W_{n0}(l)|^2 in closed form: (4N-2p-2q+1)/N for n0 = 0,
/// (2N-2f-N/f+1)/N when gcd(n0, N) = f, (N-p-q+1)/N otherwise.
Rational normalization_closed(const Semiprime& s, std::int64_t n0);

/// Exact P_B(n0) = normalization_closed / N.
Rational p_b_closed(const Semiprime& s, std::int64_t n0);

/// Factor-multiple mass of the A conditional in closed form:
/// (2N-p-q)/(2(2N-p-q)+1) for n0 = 0, (N-f)/(2(N-f)-N/f+1) for gcd(n0,N) = f,
/// and 0 for coprime n0.
Rational factor_mass_closed(const Semiprime& s, std::int64_t n0);

/// A commonly quoted two-prime expression for P_B(n). It does not sum to one
/// (it omits the coprime outcomes and undercounts the rest); kept as a
/// reference to compare against p_b_closed and the brute-force marginal.
Rational p_b_printed(const Semiprime& s, std::int64_t n0);

/// Commonly quoted closed form for the total useful B mass,
/// 2/(Np) + 2/p + 2p/N^2 + 2p/N - p^2/N^2 - 4/N - 1/N^2.
double useful_mass_printed(const Semiprime& s);

// ---- qubit-register variant ----------------------------------------------

inline constexpr int kMaxStreamingQubits = 20;

/// 2^Q x 2^Q run, kept only as the B marginal P'_B. The joint state is never
/// materialized: W~_n(l, 2^Q) is N-periodic in l, so one transformed row per
/// residue class, weighted by its multiplicity, covers the register.
struct QubitRun {
  std::int64_t n = 0;
  int q = 0;
  Distribution p_b;
};

/// `threads` = 0 picks hardware concurrency. Output is bit-identical for any
/// thread count: residue blocks have a fixed size and are reduced in order.
QubitRun run_qubit(std::int64_t n, int q, unsigned threads = 0);

/// Dense reference for small Q: the full 2^Q x 2^Q state through quantum_state.
BipartiteState run_qubit_dense(std::int64_t n, int q, std::size_t cap = amplitude_cap());

/// j mod N if |n_b - j 2^Q / N| <= 1/2 for some j, else nullopt.
std::optional<std::int64_t> nearest_peak_index(std::int64_t n_b, std::int64_t n, int q);

/// P'_B mass on bins within 1/2 of some j 2^Q / N.
double qubit_peak_mass(const QubitRun& run);

/// Distribution over l in [0, 2^Q) given B = n0, for any n0.
Distribution conditional_qubit(std::int64_t n, int q, std::int64_t n0);

/// conditional_qubit restricted to n0 near a peak; throws otherwise.
Distribution conditional_after_peak(const QubitRun& run, std::int64_t n_peak);

/// P'_B with the block remainder dropped (the analytic approximation).
/// Not normalized.
std::vector<double> p_b_prime_without_remainder(std::int64_t n, int q);

// ---- driver ---------------------------------------------------------------

enum class SuperpositionMode { Exact, Qubit };

/// Measure B; if the (peak-mapped) outcome shares a factor with N report it,
/// else measure A once and test gcd(l, N). `q` is used in Qubit mode only.
DriverResult sample_factor_driver(std::int64_t n, SuperpositionMode mode, int q,
                                  std::uint64_t max_trials, std::uint64_t seed);

// ---- truncated-sum comparison ---------------------------------------------

struct TruncatedRow {
  std::int64_t ell = 0;
  double truncated_abs = 0.0;  // |A_N^(M)(l)|
  double gauss_ratio = 0.0;    // |G(l, N)|^2 / N
  bool divides = false;        // l | N
  bool factor_multiple = false;
};

std::vector<TruncatedRow> truncated_comparison(std::int64_t n, std::int64_t terms);

}  // namespace gausshor
