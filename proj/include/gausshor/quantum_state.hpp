#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gausshor/error.hpp"
#include "gausshor/fft.hpp"
#include "gausshor/numtheory.hpp"
#include "gausshor/random.hpp"

namespace gausshor {

inline constexpr double kNormTolerance = 1e-9;
inline constexpr std::size_t kDefaultAmplitudeCap = std::size_t{1} << 24;

/// Amplitude-count cap: GAUSSHOR_MEM_CAP if set and valid, else 2^24.
std::size_t amplitude_cap();

/// Labeled probability vector. Probabilities are nonnegative, sum to 1, and
/// labels are distinct.
class Distribution {
 public:
  Distribution(std::vector<std::int64_t> labels, std::vector<double> probs);

  /// Normalizes nonnegative weights; throws if their total is zero.
  static Distribution from_weights(std::vector<std::int64_t> labels, std::vector<double> weights);

  std::size_t size() const { return probs_.size(); }
  std::span<const std::int64_t> labels() const { return labels_; }
  std::span<const double> probs() const { return probs_; }
  std::int64_t label(std::size_t i) const { return labels_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }

  /// Probability of `label`, or 0 if absent.
  double prob_of(std::int64_t label) const;

 private:
  std::vector<std::int64_t> labels_;
  std::vector<double> probs_;
};

/// Labels 0 .. n-1.
std::vector<std::int64_t> iota_labels(std::size_t n);

/// Inverse-CDF sampler over a fixed distribution.
class CdfSampler {
 public:
  explicit CdfSampler(const Distribution& dist);
  std::int64_t sample(Rng& rng) const;
  std::size_t sample_index(Rng& rng) const;

 private:
  std::vector<std::int64_t> labels_;
  std::vector<double> cumulative_;
};

/// Draws one label from `dist` by inverse-CDF sampling.
std::int64_t sample(const Distribution& dist, Rng& rng);

/// Pure state of a bipartite system A x B, stored row-major:
/// amplitude(l, m) = amps[l * dim_b + m]. B may carry arbitrary integer labels
/// (the 4-valued g register); by default they are 0 .. dim_b-1.
class BipartiteState {
 public:
  BipartiteState(std::size_t dim_a, std::size_t dim_b, std::vector<Complex> amps,
                 std::vector<std::int64_t> labels_b = {});

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::span<const Complex> amps() const { return amps_; }
  std::span<const std::int64_t> labels_b() const { return labels_b_; }
  Complex amp(std::size_t l, std::size_t m) const { return amps_[l * dim_b_ + m]; }
  std::span<const Complex> row(std::size_t l) const {
    return std::span<const Complex>(amps_).subspan(l * dim_b_, dim_b_);
  }
  /// Index of B label, throws if absent.
  std::size_t index_of_b(std::int64_t label) const;
  double norm_squared() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  std::vector<Complex> amps_;
  std::vector<std::int64_t> labels_b_;
};

/// Throws CapExceeded if dim_a * dim_b overflows or exceeds `cap`.
void check_cap(std::size_t dim_a, std::size_t dim_b, std::size_t cap);

BipartiteState uniform_product(std::size_t dim_a, std::size_t dim_b, std::size_t cap = amplitude_cap());

/// Multiplies amplitude(l, m) by exp(2 pi i m^2 l / N), with m the B index.
BipartiteState apply_quadratic_phase(const BipartiteState& state, std::int64_t n);

/// Transforms every B row with (1/sqrt D) exp(+2 pi i m l / D).
BipartiteState qft_b(const BipartiteState& state);
/// Inverse of qft_b (kernel sign -).
BipartiteState inverse_qft_b(const BipartiteState& state);

/// Single-register transform, same kernel as qft_b.
std::vector<Complex> qft_vector(std::span<const Complex> vec);
std::vector<Complex> inverse_qft_vector(std::span<const Complex> vec);

/// |amplitude|^2 as a distribution over labels 0 .. size-1.
Distribution probabilities(std::span<const Complex> vec);

Distribution marginal_a(const BipartiteState& state);
Distribution marginal_b(const BipartiteState& state);

struct CollapseResult {
  std::int64_t outcome = 0;
  std::vector<Complex> state_a;
};

/// Projects B onto `outcome_label` and renormalizes A.
CollapseResult collapse_b(const BipartiteState& state, std::int64_t outcome_label);

/// Samples B from its marginal, then collapses.
CollapseResult measure_b(const BipartiteState& state, Rng& rng);

/// Distribution of A given B outcome `n0`.
Distribution conditional_a(const BipartiteState& state, std::int64_t n0);

/// Tr(rho_A^2), computed on whichever side has the smaller dimension.
double purity_a(const BipartiteState& state);

/// (4N - 2p - 2N/p + 1) / N^2
Rational purity_closed(const Semiprime& s);

}  // namespace gausshor
