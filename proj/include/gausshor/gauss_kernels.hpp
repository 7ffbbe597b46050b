#pragma once

// Gauss sums and the geometric sum F used throughout the factoring analysis.
//
// All quadratic and linear phases are reduced with exact integer arithmetic
// before conversion to an angle, and direct sums use compensated
// accumulation, so analytic zeros come out at the 1e-15 level.

#include <complex>
#include <cstdint>
#include <vector>

#include "gausshor/fft.hpp"
#include "gausshor/numtheory.hpp"

namespace gausshor {

/// Standard Gauss sum G(ell, N) = sum_{m<N} exp(2 pi i m^2 ell / N).
Complex eval_G(std::int64_t ell, std::int64_t n);

/// |G(ell, N)|^2 / N, evaluated through the gcd identity (odd N >= 3 only).
std::int64_t g_of(std::int64_t ell, std::int64_t n);

/// Shifted Gauss sum W_n(ell) = (1/N) sum_{m<N} exp(2 pi i (m^2 ell + m n)/N).
Complex eval_W(std::int64_t n_shift, std::int64_t ell, std::int64_t n);

/// Exact |W_n(ell)|^2 for a semiprime: 1/N, p/N, q/N, 0, or 1 (the ell = 0 row).
Rational closed_W_sq(std::int64_t n_shift, std::int64_t ell, const Semiprime& s);

/// Register-size generalization with separate quadratic and linear moduli:
/// (1/M) sum_{m<M} exp(2 pi i (m^2 ell / N + m n / M)). Exact, no remainder dropped.
Complex eval_W_tilde(std::int64_t n_shift, std::int64_t ell, std::int64_t n, std::int64_t reg_size);

/// All M values eval_W_tilde(0..M-1, ell, N, M) at once, via one transform
/// of the quadratic-phase vector.
std::vector<Complex> W_tilde_row(std::int64_t ell, std::int64_t n, std::int64_t reg_size);

/// Block decomposition of eval_W_tilde at M = 2^Q: m = s N + k over the full
/// blocks, plus the tail of r = M mod N terms. main + remainder is exact.
struct WTildeSplit {
  Complex main;
  Complex remainder;
  std::int64_t full_blocks = 0;
  std::int64_t tail = 0;
};
WTildeSplit split_W_tilde(std::int64_t n_shift, std::int64_t ell, std::int64_t n,
                          std::int64_t reg_size);

/// Geometric sum F(alpha; M) = sum_{k<M} exp(2 pi i k alpha), direct.
Complex eval_F(double alpha, std::int64_t terms);

/// Same sum for a rational alpha = num/den, phases reduced exactly.
Complex eval_F(std::int64_t num, std::int64_t den, std::int64_t terms);

/// Closed form exp(i pi alpha (M-1)) sin(pi alpha M) / sin(pi alpha);
/// returns exactly M when alpha is integral.
Complex eval_F_closed(double alpha, std::int64_t terms);

/// Truncated Gauss sum A_N^(M)(ell) = 1/(M+1) sum_{m=0}^{M} exp(2 pi i m^2 N / ell).
Complex eval_truncated(std::int64_t ell, std::int64_t n, std::int64_t terms);

}  // namespace gausshor
