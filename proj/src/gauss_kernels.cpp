#include "gausshor/gauss_kernels.hpp"

#include <cmath>
#include <numbers>

#include "gausshor/compensated.hpp"

namespace gausshor {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<u128>(a) * b) % m); }

// (m^2 ell) mod n
u64 quad_residue(u64 m, u64 ell, u64 n) { return mulmod(mulmod(m, m, n), ell % n, n); }

void require_odd_modulus(std::int64_t n, const char* who) {
  if (n < 3 || n % 2 == 0) throw InvalidInput(std::string(who) + ": modulus must be odd and >= 3");
}

void require_nonnegative(std::int64_t v, const char* who) {
  if (v < 0) throw InvalidInput(std::string(who) + ": arguments must be nonnegative");
}

double sin_pi(double x) {
  // Reduce to [-1, 1] so sin sees a small argument.
  x = std::remainder(x, 2.0);
  return std::sin(std::numbers::pi * x);
}

}  // namespace

Complex eval_G(std::int64_t ell, std::int64_t n) {
  if (n < 1) throw InvalidInput("eval_G: modulus must be >= 1");
  require_nonnegative(ell, "eval_G");
  ComplexCompensatedSum acc;
  for (u64 m = 0; m < static_cast<u64>(n); ++m) acc.add(unit_phase(quad_residue(m, ell, n), n));
  return acc.value();
}

std::int64_t g_of(std::int64_t ell, std::int64_t n) {
  require_odd_modulus(n, "g_of");
  require_nonnegative(ell, "g_of");
  return gcd_conv(ell % n, n);
}

Complex eval_W(std::int64_t n_shift, std::int64_t ell, std::int64_t n) {
  require_odd_modulus(n, "eval_W");
  require_nonnegative(ell, "eval_W");
  require_nonnegative(n_shift, "eval_W");
  const u64 N = n;
  const u64 shift = static_cast<u64>(n_shift) % N;
  ComplexCompensatedSum acc;
  for (u64 m = 0; m < N; ++m) acc.add(unit_phase(quad_residue(m, ell, N) + mulmod(m, shift, N), N));
  return acc.value() / static_cast<double>(n);
}

Rational closed_W_sq(std::int64_t n_shift, std::int64_t ell, const Semiprime& s) {
  require_nonnegative(ell, "closed_W_sq");
  require_nonnegative(n_shift, "closed_W_sq");
  const std::int64_t g = gcd_conv(ell % s.n, s.n);
  // The linear phase survives the sum over the g-fold repetition only if g | n.
  if (n_shift % g != 0) return Rational(0);
  return Rational(g, s.n);
}

Complex eval_W_tilde(std::int64_t n_shift, std::int64_t ell, std::int64_t n, std::int64_t reg_size) {
  require_odd_modulus(n, "eval_W_tilde");
  require_nonnegative(ell, "eval_W_tilde");
  require_nonnegative(n_shift, "eval_W_tilde");
  if (reg_size < 1) throw InvalidInput("eval_W_tilde: register size must be >= 1");
  const u64 N = n;
  const u64 M = reg_size;
  const u64 shift = static_cast<u64>(n_shift) % M;
  const u64 den = N * M;
  ComplexCompensatedSum acc;
  for (u64 m = 0; m < M; ++m) {
    const u64 num = quad_residue(m, ell, N) * M + mulmod(m, shift, M) * N;
    acc.add(unit_phase(num, den));
  }
  return acc.value() / static_cast<double>(reg_size);
}

std::vector<Complex> W_tilde_row(std::int64_t ell, std::int64_t n, std::int64_t reg_size) {
  require_odd_modulus(n, "W_tilde_row");
  require_nonnegative(ell, "W_tilde_row");
  if (reg_size < 1) throw InvalidInput("W_tilde_row: register size must be >= 1");
  const u64 N = n;
  std::vector<Complex> phase(reg_size);
  for (u64 m = 0; m < static_cast<u64>(reg_size); ++m) phase[m] = unit_phase(quad_residue(m, ell, N), N);
  auto row = dft(phase, +1);
  const double scale = 1.0 / static_cast<double>(reg_size);
  for (auto& z : row) z *= scale;
  return row;
}

WTildeSplit split_W_tilde(std::int64_t n_shift, std::int64_t ell, std::int64_t n,
                          std::int64_t reg_size) {
  require_odd_modulus(n, "split_W_tilde");
  const u64 N = n;
  const u64 M = reg_size;
  const u64 shift = static_cast<u64>(n_shift) % M;
  WTildeSplit out;
  out.full_blocks = reg_size / n;
  out.tail = reg_size % n;

  // Inner block sum over k < N with the linear phase at the register modulus.
  const u64 den = N * M;
  ComplexCompensatedSum inner;
  for (u64 k = 0; k < N; ++k)
    inner.add(unit_phase(quad_residue(k, ell, N) * M + mulmod(k, shift, M) * N, den));
  ComplexCompensatedSum blocks;
  for (u64 s = 0; s < static_cast<u64>(out.full_blocks); ++s) blocks.add(unit_phase(mulmod(s * N, shift, M), M));
  out.main = blocks.value() * inner.value() / static_cast<double>(reg_size);

  ComplexCompensatedSum tail;
  const u64 base = static_cast<u64>(out.full_blocks) * N;
  for (u64 k = 0; k < static_cast<u64>(out.tail); ++k)
    tail.add(unit_phase(quad_residue(k, ell, N) * M + mulmod(base + k, shift, M) * N, den));
  out.remainder = tail.value() / static_cast<double>(reg_size);
  return out;
}

Complex eval_F(double alpha, std::int64_t terms) {
  if (terms < 1) throw InvalidInput("eval_F: number of terms must be >= 1");
  ComplexCompensatedSum acc;
  for (std::int64_t k = 0; k < terms; ++k) {
    const double x = static_cast<double>(k) * alpha;
    const double frac = x - std::round(x);
    const double angle = 2.0 * std::numbers::pi * frac;
    acc.add({std::cos(angle), std::sin(angle)});
  }
  return acc.value();
}

Complex eval_F(std::int64_t num, std::int64_t den, std::int64_t terms) {
  if (terms < 1) throw InvalidInput("eval_F: number of terms must be >= 1");
  if (den < 1) throw InvalidInput("eval_F: denominator must be >= 1");
  const u64 D = den;
  const u64 step = static_cast<u64>(((num % den) + den) % den);
  ComplexCompensatedSum acc;
  u64 idx = 0;
  for (std::int64_t k = 0; k < terms; ++k) {
    acc.add(unit_phase(idx, D));
    idx = (idx + step) % D;
  }
  return acc.value();
}

Complex eval_F_closed(double alpha, std::int64_t terms) {
  if (terms < 1) throw InvalidInput("eval_F_closed: number of terms must be >= 1");
  const double denom = sin_pi(alpha);
  if (std::abs(denom) < 1e-12) return {static_cast<double>(terms), 0.0};
  const double m = static_cast<double>(terms);
  const double ratio = sin_pi(alpha * m) / denom;
  const double phase = std::numbers::pi * std::remainder(alpha * (m - 1.0), 2.0);
  return std::polar(ratio, phase);
}

Complex eval_truncated(std::int64_t ell, std::int64_t n, std::int64_t terms) {
  if (ell < 1) throw InvalidInput("eval_truncated: ell must be >= 1");
  if (n < 1) throw InvalidInput("eval_truncated: N must be >= 1");
  if (terms < 0) throw InvalidInput("eval_truncated: number of terms must be >= 0");
  const u64 L = ell;
  ComplexCompensatedSum acc;
  for (u64 m = 0; m <= static_cast<u64>(terms); ++m) acc.add(unit_phase(quad_residue(m, n, L), L));
  return acc.value() / static_cast<double>(terms + 1);
}

}  // namespace gausshor
