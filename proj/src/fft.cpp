#include "gausshor/fft.hpp"

#include <numbers>
#include <stdexcept>
#include <utility>

#include "gausshor/compensated.hpp"

namespace gausshor {

Complex unit_phase(std::uint64_t num, std::uint64_t den) {
  num %= den;
  // Fold to [-1/2, 1/2) so the angle passed to sin/cos stays small.
  const double frac = (2 * num < den) ? static_cast<double>(num) / static_cast<double>(den)
                                      : -static_cast<double>(den - num) / static_cast<double>(den);
  const double angle = 2.0 * std::numbers::pi * frac;
  return {std::cos(angle), std::sin(angle)};
}

void fft_radix2(std::span<Complex> data, int sign) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: length must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  // Twiddles are taken from exact phases, not a running product.
  std::vector<Complex> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const Complex w = unit_phase(k, n);
    twiddle[k] = sign > 0 ? w : std::conj(w);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex t = twiddle[k * stride] * data[start + k + half];
        const Complex u = data[start + k];
        data[start + k] = u + t;
        data[start + k + half] = u - t;
      }
    }
  }
}

std::vector<Complex> dft_direct(std::span<const Complex> data, int sign) {
  const std::size_t n = data.size();
  std::vector<Complex> table(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex w = unit_phase(k, n);
    table[k] = sign > 0 ? w : std::conj(w);
  }
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexCompensatedSum acc;
    std::size_t idx = 0;  // j*k mod n
    for (std::size_t j = 0; j < n; ++j) {
      acc.add(table[idx] * data[j]);
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = acc.value();
  }
  return out;
}

std::vector<Complex> dft(std::span<const Complex> data, int sign) {
  if (is_power_of_two(data.size())) {
    std::vector<Complex> out(data.begin(), data.end());
    fft_radix2(out, sign);
    return out;
  }
  return dft_direct(data, sign);
}

}  // namespace gausshor
