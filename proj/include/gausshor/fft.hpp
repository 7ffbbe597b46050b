#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace gausshor {

using Complex = std::complex<double>;

/// exp(2*pi*i * num/den), with num reduced modulo den before scaling.
Complex unit_phase(std::uint64_t num, std::uint64_t den);

constexpr bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

/// In-place unnormalized radix-2 transform with kernel exp(sign * 2*pi*i * jk/D).
/// `data.size()` must be a power of two; `sign` is +1 or -1.
void fft_radix2(std::span<Complex> data, int sign);

/// Unnormalized O(D^2) transform with the same kernel, for any length.
std::vector<Complex> dft_direct(std::span<const Complex> data, int sign);

/// Dispatches to fft_radix2 for power-of-two lengths, dft_direct otherwise.
std::vector<Complex> dft(std::span<const Complex> data, int sign);

}  // namespace gausshor
