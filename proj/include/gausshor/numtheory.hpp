#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

#include "gausshor/error.hpp"

namespace gausshor {

using Rational = boost::rational<std::int64_t>;

/// Greatest common divisor with the convention gcd_conv(0, n) = n.
std::int64_t gcd_conv(std::int64_t a, std::int64_t n);

/// Smallest integer strictly larger than numerator/denominator.
///
/// For the register sizes used here (2^Q over an odd modulus) this is the
/// number of multiples of `denominator` in {0, ..., numerator - 1}.
std::int64_t count_upper(std::int64_t numerator, std::int64_t denominator);

/// Odd product of two distinct primes, p < q.
struct Semiprime {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;

  /// Validating constructor from the two prime factors (any order).
  static Semiprime from_factors(std::int64_t a, std::int64_t b);

  friend bool operator==(const Semiprime&, const Semiprime&) = default;
};

enum class SemiprimeErrorKind {
  Even,
  TooSmall,
  TooLarge,
  Prime,
  PrimePower,
  ThreeOrMoreFactors,
};

class SemiprimeError : public InvalidInput {
 public:
  SemiprimeError(SemiprimeErrorKind kind, const std::string& what)
      : InvalidInput(what), kind_(kind) {}
  SemiprimeErrorKind kind() const noexcept { return kind_; }

 private:
  SemiprimeErrorKind kind_;
};

inline constexpr std::int64_t kDefaultFactorCap = 1'000'000;

/// Ground-truth factorization by trial division. Test and oracle use only.
Semiprime factor_semiprime(std::int64_t n, std::int64_t cap = kDefaultFactorCap);

bool is_prime(std::int64_t n);

/// Number of integers in [1, n] coprime to n.
std::int64_t euler_phi(std::int64_t n);

enum class GcdKind { Unit, SharesP, SharesQ, MultipleOfN };

struct GcdClass {
  GcdKind kind = GcdKind::Unit;
  std::int64_t gcd = 1;
};

/// Classifies gcd_conv(ell mod N, N) against the factor pair of `s`.
GcdClass classify(std::int64_t ell, const Semiprime& s);

/// "num/den" with the reduced fraction.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace gausshor
