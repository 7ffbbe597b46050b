#include "gausshor/numtheory.hpp"

#include <numeric>
#include <vector>

namespace gausshor {

std::int64_t gcd_conv(std::int64_t a, std::int64_t n) {
  if (n <= 0) throw InvalidInput("gcd_conv: modulus must be positive");
  if (a < 0) throw InvalidInput("gcd_conv: argument must be nonnegative");
  if (a == 0) return n;
  return std::gcd(a, n);
}

std::int64_t count_upper(std::int64_t numerator, std::int64_t denominator) {
  if (denominator < 1) throw InvalidInput("count_upper: denominator must be >= 1");
  if (numerator < 1) throw InvalidInput("count_upper: numerator must be >= 1");
  return numerator / denominator + 1;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

// Prime factors with multiplicity, ascending.
std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    while (n % d == 0) {
      out.push_back(d);
      n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

Semiprime Semiprime::from_factors(std::int64_t a, std::int64_t b) {
  if (a > b) std::swap(a, b);
  if (a == b) throw SemiprimeError(SemiprimeErrorKind::PrimePower, "factors must be distinct");
  if (a < 3 || !is_prime(a) || !is_prime(b))
    throw InvalidInput("semiprime factors must be odd primes");
  return Semiprime{a * b, a, b};
}

Semiprime factor_semiprime(std::int64_t n, std::int64_t cap) {
  const std::string tag = "n=" + std::to_string(n) + ": ";
  if (n % 2 == 0) throw SemiprimeError(SemiprimeErrorKind::Even, tag + "even number");
  if (n < 3) throw SemiprimeError(SemiprimeErrorKind::TooSmall, tag + "too small");
  if (n > cap)
    throw SemiprimeError(SemiprimeErrorKind::TooLarge, tag + "exceeds cap " + std::to_string(cap));

  const auto f = prime_factors(n);
  if (f.size() == 1) throw SemiprimeError(SemiprimeErrorKind::Prime, tag + "prime");
  if (f.front() == f.back())
    throw SemiprimeError(SemiprimeErrorKind::PrimePower, tag + "prime power");
  if (f.size() >= 3)
    throw SemiprimeError(SemiprimeErrorKind::ThreeOrMoreFactors,
                         tag + "three or more prime factors");
  return Semiprime{n, f[0], f[1]};
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw InvalidInput("euler_phi: n must be positive");
  std::int64_t result = n;
  std::int64_t prev = 0;
  for (auto f : prime_factors(n)) {
    if (f == prev) continue;
    result = result / f * (f - 1);
    prev = f;
  }
  return result;
}

GcdClass classify(std::int64_t ell, const Semiprime& s) {
  const std::int64_t g = gcd_conv(ell % s.n, s.n);
  if (g == s.n) return {GcdKind::MultipleOfN, g};
  if (g == s.p) return {GcdKind::SharesP, g};
  if (g == s.q) return {GcdKind::SharesQ, g};
  return {GcdKind::Unit, g};
}

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace gausshor
