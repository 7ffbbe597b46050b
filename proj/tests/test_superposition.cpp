#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gausshor/gauss_kernels.hpp"
#include "gausshor/superposition.hpp"

using namespace gausshor;

namespace {

const Semiprime k91{91, 7, 13};

// P_B(n0) = (1/N^3) sum_l |sum_m exp(2 pi i (m^2 l + m n0)/N)|^2, by brute force.
double brute_p_b(std::int64_t n0, std::int64_t n) {
  double total = 0;
  for (std::int64_t l = 0; l < n; ++l) total += std::norm(eval_W(n0, l, n));
  return total / n;
}

}  // namespace

TEST(Exact, MarginalValues91) {
  const auto run = run_exact(91);
  const auto pb = p_b_distribution(run);
  EXPECT_NEAR(pb.prob_of(0), 325.0 / 8281, 1e-12);
  EXPECT_NEAR(pb.prob_of(14), 156.0 / 8281, 1e-12);
  EXPECT_NEAR(pb.prob_of(26), 150.0 / 8281, 1e-12);
  EXPECT_NEAR(pb.prob_of(4), 72.0 / 8281, 1e-12);
  EXPECT_NEAR(pb.prob_of(4), brute_p_b(4, 91), 1e-12);
}

TEST(Exact, ClosedFormsAgainstBruteForce) {
  for (std::int64_t n : {15, 21, 33, 35, 55, 77, 91}) {
    const Semiprime s = factor_semiprime(n);
    Rational total = 0;
    for (std::int64_t n0 = 0; n0 < n; ++n0) {
      total += p_b_closed(s, n0);
      ASSERT_NEAR(to_double(p_b_closed(s, n0)), brute_p_b(n0, n), 1e-12) << n << " " << n0;
    }
    EXPECT_EQ(total, Rational(1)) << n;
  }
  EXPECT_EQ(normalization_closed(k91, 0), Rational(325, 91));
  EXPECT_EQ(normalization_closed(k91, 14), Rational(156, 91));
  EXPECT_EQ(normalization_closed(k91, 26), Rational(150, 91));
  EXPECT_EQ(normalization_closed(k91, 4), Rational(72, 91));
}

TEST(Exact, PrintedFormulaDiverges) {
  // The quoted P_B expression differs from the brute force for shared-factor
  // outcomes and does not normalize; it is kept only as a reference.
  EXPECT_NE(p_b_printed(k91, 14), p_b_closed(k91, 14));
  EXPECT_NEAR(useful_mass_printed(k91), 0.3945, 5e-4);
}

TEST(Exact, SuccessMass) {
  const auto sm = success_mass(run_exact(91));
  EXPECT_NEAR(sm.total_useful, 3097.0 / 8281, 1e-12);
  EXPECT_NEAR(sm.p_b_zero + sm.p_b_factor_multiple + sm.p_b_coprime, 1.0, 1e-12);
  EXPECT_NEAR(sm.p_b_coprime, 72.0 * 72 / 8281, 1e-12);
}

TEST(Exact, ConditionalFactorMass) {
  const auto run = run_exact(91);
  EXPECT_NEAR(factor_mass_a(run, 0), 162.0 / 325, 1e-12);
  EXPECT_NEAR(factor_mass_a(run, 14), 84.0 / 156, 1e-12);
  EXPECT_LT(factor_mass_a(run, 4), 1e-12);
  EXPECT_EQ(factor_mass_closed(k91, 0), Rational(162, 325));
  EXPECT_EQ(factor_mass_closed(k91, 14), Rational(84, 156));
  EXPECT_EQ(factor_mass_closed(k91, 4), Rational(0));
  const auto cond0 = conditional_a(run.psi2, 0);
  EXPECT_NEAR(cond0.prob_of(0), 91.0 / 325, 1e-12);
  const auto cond4 = conditional_a(run.psi2, 4);
  for (std::int64_t l = 0; l < 91; ++l)
    if (std::gcd(l, std::int64_t{91}) == 1) EXPECT_NEAR(cond4.prob_of(l), 1.0 / 72, 1e-12);
}

TEST(Exact, RejectsNonSemiprime) {
  EXPECT_THROW(run_exact(105), InvalidInput);
  EXPECT_THROW(run_exact(49), InvalidInput);
}

TEST(Qubit, StreamingMatchesDense) {
  const auto dense = run_qubit_dense(15, 8);
  const auto streamed = run_qubit(15, 8);
  const auto mb = marginal_b(dense);
  for (std::int64_t k = 0; k < 256; ++k) ASSERT_NEAR(streamed.p_b.prob_of(k), mb.prob_of(k), 1e-13) << k;
}

TEST(Qubit, ThreadCountInvariant) {
  const auto a = run_qubit(21, 9, 1), b = run_qubit(21, 9, 4);
  for (std::size_t i = 0; i < a.p_b.size(); ++i) ASSERT_EQ(a.p_b.prob(i), b.p_b.prob(i));
}

TEST(Qubit, PeakIndex) {
  EXPECT_EQ(nearest_peak_index(24, 21, 9), 1);
  EXPECT_EQ(nearest_peak_index(49, 21, 9), 2);
  EXPECT_EQ(nearest_peak_index(0, 21, 9), 0);
  EXPECT_FALSE(nearest_peak_index(36, 21, 9).has_value());
}

TEST(Qubit, PeakMassAboveWorstCaseBound) {
  // The worst-case sinc^2 bound is 4/pi^2; the average over bin offsets is higher.
  for (auto [n, q] : std::vector<std::pair<std::int64_t, int>>{{15, 9}, {21, 9}}) {
    const double mass = qubit_peak_mass(run_qubit(n, q));
    EXPECT_GE(mass, 0.40) << n;
    EXPECT_GE(mass, 4.0 / (std::numbers::pi * std::numbers::pi)) << n;
  }
  EXPECT_NEAR(qubit_peak_mass(run_qubit(21, 9)), 0.7878, 1e-3);
}

TEST(Qubit, ConditionalAfterPeakTracksExact) {
  const auto exact = run_exact(21);
  const auto run = run_qubit(21, 9);
  for (std::int64_t j = 0; j < 21; ++j) {
    const std::int64_t pos = (j * 512 * 2 + 21) / 42;
    const auto cond = conditional_after_peak(run, pos);
    EXPECT_NEAR(factor_mass(cond, 21), factor_mass_a(exact, j), 0.02) << j;
  }
  EXPECT_THROW(conditional_after_peak(run, 36), InvalidInput);
}

TEST(Qubit, RemainderDroppedIsClose) {
  const auto approx = p_b_prime_without_remainder(21, 9);
  const auto run = run_qubit(21, 9);
  double diff = 0;
  for (std::size_t k = 0; k < approx.size(); ++k) diff += std::abs(approx[k] - run.p_b.prob(k));
  EXPECT_LT(diff, 0.2);
}

TEST(Qubit, StreamingLimit) {
  EXPECT_THROW(run_qubit(15, kMaxStreamingQubits + 1), InvalidInput);
}

TEST(Driver, ExactAndQubit) {
  for (std::int64_t n : {15, 21, 35, 91}) {
    const auto r = sample_factor_driver(n, SuperpositionMode::Exact, 0, 100, 1);
    ASSERT_TRUE(r.success) << n;
    EXPECT_EQ(n % r.factor, 0);
  }
  const auto r = sample_factor_driver(21, SuperpositionMode::Qubit, 9, 100, 2);
  EXPECT_TRUE(r.success);
}

TEST(Truncated, DivisorsStandOut) {
  for (const auto& row : truncated_comparison(91, 5)) {
    if (row.divides) EXPECT_NEAR(row.truncated_abs, 1.0, 1e-13);
    EXPECT_GE(row.ell, 1);
  }
  EXPECT_EQ(truncated_comparison(91, 5).size(), 91u);
}
