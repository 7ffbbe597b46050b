#include <gtest/gtest.h>

#include <cstdlib>

#include "gausshor/gauss_kernels.hpp"
#include "gausshor/quantum_state.hpp"

using namespace gausshor;

TEST(Distribution, Validates) {
  EXPECT_NO_THROW(Distribution({0, 1}, {0.25, 0.75}));
  EXPECT_THROW(Distribution({0, 1}, {0.5, 0.6}), IntegrityError);
  EXPECT_THROW(Distribution({0, 1}, {-0.1, 1.1}), IntegrityError);
  EXPECT_THROW(Distribution({0, 0}, {0.5, 0.5}), InvalidInput);
  EXPECT_THROW(Distribution({0}, {0.5, 0.5}), InvalidInput);
  const auto d = Distribution::from_weights({3, 9}, {1.0, 3.0});
  EXPECT_DOUBLE_EQ(d.prob_of(9), 0.75);
  EXPECT_DOUBLE_EQ(d.prob_of(4), 0.0);
}

TEST(Sampler, FollowsDistributionAndSkipsZeros) {
  const Distribution d({10, 20, 30}, {0.2, 0.0, 0.8});
  CdfSampler sampler(d);
  Rng rng = trial_rng(5, 0);
  int hits10 = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto v = sampler.sample(rng);
    ASSERT_NE(v, 20);
    hits10 += (v == 10);
  }
  EXPECT_NEAR(hits10 / static_cast<double>(draws), 0.2, 0.015);
}

TEST(Sampler, Deterministic) {
  const Distribution d({0, 1, 2, 3}, {0.1, 0.2, 0.3, 0.4});
  Rng a = trial_rng(42, 7), b = trial_rng(42, 7), c = trial_rng(42, 8);
  std::vector<std::int64_t> xa, xb, xc;
  for (int i = 0; i < 50; ++i) {
    xa.push_back(sample(d, a));
    xb.push_back(sample(d, b));
    xc.push_back(sample(d, c));
  }
  EXPECT_EQ(xa, xb);
  EXPECT_NE(xa, xc);
}

TEST(Bipartite, NormChecked) {
  EXPECT_THROW(BipartiteState(2, 2, std::vector<Complex>(4, 1.0)), IntegrityError);
  EXPECT_NO_THROW(BipartiteState(2, 2, std::vector<Complex>(4, 0.5)));
}

TEST(Bipartite, CapEnforced) {
  EXPECT_THROW(uniform_product(1 << 13, 1 << 13, std::size_t{1} << 24), CapExceeded);
  EXPECT_THROW(check_cap(std::size_t{1} << 40, std::size_t{1} << 40, ~std::size_t{0}), CapExceeded);
}

TEST(Bipartite, EnvCap) {
  setenv("GAUSSHOR_MEM_CAP", "100", 1);
  EXPECT_EQ(amplitude_cap(), 100u);
  EXPECT_THROW(uniform_product(11, 11), CapExceeded);
  unsetenv("GAUSSHOR_MEM_CAP");
  EXPECT_EQ(amplitude_cap(), kDefaultAmplitudeCap);
}

TEST(Qft, RoundTrip) {
  std::vector<Complex> v(12);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = {0.1 * k, -0.05 * k * k};
  const auto back = inverse_qft_vector(qft_vector(v));
  for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(std::abs(back[k] - v[k]), 0.0, 1e-13);
}

TEST(Qft, UniformGoesToZeroBin) {
  const auto out = qft_vector(std::vector<Complex>(16, 0.25));
  EXPECT_NEAR(std::abs(out[0] - Complex(1, 0)), 0.0, 1e-14);
  for (std::size_t k = 1; k < 16; ++k) EXPECT_LT(std::abs(out[k]), 1e-14);
}

TEST(Pipeline, GivesShiftedGaussSums) {
  const std::int64_t n = 21;
  const auto psi = qft_b(apply_quadratic_phase(uniform_product(n, n), n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t l = 0; l < n; ++l)
    for (std::int64_t k = 0; k < n; ++k)
      ASSERT_NEAR(std::abs(psi.amp(l, k) - scale * eval_W(k, l, n)), 0.0, 1e-13);
}

TEST(Marginals, SumToOneAndCollapse) {
  const auto psi = qft_b(apply_quadratic_phase(uniform_product(15, 15), 15));
  const auto ma = marginal_a(psi), mb = marginal_b(psi);
  for (double p : ma.probs()) EXPECT_NEAR(p, 1.0 / 15, 1e-13);
  const auto c = collapse_b(psi, 0);
  double total = 0;
  for (auto z : c.state_a) total += std::norm(z);
  EXPECT_NEAR(total, 1.0, 1e-13);
  const auto cond = conditional_a(psi, 0);
  EXPECT_NEAR(cond.prob_of(0), std::norm(c.state_a[0]), 1e-15);
}

TEST(Measure, ReturnsSupportPoint) {
  const auto psi = qft_b(apply_quadratic_phase(uniform_product(15, 15), 15));
  Rng rng = trial_rng(3, 0);
  for (int i = 0; i < 50; ++i) {
    const auto r = measure_b(psi, rng);
    EXPECT_GT(marginal_b(psi).prob_of(r.outcome), 0.0);
  }
}

TEST(Purity, ProductAndEntangled) {
  EXPECT_NEAR(purity_a(uniform_product(5, 7)), 1.0, 1e-13);
  const auto phased = apply_quadratic_phase(uniform_product(15, 15), 15);
  const Semiprime s{15, 3, 5};
  EXPECT_NEAR(purity_a(phased), to_double(purity_closed(s)), 1e-12);
  EXPECT_NEAR(purity_a(qft_b(phased)), purity_a(phased), 1e-12);
  EXPECT_EQ(purity_closed(s), Rational(1, 5));
  EXPECT_EQ(purity_closed(Semiprime{91, 7, 13}), Rational(325, 8281));
}
