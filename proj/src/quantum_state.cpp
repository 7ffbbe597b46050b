#include "gausshor/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_set>

#include "gausshor/compensated.hpp"

namespace gausshor {

std::size_t amplitude_cap() {
  if (const char* env = std::getenv("GAUSSHOR_MEM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultAmplitudeCap;
}

// ---- Distribution ---------------------------------------------------------

Distribution::Distribution(std::vector<std::int64_t> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size()) throw InvalidInput("Distribution: label/probability size mismatch");
  if (probs_.empty()) throw InvalidInput("Distribution: empty");
  CompensatedSum total;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw IntegrityError("Distribution: negative or non-finite probability");
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > kNormTolerance)
    throw IntegrityError("Distribution: probabilities sum to " + std::to_string(total.value()));
  std::unordered_set<std::int64_t> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) throw InvalidInput("Distribution: duplicate labels");
}

Distribution Distribution::from_weights(std::vector<std::int64_t> labels, std::vector<double> weights) {
  CompensatedSum total;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidInput("Distribution: negative weight");
    total.add(w);
  }
  const double z = total.value();
  if (!(z > 0.0)) throw InvalidInput("Distribution: total weight is zero");
  for (double& w : weights) w /= z;
  return Distribution(std::move(labels), std::move(weights));
}

double Distribution::prob_of(std::int64_t label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return probs_[i];
  return 0.0;
}

std::vector<std::int64_t> iota_labels(std::size_t n) {
  std::vector<std::int64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::int64_t>(i);
  return out;
}

CdfSampler::CdfSampler(const Distribution& dist)
    : labels_(dist.labels().begin(), dist.labels().end()), cumulative_(dist.size()) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist.prob(i);
    cumulative_[i] = acc;
  }
}

std::size_t CdfSampler::sample_index(Rng& rng) const {
  // Scale by the realized total so rounding never leaves a gap at the top.
  const double u = uniform01(rng) * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  // upper_bound never lands on a zero-probability entry since u < total.
  return std::min<std::size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
}

std::int64_t CdfSampler::sample(Rng& rng) const { return labels_[sample_index(rng)]; }

std::int64_t sample(const Distribution& dist, Rng& rng) { return CdfSampler(dist).sample(rng); }

// ---- BipartiteState -------------------------------------------------------

void check_cap(std::size_t dim_a, std::size_t dim_b, std::size_t cap) {
  if (dim_a == 0 || dim_b == 0) throw InvalidInput("state dimensions must be >= 1");
  if (dim_a > std::numeric_limits<std::size_t>::max() / dim_b || dim_a * dim_b > cap)
    throw CapExceeded("state of " + std::to_string(dim_a) + " x " + std::to_string(dim_b) +
                      " amplitudes exceeds cap " + std::to_string(cap));
}

BipartiteState::BipartiteState(std::size_t dim_a, std::size_t dim_b, std::vector<Complex> amps,
                               std::vector<std::int64_t> labels_b)
    : dim_a_(dim_a), dim_b_(dim_b), amps_(std::move(amps)), labels_b_(std::move(labels_b)) {
  if (dim_a_ == 0 || dim_b_ == 0) throw InvalidInput("state dimensions must be >= 1");
  if (amps_.size() != dim_a_ * dim_b_) throw InvalidInput("amplitude count does not match dimensions");
  if (labels_b_.empty()) labels_b_ = iota_labels(dim_b_);
  if (labels_b_.size() != dim_b_) throw InvalidInput("B label count does not match dim_b");
  const double norm = norm_squared();
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw IntegrityError("state norm^2 is " + std::to_string(norm));
}

std::size_t BipartiteState::index_of_b(std::int64_t label) const {
  auto it = std::find(labels_b_.begin(), labels_b_.end(), label);
  if (it == labels_b_.end()) throw InvalidInput("no B label " + std::to_string(label));
  return static_cast<std::size_t>(it - labels_b_.begin());
}

double BipartiteState::norm_squared() const {
  CompensatedSum acc;
  for (const auto& z : amps_) acc.add(std::norm(z));
  return acc.value();
}

BipartiteState uniform_product(std::size_t dim_a, std::size_t dim_b, std::size_t cap) {
  check_cap(dim_a, dim_b, cap);
  const double a = 1.0 / std::sqrt(static_cast<double>(dim_a) * static_cast<double>(dim_b));
  return BipartiteState(dim_a, dim_b, std::vector<Complex>(dim_a * dim_b, Complex(a, 0.0)));
}

BipartiteState apply_quadratic_phase(const BipartiteState& state, std::int64_t n) {
  if (n < 1) throw InvalidInput("apply_quadratic_phase: N must be >= 1");
  const std::uint64_t N = n;
  std::vector<Complex> table(N);
  for (std::uint64_t k = 0; k < N; ++k) table[k] = unit_phase(k, N);

  std::vector<Complex> out(state.amps().begin(), state.amps().end());
  const std::size_t db = state.dim_b();
  for (std::size_t l = 0; l < state.dim_a(); ++l) {
    const std::uint64_t lr = l % N;
    for (std::size_t m = 0; m < db; ++m) {
      const std::uint64_t mr = m % N;
      const std::uint64_t k = (mr * mr % N) * lr % N;
      out[l * db + m] *= table[k];
    }
  }
  return BipartiteState(state.dim_a(), db, std::move(out),
                        std::vector<std::int64_t>(state.labels_b().begin(), state.labels_b().end()));
}

namespace {

BipartiteState transform_rows(const BipartiteState& state, int sign) {
  const std::size_t da = state.dim_a();
  const std::size_t db = state.dim_b();
  const double scale = 1.0 / std::sqrt(static_cast<double>(db));
  std::vector<Complex> out(da * db);
  for (std::size_t l = 0; l < da; ++l) {
    auto row = dft(state.row(l), sign);
    for (std::size_t m = 0; m < db; ++m) out[l * db + m] = row[m] * scale;
  }
  // B labels become Fourier indices.
  return BipartiteState(da, db, std::move(out));
}

std::vector<Complex> transform_vector(std::span<const Complex> vec, int sign) {
  if (vec.empty()) throw InvalidInput("qft_vector: empty input");
  auto out = dft(vec, sign);
  const double scale = 1.0 / std::sqrt(static_cast<double>(vec.size()));
  for (auto& z : out) z *= scale;
  return out;
}

}  // namespace

BipartiteState qft_b(const BipartiteState& state) { return transform_rows(state, +1); }
BipartiteState inverse_qft_b(const BipartiteState& state) { return transform_rows(state, -1); }

std::vector<Complex> qft_vector(std::span<const Complex> vec) { return transform_vector(vec, +1); }
std::vector<Complex> inverse_qft_vector(std::span<const Complex> vec) { return transform_vector(vec, -1); }

Distribution probabilities(std::span<const Complex> vec) {
  std::vector<double> w(vec.size());
  for (std::size_t i = 0; i < vec.size(); ++i) w[i] = std::norm(vec[i]);
  return Distribution::from_weights(iota_labels(vec.size()), std::move(w));
}

Distribution marginal_a(const BipartiteState& state) {
  std::vector<double> probs(state.dim_a());
  for (std::size_t l = 0; l < state.dim_a(); ++l) {
    CompensatedSum acc;
    for (const auto& z : state.row(l)) acc.add(std::norm(z));
    probs[l] = acc.value();
  }
  return Distribution(iota_labels(state.dim_a()), std::move(probs));
}

Distribution marginal_b(const BipartiteState& state) {
  const std::size_t db = state.dim_b();
  std::vector<CompensatedSum> acc(db);
  for (std::size_t l = 0; l < state.dim_a(); ++l)
    for (std::size_t m = 0; m < db; ++m) acc[m].add(std::norm(state.amp(l, m)));
  std::vector<double> probs(db);
  for (std::size_t m = 0; m < db; ++m) probs[m] = acc[m].value();
  return Distribution(std::vector<std::int64_t>(state.labels_b().begin(), state.labels_b().end()),
                      std::move(probs));
}

CollapseResult collapse_b(const BipartiteState& state, std::int64_t outcome_label) {
  const std::size_t m = state.index_of_b(outcome_label);
  std::vector<Complex> col(state.dim_a());
  CompensatedSum norm;
  for (std::size_t l = 0; l < state.dim_a(); ++l) {
    col[l] = state.amp(l, m);
    norm.add(std::norm(col[l]));
  }
  if (norm.value() <= 1e-12)
    throw InvalidInput("B outcome " + std::to_string(outcome_label) + " has zero probability");
  const double scale = 1.0 / std::sqrt(norm.value());
  for (auto& z : col) z *= scale;
  return {outcome_label, std::move(col)};
}

CollapseResult measure_b(const BipartiteState& state, Rng& rng) {
  return collapse_b(state, sample(marginal_b(state), rng));
}

Distribution conditional_a(const BipartiteState& state, std::int64_t n0) {
  const std::size_t m = state.index_of_b(n0);
  std::vector<double> w(state.dim_a());
  CompensatedSum total;
  for (std::size_t l = 0; l < state.dim_a(); ++l) {
    w[l] = std::norm(state.amp(l, m));
    total.add(w[l]);
  }
  if (total.value() <= 1e-12)
    throw InvalidInput("conditioning on B outcome " + std::to_string(n0) + " of zero probability");
  return Distribution::from_weights(iota_labels(state.dim_a()), std::move(w));
}

double purity_a(const BipartiteState& state) {
  const std::size_t da = state.dim_a();
  const std::size_t db = state.dim_b();
  // Tr(rho_A^2) = Tr(rho_B^2); use the Gram matrix of the shorter side.
  const bool by_rows = da <= db;
  const std::size_t outer = by_rows ? da : db;
  const std::size_t inner = by_rows ? db : da;
  auto at = [&](std::size_t i, std::size_t k) { return by_rows ? state.amp(i, k) : state.amp(k, i); };

  CompensatedSum total;
  for (std::size_t i = 0; i < outer; ++i) {
    for (std::size_t j = i; j < outer; ++j) {
      ComplexCompensatedSum dot;
      for (std::size_t k = 0; k < inner; ++k) dot.add(at(i, k) * std::conj(at(j, k)));
      const double v = std::norm(dot.value());
      total.add(i == j ? v : 2.0 * v);
    }
  }
  return total.value();
}

Rational purity_closed(const Semiprime& s) {
  return Rational(4 * s.n - 2 * s.p - 2 * s.q + 1, s.n * s.n);
}

}  // namespace gausshor
