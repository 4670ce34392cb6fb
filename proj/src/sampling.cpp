#include "idstates/sampling.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <vector>

namespace idstates {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over (seed, stream).
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

int sample_index(std::span<const double> cumulative, Engine& engine) {
  const double u = uniform01(engine) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
  if (it == cumulative.end()) --it;
  return static_cast<int>(it - cumulative.begin());
}

FrequencyVector<Rational> random_rational_frequencies(int alphabet,
                                                      Engine& engine,
                                                      double zero_weight_chance) {
  if (alphabet < 1) throw InputError("alphabet size must be at least 1");
  std::vector<long> weights(alphabet);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& w : weights) {
      w = uniform01(engine) < zero_weight_chance
              ? 0
              : 1 + static_cast<long>(engine() % 9);
      total += w;
    }
  }
  std::vector<Rational> entries;
  for (long w : weights) entries.push_back(from_ratio<Rational>(w, total));
  return FrequencyVector<Rational>(std::move(entries));
}

FrequencyVector<double> sample_dirichlet(int alphabet, double concentration,
                                         Engine& engine) {
  if (alphabet < 1) throw InputError("alphabet size must be at least 1");
  if (!(concentration > 0)) throw InputError("concentration must be positive");
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> x(alphabet);
  double total = 0;
  while (!(total > 0)) {
    total = 0;
    for (auto& v : x) total += (v = gamma(engine));
  }
  for (auto& v : x) v /= total;
  return FrequencyVector<double>(std::move(x));
}

double MonteCarloResult::frequency(const StateMatrix& canonical) const {
  auto it = counts.find(canonical);
  if (it == counts.end() || samples == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(samples);
}

Rational MonteCarloResult::exact_frequency(const StateMatrix& canonical) const {
  auto it = counts.find(canonical);
  if (it == counts.end() || samples == 0) return Rational(0);
  Rational r(BigInt(std::to_string(it->second)), BigInt(std::to_string(samples)));
  r.canonicalize();
  return r;
}

namespace {

struct Sampler {
  int k;
  int alphabet;
  std::vector<double> cum_p, cum_q;

  Sampler(int k_, const FrequencyVector<double>& p, const FrequencyVector<double>& q)
      : k(k_), alphabet(p.size()) {
    if (k < 1) throw InputError("draw size K must be at least 1");
    if (p.size() != q.size()) throw InputError("p and q have different lengths");
    cum_p.resize(alphabet);
    cum_q.resize(alphabet);
    std::partial_sum(p.entries().begin(), p.entries().end(), cum_p.begin());
    std::partial_sum(q.entries().begin(), q.entries().end(), cum_q.begin());
  }

  void run_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t n,
                 std::map<StateMatrix, std::uint64_t>& counts) const {
    Engine engine(stream_seed(seed, chunk));
    std::vector<int> g1(alphabet), g2(alphabet);
    for (std::uint64_t s = 0; s < n; ++s) {
      std::fill(g1.begin(), g1.end(), 0);
      std::fill(g2.begin(), g2.end(), 0);
      for (int d = 0; d < k; ++d) ++g1[draw(cum_p, engine)];
      for (int d = 0; d < k; ++d) ++g2[draw(cum_q, engine)];
      StateMatrix m(k);
      for (int i = 0; i < alphabet; ++i) ++m.at(g1[i], g2[i]);
      ++counts[canonicalize(m)];
    }
  }

  // Zero-probability objects are never selected: upper_bound moves past
  // entries whose cumulative weight equals the draw.
  static int draw(const std::vector<double>& cum, Engine& engine) {
    return sample_index(cum, engine);
  }
};

std::uint64_t chunk_count(std::uint64_t samples) {
  return (samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
}

std::uint64_t chunk_size(std::uint64_t samples, std::uint64_t chunk) {
  return std::min(kMonteCarloChunk, samples - chunk * kMonteCarloChunk);
}

void require_samples(std::uint64_t samples) {
  if (samples < 1) throw InputError("sample count must be at least 1");
}

}  // namespace

MonteCarloResult monte_carlo_state_distribution(int k,
                                                const FrequencyVector<double>& p,
                                                const FrequencyVector<double>& q,
                                                std::uint64_t samples,
                                                std::uint64_t seed) {
  require_samples(samples);
  const Sampler sampler(k, p, q);
  MonteCarloResult result{samples, {}};
  const auto chunks = static_cast<std::int64_t>(chunk_count(samples));
#pragma omp parallel
  {
    std::map<StateMatrix, std::uint64_t> local;
#pragma omp for schedule(dynamic, 1) nowait
    for (std::int64_t c = 0; c < chunks; ++c) {
      sampler.run_chunk(seed, c, chunk_size(samples, c), local);
    }
#pragma omp critical(idstates_merge_samples)
    for (const auto& [m, n] : local) result.counts[m] += n;
  }
  return result;
}

MonteCarloResult monte_carlo_state_distribution_serial(
    int k, const FrequencyVector<double>& p, const FrequencyVector<double>& q,
    std::uint64_t samples, std::uint64_t seed) {
  require_samples(samples);
  const Sampler sampler(k, p, q);
  MonteCarloResult result{samples, {}};
  for (std::uint64_t c = 0; c < chunk_count(samples); ++c) {
    sampler.run_chunk(seed, c, chunk_size(samples, c), result.counts);
  }
  return result;
}

}  // namespace idstates
