#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "idstates/enumeration.hpp"
#include "idstates/frequency.hpp"

namespace idstates {

/// All stochastic routines use std::mt19937_64. Independent streams are
/// seeded with splitmix64(seed, stream) so results do not depend on how
/// work is split across threads.
using Engine = std::mt19937_64;

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of one engine output.
double uniform01(Engine& engine);

/// Index drawn from the categorical distribution with cumulative weights.
int sample_index(std::span<const double> cumulative, Engine& engine);

/// Random exact frequency vector: integer weights 0..9 (each zero with
/// probability zero_weight_chance), at least one positive, normalized.
FrequencyVector<Rational> random_rational_frequencies(
    int alphabet, Engine& engine, double zero_weight_chance = 0.25);

/// Symmetric Dirichlet(concentration) via normalized Gamma variates.
FrequencyVector<double> sample_dirichlet(int alphabet, double concentration,
                                         Engine& engine);

struct MonteCarloResult {
  std::uint64_t samples = 0;
  /// Keyed by canonical state matrix at alphabet size I.
  std::map<StateMatrix, std::uint64_t> counts;

  double frequency(const StateMatrix& canonical) const;
  Rational exact_frequency(const StateMatrix& canonical) const;
};

/// Samples are drawn in fixed chunks of kMonteCarloChunk, chunk c using
/// stream_seed(seed, c); chunks run on OpenMP threads.
inline constexpr std::uint64_t kMonteCarloChunk = 1 << 16;

MonteCarloResult monte_carlo_state_distribution(int k,
                                                const FrequencyVector<double>& p,
                                                const FrequencyVector<double>& q,
                                                std::uint64_t samples,
                                                std::uint64_t seed);

MonteCarloResult monte_carlo_state_distribution_serial(
    int k, const FrequencyVector<double>& p, const FrequencyVector<double>& q,
    std::uint64_t samples, std::uint64_t seed);

}  // namespace idstates
