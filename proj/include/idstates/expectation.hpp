#pragma once

#include <cstdint>

#include "idstates/frequency.hpp"

namespace idstates {

/// Closed form 1 - <p, q>; independent of the draw size K.
template <class Scalar>
Scalar expected_dissimilarity(const FrequencyVector<Scalar>& p,
                              const FrequencyVector<Scalar>& q);

/// Sum over identity states (for draw size k, I = len(p)) of
/// dissimilarity(state) * state_probability(state, p, q).
template <class Scalar>
Scalar expected_dissimilarity_via_states(int k, const FrequencyVector<Scalar>& p,
                                         const FrequencyVector<Scalar>& q);

template <class Scalar>
struct ExpectationReport {
  Scalar e_pq = 0;
  Scalar e_pp = 0;
  Scalar e_qq = 0;
  /// (e_pp + e_qq) / 2
  Scalar avg_within = 0;
  /// e_pp > e_pq
  bool within_exceeds_between = false;
  /// avg_within - e_pq; always equals -<p - q, p - q> / 2.
  Scalar within_minus_between = 0;
  Scalar half_squared_distance = 0;
};

template <class Scalar>
ExpectationReport<Scalar> comparison_report(const FrequencyVector<Scalar>& p,
                                            const FrequencyVector<Scalar>& q);

struct PrevalenceOptions {
  int alphabet = 2;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double concentration = 1.0;
  /// Use q = p in every trial (negative control).
  bool identical = false;
};

struct PrevalenceResult {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  double fraction = 0;
  /// 95% Wilson score interval.
  double ci_low = 0;
  double ci_high = 0;
};

/// Fraction of Dirichlet-sampled (p, q) pairs with E[D(p,p)] > E[D(p,q)],
/// i.e. <p, p> < <p, q>. Trial t draws from stream_seed(seed, t).
PrevalenceResult prevalence_experiment(const PrevalenceOptions& options);
PrevalenceResult prevalence_experiment_serial(const PrevalenceOptions& options);

}  // namespace idstates
