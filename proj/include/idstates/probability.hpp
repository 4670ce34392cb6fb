#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "idstates/enumeration.hpp"
#include "idstates/frequency.hpp"
#include "idstates/stabilizer.hpp"

namespace idstates {

/// K! / prod(parts[i]!). Throws if the parts do not sum to K.
BigInt multinomial(int k, std::span<const int> parts);

/// Probability of drawing g1 from p and then g2 from q.
template <class Scalar>
Scalar ordered_pair_probability(const PairMatrix& pair,
                                const FrequencyVector<Scalar>& p,
                                const FrequencyVector<Scalar>& q);

/// Probability of an identity state when one draw comes from p and the other
/// from q. Zero when the vectors have fewer positions than the state has
/// distinct objects.
template <class Scalar>
Scalar state_probability(const IdentityState& state,
                         const FrequencyVector<Scalar>& p,
                         const FrequencyVector<Scalar>& q);

/// Same-distribution form (both draws from p). Equal to
/// state_probability(state, p, p).
template <class Scalar>
Scalar state_probability_same(const IdentityState& state,
                              const FrequencyVector<Scalar>& p);

/// state_probability for each state, computed in parallel over states.
template <class Scalar>
std::vector<Scalar> state_distribution(std::span<const IdentityState> states,
                                       const FrequencyVector<Scalar>& p,
                                       const FrequencyVector<Scalar>& q);

template <class Scalar>
std::vector<Scalar> state_distribution_serial(
    std::span<const IdentityState> states, const FrequencyVector<Scalar>& p,
    const FrequencyVector<Scalar>& q);

/// Upper bound on I^(2K) for the exhaustive oracle unless forced.
inline constexpr double kBruteForceGuard = 1e8;

/// Exhaustive oracle: sums the probability of every ordered outcome
/// (K draws from p, K draws from q) onto the canonical state matrix of its
/// pair. Shares no code with state_probability beyond the state map itself.
template <class Scalar>
std::map<StateMatrix, Scalar> brute_force_state_distribution(
    int k, const FrequencyVector<Scalar>& p, const FrequencyVector<Scalar>& q,
    bool force = false);

}  // namespace idstates
