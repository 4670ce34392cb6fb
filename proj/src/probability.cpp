#include "idstates/probability.hpp"

#include <omp.h>

#include <cmath>
#include <numeric>

namespace idstates {

FrequencyVector<double> to_floating(const FrequencyVector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v.entries()) out.push_back(x.get_d());
  return FrequencyVector<double>(std::move(out));
}

BigInt multinomial(int k, std::span<const int> parts) {
  if (k < 0) throw InputError("multinomial: negative total");
  long total = 0;
  for (int x : parts) {
    if (x < 0) throw InputError("multinomial: negative part");
    total += x;
  }
  if (total != k) {
    throw InputError("multinomial: parts sum to " + std::to_string(total) +
                     ", expected " + std::to_string(k));
  }
  // Product of binomials C(running, part) keeps intermediates exact.
  BigInt result = 1;
  unsigned long running = 0;
  for (int x : parts) {
    running += static_cast<unsigned long>(x);
    BigInt b;
    mpz_bin_uiui(b.get_mpz_t(), running, static_cast<unsigned long>(x));
    result *= b;
  }
  return result;
}

namespace {

template <class Scalar>
void require_same_length(const FrequencyVector<Scalar>& p,
                         const FrequencyVector<Scalar>& q) {
  if (p.size() != q.size()) {
    throw InputError("p and q have different lengths (" +
                     std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()) + ")");
  }
}

// powers[i][e] = v[i]^e for e = 0..k.
template <class Scalar>
std::vector<std::vector<Scalar>> power_table(const FrequencyVector<Scalar>& v,
                                             int k) {
  std::vector<std::vector<Scalar>> table(v.size());
  for (int i = 0; i < v.size(); ++i) {
    auto& row = table[i];
    row.reserve(k + 1);
    row.push_back(Scalar(1));
    for (int e = 1; e <= k; ++e) row.push_back(row.back() * v[i]);
  }
  return table;
}

// Sum over injective assignments of the N column slots to objects of
//   prod_j left[i_j]^{a_j} * right[i_j]^{b_j}.
// Branches whose partial product is zero are cut.
template <class Scalar>
class InjectiveSum {
 public:
  InjectiveSum(const std::vector<std::vector<Scalar>>& left,
               const std::vector<std::vector<Scalar>>& right)
      : left_(left), right_(right), used_(left.size(), false) {}

  Scalar operator()(std::span<const int> a, std::span<const int> b) {
    a_ = a;
    b_ = b;
    total_ = 0;
    if (a.size() <= left_.size()) descend(0, Scalar(1));
    return total_;
  }

 private:
  void descend(std::size_t slot, const Scalar& partial) {
    if (slot == a_.size()) {
      total_ += partial;
      return;
    }
    for (std::size_t i = 0; i < left_.size(); ++i) {
      if (used_[i]) continue;
      Scalar factor = left_[i][a_[slot]] * right_[i][b_[slot]];
      if (factor == 0) continue;
      used_[i] = true;
      descend(slot + 1, partial * factor);
      used_[i] = false;
    }
  }

  const std::vector<std::vector<Scalar>>& left_;
  const std::vector<std::vector<Scalar>>& right_;
  std::vector<bool> used_;
  std::span<const int> a_, b_;
  Scalar total_ = 0;
};

struct NonzeroColumns {
  std::vector<int> top;
  std::vector<int> bottom;
};

NonzeroColumns nonzero_columns(const PairMatrix& pair) {
  NonzeroColumns cols;
  for (int i = 0; i < pair.alphabet_size(); ++i) {
    auto c = pair.column(i);
    if (c.top == 0 && c.bottom == 0) continue;
    cols.top.push_back(c.top);
    cols.bottom.push_back(c.bottom);
  }
  return cols;
}

template <class Scalar>
Scalar prefactor(const IdentityState& state, const NonzeroColumns& cols,
                 int numerator_factor) {
  const int k = state.representative.draw_size();
  BigInt coef = multinomial(k, cols.top) * multinomial(k, cols.bottom) *
                numerator_factor;
  // Both products coincide term-by-term only when some relabeling swaps the
  // two rows, i.e. the state matrix is symmetric.
  BigInt denom = BigInt(state.is_symmetric ? 2 : 1) *
                 BigInt(static_cast<unsigned long>(state.stabilizer_size));
  return from_integer<Scalar>(coef) / from_integer<Scalar>(denom);
}

}  // namespace

template <class Scalar>
Scalar ordered_pair_probability(const PairMatrix& pair,
                                const FrequencyVector<Scalar>& p,
                                const FrequencyVector<Scalar>& q) {
  require_same_length(p, q);
  if (pair.alphabet_size() != p.size()) {
    throw InputError("pair alphabet size does not match frequency length");
  }
  const int k = pair.draw_size();
  Scalar prob = from_integer<Scalar>(multinomial(k, pair.first().counts()) *
                                     multinomial(k, pair.second().counts()));
  for (int i = 0; i < p.size(); ++i) {
    for (int e = 0; e < pair.first()[i]; ++e) prob *= p[i];
    for (int e = 0; e < pair.second()[i]; ++e) prob *= q[i];
  }
  return prob;
}

template <class Scalar>
Scalar state_probability(const IdentityState& state,
                         const FrequencyVector<Scalar>& p,
                         const FrequencyVector<Scalar>& q) {
  require_same_length(p, q);
  if (state.n_distinct > p.size()) return Scalar(0);
  const int k = state.representative.draw_size();
  const auto cols = nonzero_columns(state.representative);
  const auto p_pow = power_table(p, k);
  const auto q_pow = power_table(q, k);
  InjectiveSum<Scalar> sum(p_pow, q_pow);
  Scalar total = sum(cols.top, cols.bottom);
  total += sum(cols.bottom, cols.top);
  return prefactor<Scalar>(state, cols, 1) * total;
}

template <class Scalar>
Scalar state_probability_same(const IdentityState& state,
                              const FrequencyVector<Scalar>& p) {
  if (state.n_distinct > p.size()) return Scalar(0);
  const int k = state.representative.draw_size();
  const auto cols = nonzero_columns(state.representative);
  std::vector<int> combined(cols.top.size());
  for (std::size_t j = 0; j < combined.size(); ++j) {
    combined[j] = cols.top[j] + cols.bottom[j];
  }
  const auto p_pow = power_table(p, 2 * k);
  const std::vector<std::vector<Scalar>> ones(
      p.size(), std::vector<Scalar>(2 * k + 1, Scalar(1)));
  const std::vector<int> zeros(combined.size(), 0);
  InjectiveSum<Scalar> sum(p_pow, ones);
  return prefactor<Scalar>(state, cols, 2) * sum(combined, zeros);
}

template <class Scalar>
std::vector<Scalar> state_distribution(std::span<const IdentityState> states,
                                       const FrequencyVector<Scalar>& p,
                                       const FrequencyVector<Scalar>& q) {
  require_same_length(p, q);
  std::vector<Scalar> out(states.size());
  const auto n = static_cast<std::int64_t>(states.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < n; ++s) {
    out[s] = state_probability(states[s], p, q);
  }
  return out;
}

template <class Scalar>
std::vector<Scalar> state_distribution_serial(
    std::span<const IdentityState> states, const FrequencyVector<Scalar>& p,
    const FrequencyVector<Scalar>& q) {
  std::vector<Scalar> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(state_probability(s, p, q));
  return out;
}

template <class Scalar>
std::map<StateMatrix, Scalar> brute_force_state_distribution(
    int k, const FrequencyVector<Scalar>& p, const FrequencyVector<Scalar>& q,
    bool force) {
  if (k < 1) throw InputError("draw size K must be at least 1");
  require_same_length(p, q);
  const int alphabet = p.size();
  if (!force && std::pow(static_cast<double>(alphabet), 2.0 * k) > kBruteForceGuard) {
    throw InputError("brute-force oracle would visit I^(2K) = " +
                     std::to_string(alphabet) + "^" + std::to_string(2 * k) +
                     " outcomes (limit 1e8); pass force to override");
  }

  // Each ordered sequence of k objects, folded onto its count vector. The
  // double loop below then covers all I^K x I^K ordered outcome pairs.
  auto fold = [&](const FrequencyVector<Scalar>& freq) {
    std::map<std::vector<int>, Scalar> by_counts;
    std::vector<int> seq(k, 0);
    while (true) {
      std::vector<int> counts(alphabet, 0);
      Scalar prob = 1;
      for (int x : seq) {
        ++counts[x];
        prob *= freq[x];
      }
      by_counts[counts] += prob;
      int pos = k - 1;
      while (pos >= 0 && ++seq[pos] == alphabet) seq[pos--] = 0;
      if (pos < 0) break;
    }
    return by_counts;
  };
  const auto first = fold(p);
  const auto second = fold(q);

  std::map<StateMatrix, Scalar> dist;
  for (const auto& [g1, p1] : first) {
    for (const auto& [g2, p2] : second) {
      StateMatrix m(k);
      for (int i = 0; i < alphabet; ++i) ++m.at(g1[i], g2[i]);
      dist[canonicalize(m)] += p1 * p2;
    }
  }
  return dist;
}

#define IDSTATES_INSTANTIATE(S)                                                \
  template S ordered_pair_probability<S>(const PairMatrix&,                    \
                                         const FrequencyVector<S>&,            \
                                         const FrequencyVector<S>&);           \
  template S state_probability<S>(const IdentityState&,                        \
                                  const FrequencyVector<S>&,                   \
                                  const FrequencyVector<S>&);                  \
  template S state_probability_same<S>(const IdentityState&,                   \
                                       const FrequencyVector<S>&);             \
  template std::vector<S> state_distribution<S>(                               \
      std::span<const IdentityState>, const FrequencyVector<S>&,               \
      const FrequencyVector<S>&);                                              \
  template std::vector<S> state_distribution_serial<S>(                        \
      std::span<const IdentityState>, const FrequencyVector<S>&,               \
      const FrequencyVector<S>&);                                              \
  template std::map<StateMatrix, S> brute_force_state_distribution<S>(         \
      int, const FrequencyVector<S>&, const FrequencyVector<S>&, bool);

IDSTATES_INSTANTIATE(Rational)
IDSTATES_INSTANTIATE(double)

#undef IDSTATES_INSTANTIATE

}  // namespace idstates
