#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>

#include "idstates/probability.hpp"
#include "idstates/sampling.hpp"
#include "test_support.hpp"

using namespace idstates;
using namespace idstates::testing;

namespace {

DrawVector g(std::vector<int> v) { return DrawVector(std::move(v)); }

FrequencyVector<Rational> rat(std::vector<Rational> v) {
  return FrequencyVector<Rational>(std::move(v));
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// State probabilities from every ordered outcome, computed here without the
// library oracle: enumerate label sequences for both draws directly.
std::map<StateMatrix, Rational> outcome_enumeration(int k, const FrequencyVector<Rational>& p,
                                                    const FrequencyVector<Rational>& q) {
  const int alphabet = p.size();
  const auto seqs = all_sequences(k, alphabet);
  std::map<StateMatrix, Rational> dist;
  for (const auto& s1 : seqs) {
    Rational p1 = 1;
    for (int x : s1) p1 *= p[x];
    if (p1 == 0) continue;
    for (const auto& s2 : seqs) {
      Rational p2 = 1;
      for (int x : s2) p2 *= q[x];
      if (p2 == 0) continue;
      const PairMatrix pair(counts_of(s1, alphabet), counts_of(s2, alphabet));
      dist[canonicalize(state_matrix(pair))] += p1 * p2;
    }
  }
  return dist;
}

const IdentityState& find_state(const std::vector<IdentityState>& states, const PairMatrix& pair) {
  const auto m = canonicalize(state_matrix(pair));
  for (const auto& s : states) {
    if (s.canonical_matrix == m) return s;
  }
  FAIL("state not found");
  return states.front();
}

std::vector<FrequencyVector<Rational>> rational_suite(int alphabet) {
  std::vector<FrequencyVector<Rational>> out;
  out.push_back(uniform_frequencies<Rational>(alphabet));
  out.push_back(unit_frequencies<Rational>(alphabet, alphabet - 1));
  Engine engine(stream_seed(12345, alphabet));
  for (int i = 0; i < 4; ++i) out.push_back(random_rational_frequencies(alphabet, engine, 0.3));
  return out;
}

}  // namespace

TEST_CASE("multinomial coefficients") {
  const std::vector<int> a{1, 1}, b{2, 1}, c{2, 2, 1, 1}, z{0, 3, 0};
  CHECK(multinomial(2, a) == 2);
  CHECK(multinomial(3, b) == 3);
  const BigInt direct = factorial(6) / (factorial(2) * factorial(2) * factorial(1) * factorial(1));
  CHECK(direct == 180);
  CHECK(multinomial(6, c) == direct);
  CHECK(multinomial(3, z) == 1);
  CHECK_THROWS_AS(multinomial(4, b), InputError);
  const std::vector<int> neg{3, -1, 1};
  CHECK_THROWS_AS(multinomial(3, neg), InputError);
}

TEST_CASE("ordered pair probability") {
  const auto one = rat({1, 0});
  CHECK(ordered_pair_probability(PairMatrix(g({2, 0}), g({2, 0})), one, one) == 1);

  // 16 ordered outcomes of two K=2 draws over two objects, p = q uniform.
  const auto half = uniform_frequencies<Rational>(2);
  Rational brute = 0;
  for (const auto& s1 : all_sequences(2, 2)) {
    for (const auto& s2 : all_sequences(2, 2)) {
      if (counts_of(s1, 2) == g({1, 1}) && counts_of(s2, 2) == g({2, 0})) brute += Rational(1, 16);
    }
  }
  CHECK(brute == Rational(1, 8));
  CHECK(ordered_pair_probability(PairMatrix(g({1, 1}), g({2, 0})), half, half) == brute);

  Engine engine(3);
  for (int k = 1; k <= 3; ++k) {
    const auto p = random_rational_frequencies(3, engine);
    const auto q = random_rational_frequencies(3, engine);
    Rational total = 0;
    for (const auto& a : all_draws(k, 3)) {
      for (const auto& b : all_draws(k, 3)) total += ordered_pair_probability(PairMatrix(a, b), p, q);
    }
    CHECK(total == 1);
  }
  CHECK_THROWS_AS(ordered_pair_probability(PairMatrix(g({2, 0}), g({2, 0})), half,
                                           uniform_frequencies<Rational>(3)),
                  InputError);
}

TEST_CASE("row signature") {
  CHECK(row_signature(g({2, 0, 0, 0})).counts == std::vector<int>{3, 0, 1});
  CHECK(row_signature(g({1, 1, 0, 0})).counts == std::vector<int>{2, 2, 0});
  CHECK(row_signature(g({2, 1, 0, 0, 0, 0})).counts == std::vector<int>{4, 1, 1, 0});
  CHECK(rows_equivalent(g({2, 1, 0}), g({0, 1, 2})));
  CHECK_FALSE(rows_equivalent(g({2, 1, 0}), g({1, 1, 1})));
}

TEST_CASE("stabilizer size matches a brute-force count of fixing permutations") {
  auto brute = [](const PairMatrix& pair) {
    std::vector<PairMatrix::Column> cols;
    for (const auto& c : pair.columns()) {
      if (c.top || c.bottom) cols.push_back(c);
    }
    std::vector<int> perm(cols.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t fixing = 0;
    do {
      bool same = true;
      for (std::size_t i = 0; i < cols.size(); ++i) same = same && cols[perm[i]] == cols[i];
      fixing += same;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return fixing;
  };

  const PairMatrix a(g({1, 1, 0, 0}), g({0, 0, 1, 1}));
  CHECK(brute(a) == 4);
  CHECK(stabilizer_size(a) == 4);
  CHECK(stabilizer_size(PairMatrix(g({2, 1, 0}), g({0, 1, 2}))) == 1);
  CHECK(stabilizer_size(PairMatrix(g({2, 0}), g({2, 0}))) == 1);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pair = random_pair(1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 6), rng);
    CHECK(stabilizer_size(pair) == brute(pair));
  }
}

TEST_CASE("state probability worked examples") {
  const auto states = enumerate_states(2, 2);
  const auto half = uniform_frequencies<Rational>(2);
  const auto& het_het = find_state(states, PairMatrix(g({1, 1}), g({1, 1})));
  CHECK(state_probability(het_het, half, half) == Rational(1, 4));
  CHECK(outcome_enumeration(2, half, half).at(het_het.canonical_matrix) == Rational(1, 4));

  const auto e1 = unit_frequencies<Rational>(2, 0);
  for (const auto& s : states) {
    const bool all_same = s.n_distinct == 1;
    CHECK(state_probability(s, e1, e1) == (all_same ? 1 : 0));
  }

  // Homozygotes for different objects, p = (0.8, 0.2), q = (0.9, 0.1).
  const auto p = rat({Rational(4, 5), Rational(1, 5)});
  const auto q = rat({Rational(9, 10), Rational(1, 10)});
  const auto& hom_hom = find_state(states, PairMatrix(g({2, 0}), g({0, 2})));
  const Rational direct = p[0] * p[0] * q[1] * q[1] + p[1] * p[1] * q[0] * q[0];
  CHECK(direct == Rational(97, 2500));
  CHECK(state_probability(hom_hom, p, q) == direct);
  CHECK(brute_force_state_distribution(2, p, q).at(hom_hom.canonical_matrix) == direct);
  const auto pf = to_floating(p), qf = to_floating(q);
  CHECK(std::abs(state_probability(hom_hom, pf, qf) - 0.0388) <= 1e-12);
}

TEST_CASE("same-distribution form") {
  const auto states = enumerate_states(2, 2);
  const auto half = uniform_frequencies<Rational>(2);
  // {A1A1, A1A2} and {A2A2, A1A2}: four ordered outcomes of probability 1/8.
  const auto& hom_het = find_state(states, PairMatrix(g({2, 0}), g({1, 1})));
  CHECK(outcome_enumeration(2, half, half).at(hom_het.canonical_matrix) == Rational(1, 2));
  CHECK(state_probability_same(hom_het, half) == Rational(1, 2));

  const auto wide = enumerate_states(2, 4);
  const auto sparse = rat({Rational(1, 2), Rational(1, 2), 0, 0});
  for (const auto& s : wide) {
    if (s.n_distinct > 2) CHECK(state_probability_same(s, sparse) == 0);
  }

  const auto p = rat({Rational(1, 2), Rational(3, 10), Rational(1, 5)});
  Rational total = 0;
  for (const auto& s : enumerate_states(3, 3)) {
    total += state_probability_same(s, p);
    CHECK(state_probability_same(s, p) == state_probability(s, p, p));
  }
  CHECK(total == 1);
}

TEST_CASE("state probabilities sum to one") {
  for (int k = 1; k <= 4; ++k) {
    for (int alphabet = 1; alphabet <= 6; ++alphabet) {
      const auto states = enumerate_states(k, alphabet);
      const auto suite = rational_suite(alphabet);
      for (std::size_t i = 0; i + 1 < suite.size(); i += 2) {
        const auto probs = state_distribution<Rational>(states, suite[i], suite[i + 1]);
        Rational total = 0;
        for (const auto& x : probs) {
          CHECK(x >= 0);
          CHECK(x <= 1);
          total += x;
        }
        CHECK(total == 1);
      }
    }
  }
}

TEST_CASE("closed form matches outcome enumeration and the library oracle") {
  for (int k = 1; k <= 3; ++k) {
    for (int alphabet = 1; alphabet <= (k == 3 ? 4 : 6); ++alphabet) {
      CAPTURE(k);
      CAPTURE(alphabet);
      const auto states = enumerate_states(k, alphabet);
      const auto suite = rational_suite(alphabet);
      for (std::size_t i = 0; i < suite.size(); ++i) {
        const auto& p = suite[i];
        const auto& q = suite[(i + 1) % suite.size()];
        const auto direct = outcome_enumeration(k, p, q);
        const auto oracle = brute_force_state_distribution(k, p, q);
        for (const auto& s : states) {
          const Rational formula = state_probability(s, p, q);
          auto it = direct.find(s.canonical_matrix);
          CHECK(formula == (it == direct.end() ? Rational(0) : it->second));
          auto jt = oracle.find(s.canonical_matrix);
          CHECK(formula == (jt == oracle.end() ? Rational(0) : jt->second));
        }
      }
    }
  }
}

TEST_CASE("state probabilities are symmetric and relabel invariant") {
  std::mt19937_64 rng(17);
  Engine engine(17);
  for (int k = 1; k <= 3; ++k) {
    const int alphabet = 2 * k;
    const auto states = enumerate_states(k, alphabet);
    for (int trial = 0; trial < 3; ++trial) {
      const auto p = random_rational_frequencies(alphabet, engine);
      const auto q = random_rational_frequencies(alphabet, engine);
      const auto perm = random_permutation(alphabet, rng);
      std::vector<Rational> pp(alphabet), qp(alphabet);
      for (int i = 0; i < alphabet; ++i) {
        pp[perm[i]] = p[i];
        qp[perm[i]] = q[i];
      }
      const auto pr = rat(pp), qr = rat(qp);
      for (const auto& s : states) {
        const auto base = state_probability(s, p, q);
        CHECK(base == state_probability(s, q, p));
        CHECK(base == state_probability(s, pr, qr));
      }
    }
  }
}

TEST_CASE("states needing more objects than the joint support have probability zero") {
  const auto p = rat({Rational(1, 3), Rational(2, 3), 0, 0, 0});
  const auto q = rat({0, Rational(1, 4), Rational(3, 4), 0, 0});
  for (const auto& s : enumerate_states(2, 5)) {
    if (s.n_distinct > 3) CHECK(state_probability(s, p, q) == 0);
  }
  // Fewer positions than distinct objects: empty sum, not an error.
  const auto narrow = uniform_frequencies<Rational>(2);
  for (const auto& s : enumerate_states(2, 4)) {
    if (s.n_distinct > 2) CHECK(state_probability(s, narrow, narrow) == 0);
  }
  CHECK_THROWS_AS(state_probability(enumerate_states(2, 4).front(), narrow,
                                    uniform_frequencies<Rational>(3)),
                  InputError);
}

TEST_CASE("float mode agrees with rational mode") {
  Engine engine(8);
  const auto p = random_rational_frequencies(6, engine);
  const auto q = random_rational_frequencies(6, engine);
  const auto states = enumerate_states(3, 6);
  const auto exact = state_distribution<Rational>(states, p, q);
  const auto approx = state_distribution<double>(states, to_floating(p), to_floating(q));
  for (std::size_t i = 0; i < states.size(); ++i) {
    CHECK(std::abs(exact[i].get_d() - approx[i]) <= 1e-12);
  }
  CHECK(state_distribution_serial<Rational>(states, p, q) == exact);
}

TEST_CASE("brute-force oracle") {
  const auto half = uniform_frequencies<Rational>(2);
  const auto dist = brute_force_state_distribution(1, half, half);
  REQUIRE(dist.size() == 2);
  for (const auto& [m, v] : dist) CHECK(v == Rational(1, 2));

  const auto e1 = unit_frequencies<Rational>(4, 0);
  int positive = 0;
  for (const auto& [m, v] : brute_force_state_distribution(3, e1, e1)) {
    if (v == 0) continue;
    ++positive;
    CHECK(v == 1);
    CHECK(m.nonzero_columns() == 1);
  }
  CHECK(positive == 1);

  const auto wide = uniform_frequencies<Rational>(10);
  CHECK_THROWS_AS(brute_force_state_distribution(5, wide, wide), InputError);
}

TEST_CASE("frequency vector validation") {
  CHECK_THROWS_AS(rat({Rational(1, 2), Rational(1, 3)}), InputError);
  CHECK_THROWS_AS(rat({Rational(3, 2), Rational(-1, 2)}), InputError);
  CHECK_THROWS_AS(FrequencyVector<double>({0.8, 0.1}), InputError);
  const FrequencyVector<double> nearly({0.5, 0.5 + 5e-10});
  CHECK(std::abs(nearly[0] + nearly[1] - 1.0) < 1e-15);
  CHECK_THROWS_AS(FrequencyVector<double>(std::vector<double>{}), InputError);
}

TEST_CASE("Monte Carlo sampler") {
  const auto e1 = unit_frequencies<double>(4, 0);
  for (std::uint64_t seed : {1u, 2u, 99u}) {
    const auto mc = monte_carlo_state_distribution(2, e1, e1, 1000, seed);
    REQUIRE(mc.counts.size() == 1);
    CHECK(mc.counts.begin()->second == 1000);
    CHECK(mc.counts.begin()->first.nonzero_columns() == 1);
  }

  const auto uni = uniform_frequencies<double>(4);
  const std::uint64_t n = 200000;
  const auto mc = monte_carlo_state_distribution(2, uni, uni, n, 11);
  std::uint64_t total = 0;
  Rational exact_total = 0;
  for (const auto& [m, c] : mc.counts) {
    total += c;
    exact_total += mc.exact_frequency(m);
  }
  CHECK(total == n);
  CHECK(exact_total == 1);

  CHECK(mc.counts == monte_carlo_state_distribution_serial(2, uni, uni, n, 11).counts);
  CHECK(mc.counts == monte_carlo_state_distribution(2, uni, uni, n, 11).counts);
  CHECK(mc.counts != monte_carlo_state_distribution(2, uni, uni, n, 12).counts);

  const auto states = enumerate_states(2, 4);
  const auto exact = state_distribution<double>(states, uni, uni);
  for (std::size_t s = 0; s < states.size(); ++s) {
    const double sigma = std::sqrt(exact[s] * (1 - exact[s]) / static_cast<double>(n));
    CHECK(std::abs(mc.frequency(states[s].canonical_matrix) - exact[s]) <= 5 * sigma);
  }

  CHECK_THROWS_AS(monte_carlo_state_distribution(2, uni, uni, 0, 1), InputError);
}

namespace {

// coef * sum over distinct (i_1..i_N) of sum_t prod_j p_{i_j}^{a_tj} q_{i_j}^{b_tj}
struct Polynomial {
  int coef;
  std::vector<std::vector<std::pair<int, int>>> terms;
};

Rational evaluate(const Polynomial& poly, const FrequencyVector<Rational>& p,
                  const FrequencyVector<Rational>& q) {
  const int n = static_cast<int>(poly.terms.front().size());
  Rational total = 0;
  for (const auto& idx : all_sequences(n, p.size())) {
    if (std::set<int>(idx.begin(), idx.end()).size() != idx.size()) continue;
    for (const auto& term : poly.terms) {
      Rational prod = 1;
      for (int j = 0; j < n; ++j) {
        for (int e = 0; e < term[j].first; ++e) prod *= p[idx[j]];
        for (int e = 0; e < term[j].second; ++e) prod *= q[idx[j]];
      }
      total += prod;
    }
  }
  return total * poly.coef;
}

}  // namespace

TEST_CASE("K=3 expressions: coefficients use matrix symmetry, not row equivalence") {
  struct Case {
    std::vector<int> g1, g2;
    Polynomial poly;
  };
  const std::vector<Case> cases = {
      // rows share a signature but the state is not symmetric: coefficient 9, both terms
      {{2, 1, 0, 0, 0}, {1, 0, 2, 0, 0}, {9, {{{2, 1}, {1, 0}, {0, 2}}, {{1, 2}, {0, 1}, {2, 0}}}}},
      {{2, 1, 0, 0, 0}, {1, 0, 1, 1, 0},
       {9, {{{2, 1}, {1, 0}, {0, 1}, {0, 1}}, {{1, 2}, {0, 1}, {1, 0}, {1, 0}}}}},
      {{2, 1, 0, 0, 0}, {0, 1, 1, 1, 0},
       {9, {{{2, 0}, {1, 1}, {0, 1}, {0, 1}}, {{0, 2}, {1, 1}, {1, 0}, {1, 0}}}}},
      {{1, 1, 1, 0, 0}, {1, 0, 0, 1, 1}, {9, {{{1, 1}, {1, 0}, {1, 0}, {0, 1}, {0, 1}}}}},
      {{2, 1, 0, 0, 0}, {1, 2, 0, 0, 0}, {9, {{{2, 1}, {1, 2}}}}},
  };
  const auto states = enumerate_states(3, 5);
  Engine engine(303);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = random_rational_frequencies(5, engine, 0.1);
    const auto q = random_rational_frequencies(5, engine, 0.1);
    for (const auto& c : cases) {
      const PairMatrix pair(DrawVector(c.g1), DrawVector(c.g2));
      const auto& s = find_state(states, pair);
      CHECK(state_probability(s, p, q) == evaluate(c.poly, p, q));
    }
  }
  const auto& nonsym = find_state(states, PairMatrix(DrawVector({2, 1, 0, 0, 0}), DrawVector({1, 0, 2, 0, 0})));
  CHECK(nonsym.row_equiv);
  CHECK_FALSE(nonsym.is_symmetric);
}
