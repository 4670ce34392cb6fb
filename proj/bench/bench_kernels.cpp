// Serial vs OpenMP timings for the enumeration, probability and sampling
// kernels. Usage: idstates_bench [K_max] [threads]
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "idstates/enumeration.hpp"
#include "idstates/parallel.hpp"
#include "idstates/probability.hpp"
#include "idstates/sampling.hpp"

using namespace idstates;

template <class F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::cout << name << "\tserial " << serial << " ms\tparallel " << parallel
            << " ms\tspeedup " << serial / parallel << "\t" << (same ? "identical" : "DIFFERENT")
            << "\n";
}

int main(int argc, char** argv) {
  const int k_max = argc > 1 ? std::atoi(argv[1]) : 6;
  if (argc > 2) set_thread_limit(std::atoi(argv[2]));
  std::cout << "threads: " << max_threads() << "\n";

  for (int k = 1; k <= k_max; ++k) {
    std::vector<StateMatrix> a, b;
    double ts = time_ms([&] { a = canonical_state_matrices_serial(k); });
    double tp = time_ms([&] { b = canonical_state_matrices(k); });
    row("enumerate K=" + std::to_string(k) + " (" + std::to_string(a.size()) + " states)",
        ts, tp, a == b);
  }

  for (int k = 2; k <= 4; ++k) {
    const int alphabet = 2 * k;
    const auto states = enumerate_states(k, alphabet);
    Engine engine(stream_seed(42, k));
    const auto p = random_rational_frequencies(alphabet, engine, 0.0);
    const auto q = random_rational_frequencies(alphabet, engine, 0.0);
    std::vector<Rational> a, b;
    double ts = time_ms([&] { a = state_distribution_serial<Rational>(states, p, q); });
    double tp = time_ms([&] { b = state_distribution<Rational>(states, p, q); });
    row("exact probabilities K=" + std::to_string(k) + " I=" + std::to_string(alphabet), ts, tp,
        a == b);
  }

  const auto p = uniform_frequencies<double>(4);
  MonteCarloResult ma, mb;
  double ts = time_ms([&] { ma = monte_carlo_state_distribution_serial(2, p, p, 1000000, 7); });
  double tp = time_ms([&] { mb = monte_carlo_state_distribution(2, p, p, 1000000, 7); });
  row("monte carlo K=2 I=4 n=1e6", ts, tp, ma.counts == mb.counts);
  return 0;
}
