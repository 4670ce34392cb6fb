#include "idstates/expectation.hpp"

#include <omp.h>

#include <cmath>

#include "idstates/multiset.hpp"
#include "idstates/probability.hpp"
#include "idstates/sampling.hpp"

namespace idstates {

template <class Scalar>
Scalar expected_dissimilarity(const FrequencyVector<Scalar>& p,
                              const FrequencyVector<Scalar>& q) {
  return Scalar(1) - inner_product(p.entries(), q.entries());
}

template <class Scalar>
Scalar expected_dissimilarity_via_states(int k, const FrequencyVector<Scalar>& p,
                                         const FrequencyVector<Scalar>& q) {
  if (p.size() != q.size()) throw InputError("p and q have different lengths");
  const auto states = enumerate_states(k, p.size());
  const auto probs = state_distribution<Scalar>(states, p, q);
  Scalar total = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& d = states[s].dissimilarity;
    total += from_ratio<Scalar>(d.numerator, d.denominator()) * probs[s];
  }
  return total;
}

template <class Scalar>
ExpectationReport<Scalar> comparison_report(const FrequencyVector<Scalar>& p,
                                            const FrequencyVector<Scalar>& q) {
  if (p.size() != q.size()) throw InputError("p and q have different lengths");
  ExpectationReport<Scalar> r;
  r.e_pq = expected_dissimilarity(p, q);
  r.e_pp = expected_dissimilarity(p, p);
  r.e_qq = expected_dissimilarity(q, q);
  r.avg_within = (r.e_pp + r.e_qq) / 2;
  r.within_exceeds_between = r.e_pp > r.e_pq;
  r.within_minus_between = r.avg_within - r.e_pq;
  std::vector<Scalar> diff(p.size());
  for (int i = 0; i < p.size(); ++i) diff[i] = p[i] - q[i];
  r.half_squared_distance =
      inner_product<Scalar>(diff, diff) / 2;
  return r;
}

template double expected_dissimilarity<double>(const FrequencyVector<double>&,
                                               const FrequencyVector<double>&);
template Rational expected_dissimilarity<Rational>(const FrequencyVector<Rational>&,
                                                   const FrequencyVector<Rational>&);
template double expected_dissimilarity_via_states<double>(
    int, const FrequencyVector<double>&, const FrequencyVector<double>&);
template Rational expected_dissimilarity_via_states<Rational>(
    int, const FrequencyVector<Rational>&, const FrequencyVector<Rational>&);
template ExpectationReport<double> comparison_report<double>(
    const FrequencyVector<double>&, const FrequencyVector<double>&);
template ExpectationReport<Rational> comparison_report<Rational>(
    const FrequencyVector<Rational>&, const FrequencyVector<Rational>&);

namespace {

void validate(const PrevalenceOptions& o) {
  if (o.alphabet < 2) throw InputError("prevalence experiment needs I >= 2");
  if (o.trials < 1) throw InputError("prevalence experiment needs at least one trial");
  if (!(o.concentration > 0)) throw InputError("concentration must be positive");
}

bool trial_hits(const PrevalenceOptions& o, std::uint64_t t) {
  Engine engine(stream_seed(o.seed, t));
  const auto p = sample_dirichlet(o.alphabet, o.concentration, engine);
  const auto q = o.identical ? p : sample_dirichlet(o.alphabet, o.concentration, engine);
  // E[D(p,p)] > E[D(p,q)]  <=>  <p,p> < <p,q>
  return inner_product(p.entries(), p.entries()) <
         inner_product(p.entries(), q.entries());
}

PrevalenceResult summarize(std::uint64_t trials, std::uint64_t hits) {
  PrevalenceResult r{trials, hits, 0, 0, 0};
  const double n = static_cast<double>(trials);
  const double f = static_cast<double>(hits) / n;
  const double z = 1.959963984540054;
  const double denom = 1 + z * z / n;
  const double center = (f + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(f * (1 - f) / n + z * z / (4 * n * n)) / denom;
  r.fraction = f;
  r.ci_low = r.hits == 0 ? 0.0 : std::max(0.0, center - half);
  r.ci_high = r.hits == r.trials ? 1.0 : std::min(1.0, center + half);
  return r;
}

}  // namespace

PrevalenceResult prevalence_experiment(const PrevalenceOptions& options) {
  validate(options);
  const auto n = static_cast<std::int64_t>(options.trials);
  std::uint64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::int64_t t = 0; t < n; ++t) hits += trial_hits(options, t) ? 1 : 0;
  return summarize(options.trials, hits);
}

PrevalenceResult prevalence_experiment_serial(const PrevalenceOptions& options) {
  validate(options);
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < options.trials; ++t) hits += trial_hits(options, t) ? 1 : 0;
  return summarize(options.trials, hits);
}

}  // namespace idstates
