#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "idstates/enumeration.hpp"
#include "idstates/error.hpp"
#include "idstates/expectation.hpp"
#include "idstates/frequency_file.hpp"
#include "idstates/parallel.hpp"
#include "idstates/probability.hpp"
#include "idstates/sampling.hpp"
#include "idstates/serialization.hpp"

namespace idstates::cli {

namespace {

using nlohmann::json;

/// Thrown when a command's internal verification fails (exit status 2).
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultMaxK = 8;

enum class Mode { automatic, rational, floating };

struct RunConfig {
  int k = 0;
  int alphabet = 0;
  std::string freq_path;
  std::string p_inline;
  std::string q_inline;
  std::string format = "table";
  std::string mode = "auto";
  std::uint64_t seed = 1;
  std::uint64_t samples = 0;
  std::string out_path;
  bool paper_layout = false;
  bool force = false;
  double concentration = 1.0;
  bool identical = false;
  int perturb_state = 0;
};

Mode parse_mode(const std::string& name) {
  if (name == "auto") return Mode::automatic;
  if (name == "rational") return Mode::rational;
  if (name == "float") return Mode::floating;
  throw InputError("unknown mode '" + name + "'");
}

void require_k(const RunConfig& c) {
  if (c.k < 1) throw InputError("--k must be at least 1");
  if (c.k > kDefaultMaxK && !c.force) {
    throw InputError("--k " + std::to_string(c.k) + " exceeds the default limit of " +
                     std::to_string(kDefaultMaxK) + "; pass --force to override");
  }
}

// "--p 0.8,0.2 --q 0.9,0.1" rendered as a frequency file.
std::string inline_as_file(const RunConfig& c) {
  auto split = [](const std::string& s) {
    std::vector<std::string> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(item);
    return v;
  };
  const auto p = split(c.p_inline);
  const auto q = c.q_inline.empty() ? std::vector<std::string>{} : split(c.q_inline);
  if (!q.empty() && q.size() != p.size()) {
    throw InputError("--p and --q have different lengths");
  }
  std::string text;
  for (std::size_t i = 0; i < p.size(); ++i) {
    text += "A" + std::to_string(i + 1) + "," + p[i];
    if (!q.empty()) text += "," + q[i];
    text += "\n";
  }
  return text;
}

std::optional<FrequencyTable> load_frequencies(const RunConfig& c) {
  if (!c.freq_path.empty() && !c.p_inline.empty()) {
    throw InputError("use either --freq or --p/--q, not both");
  }
  if (!c.q_inline.empty() && c.p_inline.empty()) {
    throw InputError("--q requires --p");
  }
  if (!c.freq_path.empty()) return parse_frequency_file(c.freq_path);
  if (!c.p_inline.empty()) return parse_frequency_text(inline_as_file(c));
  return std::nullopt;
}

bool use_rational(const RunConfig& c, const FrequencyTable* table) {
  switch (parse_mode(c.mode)) {
    case Mode::rational:
      return true;
    case Mode::floating:
      return false;
    case Mode::automatic:
      return table == nullptr || table->all_exact_literals;
  }
  return true;
}

int resolve_alphabet(const RunConfig& c, const FrequencyTable* table) {
  if (table != nullptr) {
    const int n = static_cast<int>(table->ids.size());
    if (c.alphabet != 0 && c.alphabet != n) {
      throw InputError("--i " + std::to_string(c.alphabet) +
                       " does not match the " + std::to_string(n) +
                       " objects in the frequency input");
    }
    return n;
  }
  if (c.alphabet < 1) throw InputError("--i must be at least 1");
  return c.alphabet;
}

// ---- enumerate / probabilities -------------------------------------------

void cmd_enumerate(const RunConfig& c, std::ostream& out, bool require_freq) {
  require_k(c);
  const auto table = load_frequencies(c);
  if (require_freq && !table) {
    throw InputError("probabilities requires --freq or --p/--q");
  }
  const auto format = parse_table_format(c.format);
  const int alphabet = resolve_alphabet(c, table ? &*table : nullptr);
  const auto states = enumerate_states(c.k, alphabet);
  auto records = make_records(states);
  if (table) {
    if (use_rational(c, &*table)) {
      attach_probabilities(records, state_distribution<Rational>(
                                        states, table->p_rational(), table->q_rational()));
    } else {
      attach_probabilities(records, state_distribution<double>(
                                        states, table->p_floating(), table->q_floating()));
    }
  }
  write_state_table(out, records, format);
}

// ---- count-table ---------------------------------------------------------

void cmd_count_table(const RunConfig& c, std::ostream& out) {
  require_k(c);
  const auto format = parse_table_format(c.format);
  const int k_max = c.k;
  const int i_max = 2 * k_max;
  // counts[k][i] for i = 1..2k; beyond 2k the plateau value repeats.
  std::vector<std::vector<std::size_t>> counts(k_max + 1);
  for (int k = 1; k <= k_max; ++k) {
    const auto mats = canonical_state_matrices(k);
    counts[k].assign(2 * k + 1, 0);
    for (const auto& m : mats) {
      for (int i = m.nonzero_columns(); i <= 2 * k; ++i) ++counts[k][i];
    }
  }
  auto cell = [&](int k, int i) { return counts[k][std::min(i, 2 * k)]; };

  switch (format) {
    case TableFormat::text: {
      out << "# number of identity states |C(K,I)|; rows I, columns K\n";
      if (!c.paper_layout) out << "# '*' marks I > 2K, where the K column has reached its plateau\n";
      out << std::setw(4) << "I";
      for (int k = 1; k <= k_max; ++k) out << std::setw(8) << k;
      out << "\n";
      for (int i = 1; i <= i_max; ++i) {
        out << std::setw(4) << i;
        for (int k = 1; k <= k_max; ++k) {
          std::string v;
          if (i <= 2 * k) {
            v = std::to_string(cell(k, i));
          } else if (!c.paper_layout) {
            v = std::to_string(cell(k, i)) + "*";
          }
          out << std::setw(8) << v;
        }
        out << "\n";
      }
      break;
    }
    case TableFormat::csv: {
      out << "I";
      for (int k = 1; k <= k_max; ++k) out << ",K" << k;
      out << "\n";
      for (int i = 1; i <= i_max; ++i) {
        out << i;
        for (int k = 1; k <= k_max; ++k) {
          out << ',';
          if (i <= 2 * k) {
            out << cell(k, i);
          } else if (!c.paper_layout) {
            out << cell(k, i) << '*';
          }
        }
        out << "\n";
      }
      break;
    }
    case TableFormat::records: {
      for (int k = 1; k <= k_max; ++k) {
        for (int i = 1; i <= i_max; ++i) {
          if (i > 2 * k && c.paper_layout) continue;
          out << json{{"K", k}, {"I", i}, {"count", cell(k, i)}, {"plateau_repeat", i > 2 * k}}.dump()
              << "\n";
        }
      }
      break;
    }
  }
}

// ---- expectation -----------------------------------------------------------

template <class Scalar>
std::string show(const Scalar& v) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return to_string(v);
  } else {
    return format_double(v);
  }
}

template <class Scalar>
void emit_expectation(const RunConfig& c, const FrequencyVector<Scalar>& p,
                      const FrequencyVector<Scalar>& q, std::ostream& out) {
  const auto format = parse_table_format(c.format);
  const auto report = comparison_report(p, q);
  constexpr bool exact = std::is_same_v<Scalar, Rational>;

  std::vector<std::pair<std::string, std::string>> fields = {
      {"mode", exact ? "rational" : "float"},
      {"e_pq", show(report.e_pq)},
      {"e_pp", show(report.e_pp)},
      {"e_qq", show(report.e_qq)},
      {"avg_within", show(report.avg_within)},
      {"within_exceeds_between", report.within_exceeds_between ? "true" : "false"},
      {"within_minus_between", show(report.within_minus_between)},
  };
  std::optional<bool> matched;
  if constexpr (exact) {
    const int k = c.k == 0 ? 2 : c.k;
    RunConfig check = c;
    check.k = k;
    require_k(check);
    const Rational via_states = expected_dissimilarity_via_states(k, p, q);
    matched = via_states == report.e_pq;
    fields.emplace_back("state_sum_K", std::to_string(k));
    fields.emplace_back("e_pq_via_states", show(via_states));
    fields.emplace_back("state_sum_matches", *matched ? "true" : "false");
  }

  switch (format) {
    case TableFormat::text:
      for (const auto& [key, value] : fields) out << key << ": " << value << "\n";
      break;
    case TableFormat::records: {
      json j;
      for (const auto& [key, value] : fields) j[key] = value;
      j["within_exceeds_between"] = report.within_exceeds_between;
      if (matched) j["state_sum_matches"] = *matched;
      if constexpr (exact) {
        j["e_pq_float"] = report.e_pq.get_d();
        j["e_pp_float"] = report.e_pp.get_d();
        j["e_qq_float"] = report.e_qq.get_d();
        j["avg_within_float"] = report.avg_within.get_d();
      }
      out << j.dump() << "\n";
      break;
    }
    case TableFormat::csv: {
      for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
      out << "\n";
      for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].second;
      out << "\n";
      break;
    }
  }
  if (matched && !*matched) {
    throw CheckFailed("state-weighted expectation does not equal 1 - <p,q>");
  }
}

void cmd_expectation(const RunConfig& c, std::ostream& out) {
  const auto table = load_frequencies(c);
  if (!table) throw InputError("expectation requires --freq or --p/--q");
  if (c.alphabet != 0) resolve_alphabet(c, &*table);
  if (use_rational(c, &*table)) {
    emit_expectation(c, table->p_rational(), table->q_rational(), out);
  } else {
    emit_expectation(c, table->p_floating(), table->q_floating(), out);
  }
}

// ---- oracle-check ----------------------------------------------------------

void cmd_oracle_check(const RunConfig& c, std::ostream& out) {
  require_k(c);
  const auto table = load_frequencies(c);
  const int alphabet = resolve_alphabet(c, table ? &*table : nullptr);
  FrequencyVector<Rational> p, q;
  if (table) {
    p = table->p_rational();
    q = table->q_rational();
  } else {
    Engine engine(stream_seed(c.seed, 0));
    p = random_rational_frequencies(alphabet, engine);
    q = random_rational_frequencies(alphabet, engine);
  }
  const auto oracle = brute_force_state_distribution(c.k, p, q, c.force);
  const auto states = enumerate_states(c.k, alphabet);
  auto probs = state_distribution<Rational>(states, p, q);
  if (c.perturb_state != 0) {
    if (c.perturb_state < 1 || c.perturb_state > static_cast<int>(states.size())) {
      throw InputError("--perturb-state out of range");
    }
    probs[c.perturb_state - 1] += Rational(1, 1000);
  }

  auto show_vec = [](const FrequencyVector<Rational>& v) {
    std::string s;
    for (int i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
    return s;
  };
  out << "# oracle check K=" << c.k << " I=" << alphabet << "\n";
  out << "# p=" << show_vec(p) << "\n# q=" << show_vec(q) << "\n";

  std::size_t mismatches = 0;
  Rational total = 0;
  std::map<StateMatrix, bool> seen;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& m = states[s].canonical_matrix;
    auto it = oracle.find(m);
    const Rational expected = it == oracle.end() ? Rational(0) : it->second;
    seen[m] = true;
    total += probs[s];
    if (probs[s] != expected) {
      ++mismatches;
      out << "MISMATCH state " << (s + 1) << " M=" << m.to_string()
          << " formula=" << to_string(probs[s]) << " oracle=" << to_string(expected) << "\n";
    }
  }
  for (const auto& [m, v] : oracle) {
    if (!seen.count(m) && v != 0) {
      ++mismatches;
      out << "MISMATCH oracle state missing from enumeration M=" << m.to_string()
          << " oracle=" << to_string(v) << "\n";
    }
  }
  if (total != 1) {
    ++mismatches;
    out << "MISMATCH state probabilities sum to " << to_string(total) << "\n";
  }
  out << (mismatches == 0 ? "PASS" : "FAIL") << " states=" << states.size()
      << " mismatches=" << mismatches << "\n";
  if (mismatches != 0) throw CheckFailed("oracle mismatch");
}

// ---- simulate --------------------------------------------------------------

void cmd_simulate(const RunConfig& c, std::ostream& out) {
  require_k(c);
  if (c.samples < 1) throw InputError("--samples must be at least 1");
  const auto table = load_frequencies(c);
  const int alphabet = resolve_alphabet(c, table ? &*table : nullptr);
  const auto p = table ? table->p_floating() : uniform_frequencies<double>(alphabet);
  const auto q = table ? table->q_floating() : p;
  const auto states = enumerate_states(c.k, alphabet);
  const auto exact = state_distribution<double>(states, p, q);
  const auto mc = monte_carlo_state_distribution(c.k, p, q, c.samples, c.seed);
  const auto format = parse_table_format(c.format);
  const double n = static_cast<double>(c.samples);

  if (format == TableFormat::csv) {
    out << "index,M,empirical,exact,sigma,z\n";
  } else if (format == TableFormat::text) {
    out << "# Monte Carlo K=" << c.k << " I=" << alphabet << " samples=" << c.samples
        << " seed=" << c.seed << "\n";
    out << std::left << std::setw(6) << "idx" << std::setw(16) << "empirical"
        << std::setw(16) << "exact" << std::setw(10) << "z" << "M\n";
  }
  double max_abs_z = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& m = states[s].canonical_matrix;
    const double f = mc.frequency(m);
    const double prob = exact[s];
    const double sigma = std::sqrt(prob * (1 - prob) / n);
    const double z = sigma > 0 ? (f - prob) / sigma : (f == prob ? 0.0 : INFINITY);
    max_abs_z = std::max(max_abs_z, std::abs(z));
    switch (format) {
      case TableFormat::text:
        out << std::left << std::setw(6) << s + 1 << std::setw(16) << format_double(f)
            << std::setw(16) << format_double(prob) << std::setw(10) << format_double(z)
            << m.to_string() << "\n";
        break;
      case TableFormat::csv:
        out << s + 1 << ',' << m.to_string() << ',' << format_double(f) << ','
            << format_double(prob) << ',' << format_double(sigma) << ',' << format_double(z)
            << "\n";
        break;
      case TableFormat::records:
        out << json{{"index", s + 1}, {"M", std::vector<int>(m.cells().begin(), m.cells().end())},
                    {"count", mc.counts.count(m) ? mc.counts.at(m) : 0},
                    {"empirical", f}, {"exact", prob}, {"sigma", sigma}, {"z", z}}
                   .dump()
            << "\n";
        break;
    }
  }
  if (format == TableFormat::text) out << "max |z| = " << format_double(max_abs_z) << "\n";
}

// ---- prevalence ------------------------------------------------------------

void cmd_prevalence(const RunConfig& c, std::ostream& out) {
  PrevalenceOptions o;
  o.alphabet = c.alphabet;
  o.trials = c.samples == 0 ? 100000 : c.samples;
  o.seed = c.seed;
  o.concentration = c.concentration;
  o.identical = c.identical;
  const auto r = prevalence_experiment(o);
  const auto format = parse_table_format(c.format);
  switch (format) {
    case TableFormat::text:
      out << "I: " << o.alphabet << "\ntrials: " << r.trials << "\nalpha: "
          << format_double(o.concentration) << "\nhits: " << r.hits
          << "\nfraction: " << format_double(r.fraction) << "\nci95: ["
          << format_double(r.ci_low) << ", " << format_double(r.ci_high) << "]\n";
      break;
    case TableFormat::csv:
      out << "I,trials,alpha,hits,fraction,ci_low,ci_high\n"
          << o.alphabet << ',' << r.trials << ',' << format_double(o.concentration) << ','
          << r.hits << ',' << format_double(r.fraction) << ',' << format_double(r.ci_low)
          << ',' << format_double(r.ci_high) << "\n";
      break;
    case TableFormat::records:
      out << json{{"I", o.alphabet}, {"trials", r.trials}, {"alpha", o.concentration},
                  {"hits", r.hits}, {"fraction", r.fraction}, {"ci_low", r.ci_low},
                  {"ci_high", r.ci_high}}
                 .dump()
          << "\n";
      break;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identity states for pairs of unordered draws with replacement"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&c](CLI::App* sub) {
    sub->add_option("--format", c.format, "table | records | csv")
        ->check(CLI::IsMember({"table", "records", "csv"}));
    sub->add_option("--out", c.out_path, "write output to this file");
    sub->add_flag("--force", c.force, "lift the default size guards");
  };
  auto add_freq = [&c](CLI::App* sub) {
    sub->add_option("--freq", c.freq_path, "frequency file: object_id,p[,q]");
    sub->add_option("--p", c.p_inline, "inline p vector, comma separated");
    sub->add_option("--q", c.q_inline, "inline q vector (defaults to p)");
    sub->add_option("--mode", c.mode, "rational | float (default: rational for a/b or integer input)")
        ->check(CLI::IsMember({"auto", "rational", "float"}));
  };

  auto* enumerate = app.add_subcommand("enumerate", "list identity states");
  enumerate->add_option("--k", c.k, "draw size K")->required();
  enumerate->add_option("--i", c.alphabet, "alphabet size I");
  add_freq(enumerate);
  add_common(enumerate);

  auto* probabilities = app.add_subcommand("probabilities", "identity states with probabilities");
  probabilities->add_option("--k", c.k, "draw size K")->required();
  probabilities->add_option("--i", c.alphabet, "alphabet size I");
  add_freq(probabilities);
  add_common(probabilities);

  auto* count = app.add_subcommand("count-table", "grid of state counts for K = 1..K_max");
  count->add_option("--k", c.k, "largest draw size K_max")->required();
  count->add_flag("--paper-layout", c.paper_layout, "leave cells with I > 2K blank");
  add_common(count);

  auto* expectation = app.add_subcommand("expectation", "expected dissimilarity report");
  expectation->add_option("--k", c.k, "K used for the state-sum cross-check (default 2)");
  expectation->add_option("--i", c.alphabet, "alphabet size I (must match the input)");
  add_freq(expectation);
  add_common(expectation);

  auto* oracle = app.add_subcommand("oracle-check", "compare state probabilities to brute force");
  oracle->add_option("--k", c.k, "draw size K")->required();
  oracle->add_option("--i", c.alphabet, "alphabet size I");
  oracle->add_option("--seed", c.seed, "seed for random rational p, q");
  oracle->add_option("--perturb-state", c.perturb_state)->group("");
  add_freq(oracle);
  add_common(oracle);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo state frequencies");
  simulate->add_option("--k", c.k, "draw size K")->required();
  simulate->add_option("--i", c.alphabet, "alphabet size I (uniform p = q without input)");
  simulate->add_option("--samples", c.samples, "number of sampled pairs")->required();
  simulate->add_option("--seed", c.seed, "RNG seed");
  add_freq(simulate);
  add_common(simulate);

  auto* prevalence = app.add_subcommand("prevalence", "how often E[D(p,p)] > E[D(p,q)] under Dirichlet p, q");
  prevalence->add_option("--i", c.alphabet, "alphabet size I")->required();
  prevalence->add_option("--samples", c.samples, "number of trials (default 100000)");
  prevalence->add_option("--seed", c.seed, "RNG seed");
  prevalence->add_option("--alpha", c.concentration, "Dirichlet concentration (default 1)");
  prevalence->add_flag("--identical", c.identical, "use q = p in every trial");
  add_common(prevalence);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    app.exit(e, msg, msg);
    err << msg.str();
    return e.get_exit_code() == 0 ? kExitOk : kExitInvalid;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    apply_thread_limit_from_env();
    if (!c.out_path.empty()) {
      file.open(c.out_path, std::ios::binary);
      if (!file) throw InputError("cannot open output file " + c.out_path);
      sink = &file;
    }
    if (*enumerate) cmd_enumerate(c, *sink, false);
    else if (*probabilities) cmd_enumerate(c, *sink, true);
    else if (*count) cmd_count_table(c, *sink);
    else if (*expectation) cmd_expectation(c, *sink);
    else if (*oracle) cmd_oracle_check(c, *sink);
    else if (*simulate) cmd_simulate(c, *sink);
    else if (*prevalence) cmd_prevalence(c, *sink);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const CheckFailed& e) {
    sink->flush();
    err << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace idstates::cli
