#include "idstates/serialization.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "idstates/error.hpp"
#include "json.hpp"

namespace idstates {

using nlohmann::json;

StateMatrix StateRecord::canonical_matrix() const {
  return StateMatrix(k, matrix);
}

std::vector<StateRecord> make_records(std::span<const IdentityState> states) {
  std::vector<StateRecord> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    StateRecord r;
    r.index = i + 1;
    r.k = s.representative.draw_size();
    r.alphabet = s.representative.alphabet_size();
    const auto row1 = s.representative.first().counts();
    const auto row2 = s.representative.second().counts();
    r.rep_row1.assign(row1.begin(), row1.end());
    r.rep_row2.assign(row2.begin(), row2.end());
    r.matrix.assign(s.canonical_matrix.cells().begin(), s.canonical_matrix.cells().end());
    r.dissimilarity = s.dissimilarity.to_string();
    r.n_distinct = s.n_distinct;
    r.stabilizer_size = s.stabilizer_size;
    r.is_symmetric = s.is_symmetric;
    r.row_equiv = s.row_equiv;
    r.row_equal = s.row_equal;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {
void require_matching(std::size_t records, std::size_t probs) {
  if (records != probs) {
    throw InputError("probability count does not match state count");
  }
}
}  // namespace

void attach_probabilities(std::vector<StateRecord>& records,
                          std::span<const Rational> probs) {
  require_matching(records.size(), probs.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].probability = to_string(probs[i]);
    records[i].probability_float = probs[i].get_d();
  }
}

void attach_probabilities(std::vector<StateRecord>& records,
                          std::span<const double> probs) {
  require_matching(records.size(), probs.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].probability = format_double(probs[i]);
    records[i].probability_float = probs[i];
  }
}

TableFormat parse_table_format(std::string_view name) {
  if (name == "table") return TableFormat::text;
  if (name == "records") return TableFormat::records;
  if (name == "csv") return TableFormat::csv;
  throw InputError("unknown format '" + std::string(name) + "'");
}

std::string draw_letters(std::span<const int> counts) {
  std::string s;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (int c = 0; c < counts[i]; ++c) s += "A" + std::to_string(i + 1);
  }
  return s;
}

namespace {

std::string join(std::span<const int> v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> split_ints(std::string_view s, char sep) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(sep, start);
    auto piece = s.substr(start, pos == std::string_view::npos ? pos : pos - start);
    if (!piece.empty()) out.push_back(std::stoi(std::string(piece)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string matrix_text(const StateRecord& r) {
  return r.canonical_matrix().to_string();
}

json to_json(const StateRecord& r) {
  json j = {
      {"index", r.index},
      {"K", r.k},
      {"I", r.alphabet},
      {"rep_row1", r.rep_row1},
      {"rep_row2", r.rep_row2},
      {"M", r.matrix},
      {"D", r.dissimilarity},
      {"D_float", parse_rational(r.dissimilarity).get_d()},
      {"n_distinct", r.n_distinct},
      {"stabilizer_size", r.stabilizer_size},
      {"is_symmetric", r.is_symmetric},
      {"row_equiv", r.row_equiv},
      {"row_equal", r.row_equal},
  };
  if (r.probability) j["probability"] = *r.probability;
  if (r.probability_float) j["probability_float"] = *r.probability_float;
  return j;
}

StateRecord from_json(const json& j) {
  StateRecord r;
  r.index = j.at("index").get<std::size_t>();
  r.k = j.at("K").get<int>();
  r.alphabet = j.at("I").get<int>();
  r.rep_row1 = j.at("rep_row1").get<std::vector<int>>();
  r.rep_row2 = j.at("rep_row2").get<std::vector<int>>();
  r.matrix = j.at("M").get<std::vector<int>>();
  r.dissimilarity = j.at("D").get<std::string>();
  r.n_distinct = j.at("n_distinct").get<int>();
  r.stabilizer_size = j.at("stabilizer_size").get<std::uint64_t>();
  r.is_symmetric = j.at("is_symmetric").get<bool>();
  r.row_equiv = j.at("row_equiv").get<bool>();
  r.row_equal = j.at("row_equal").get<bool>();
  if (j.contains("probability")) r.probability = j["probability"].get<std::string>();
  if (j.contains("probability_float")) {
    r.probability_float = j["probability_float"].get<double>();
  }
  return r;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void write_text(std::ostream& out, std::span<const StateRecord> records) {
  if (records.empty()) {
    out << "# no identity states\n";
    return;
  }
  const bool with_prob = records.front().probability.has_value();
  out << "# identity states: K=" << records.front().k
      << " I=" << records.front().alphabet << " count=" << records.size() << "\n";
  std::size_t w_draw = 2, w_row = 4, w_m = 1;
  for (const auto& r : records) {
    w_draw = std::max(w_draw, draw_letters(r.rep_row1).size());
    w_draw = std::max(w_draw, draw_letters(r.rep_row2).size());
    w_row = std::max(w_row, join(r.rep_row1, ',').size() + 2);
    w_m = std::max(w_m, matrix_text(r).size());
  }
  auto col = [&](const std::string& s, std::size_t w) {
    out << std::left << std::setw(static_cast<int>(w)) << s << "  ";
  };
  col("idx", 4);
  col("G1", w_draw);
  col("G2", w_draw);
  col("row1", w_row);
  col("row2", w_row);
  col("M", w_m);
  col("D", 7);
  col("N", 3);
  col("stab", 5);
  col("sym", 3);
  col("equiv", 5);
  col("equal", 5);
  if (with_prob) out << "probability";
  out << "\n";
  for (const auto& r : records) {
    col(std::to_string(r.index), 4);
    col(draw_letters(r.rep_row1), w_draw);
    col(draw_letters(r.rep_row2), w_draw);
    col("(" + join(r.rep_row1, ',') + ")", w_row);
    col("(" + join(r.rep_row2, ',') + ")", w_row);
    col(matrix_text(r), w_m);
    col(r.dissimilarity, 7);
    col(std::to_string(r.n_distinct), 3);
    col(std::to_string(r.stabilizer_size), 5);
    col(yes_no(r.is_symmetric), 3);
    col(yes_no(r.row_equiv), 5);
    col(yes_no(r.row_equal), 5);
    if (with_prob && r.probability) out << *r.probability;
    out << "\n";
  }
}

constexpr const char* kCsvHeader =
    "index,K,I,rep_row1,rep_row2,M,D,n_distinct,stabilizer_size,is_symmetric,"
    "row_equiv,row_equal,probability,probability_float";

void write_csv(std::ostream& out, std::span<const StateRecord> records) {
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << r.index << ',' << r.k << ',' << r.alphabet << ','
        << join(r.rep_row1, ' ') << ',' << join(r.rep_row2, ' ') << ','
        << join(r.matrix, ' ') << ',' << r.dissimilarity << ',' << r.n_distinct
        << ',' << r.stabilizer_size << ',' << r.is_symmetric << ','
        << r.row_equiv << ',' << r.row_equal << ',' << r.probability.value_or("")
        << ',';
    if (r.probability_float) {
      std::ostringstream s;
      s << std::setprecision(17) << *r.probability_float;
      out << s.str();
    }
    out << "\n";
  }
}

}  // namespace

void write_state_table(std::ostream& out, std::span<const StateRecord> records,
                       TableFormat format) {
  switch (format) {
    case TableFormat::text:
      write_text(out, records);
      break;
    case TableFormat::records:
      for (const auto& r : records) out << to_json(r).dump() << "\n";
      break;
    case TableFormat::csv:
      write_csv(out, records);
      break;
  }
}

std::vector<StateRecord> read_state_records(std::istream& in) {
  std::vector<StateRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InputError(std::string("bad state record: ") + e.what());
    }
  }
  return out;
}

std::vector<StateRecord> read_state_csv(std::istream& in) {
  std::vector<StateRecord> out;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw InputError("state csv is missing its header");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 14) throw InputError("state csv row has wrong field count");
    StateRecord r;
    try {
      r.index = std::stoul(f[0]);
      r.k = std::stoi(f[1]);
      r.alphabet = std::stoi(f[2]);
      r.rep_row1 = split_ints(f[3], ' ');
      r.rep_row2 = split_ints(f[4], ' ');
      r.matrix = split_ints(f[5], ' ');
      r.dissimilarity = f[6];
      r.n_distinct = std::stoi(f[7]);
      r.stabilizer_size = std::stoull(f[8]);
      r.is_symmetric = f[9] == "1";
      r.row_equiv = f[10] == "1";
      r.row_equal = f[11] == "1";
      if (!f[12].empty()) r.probability = f[12];
      if (!f[13].empty()) r.probability_float = std::stod(f[13]);
    } catch (const std::logic_error& e) {
      throw InputError(std::string("bad state csv row: ") + e.what());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace idstates
