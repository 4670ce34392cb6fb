#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idstates/enumeration.hpp"

namespace idstates {

/// Flat, serializable view of an IdentityState plus an optional probability.
struct StateRecord {
  std::size_t index = 0;  // 1-based
  int k = 0;
  int alphabet = 0;
  std::vector<int> rep_row1;
  std::vector<int> rep_row2;
  std::vector<int> matrix;  // canonical M, row-major
  std::string dissimilarity;  // "num/K^2"
  int n_distinct = 0;
  std::uint64_t stabilizer_size = 1;
  bool is_symmetric = false;
  bool row_equiv = false;
  bool row_equal = false;
  /// "a/b" in rational mode, 12 significant digits in float mode.
  std::optional<std::string> probability;
  std::optional<double> probability_float;

  StateMatrix canonical_matrix() const;

  friend bool operator==(const StateRecord&, const StateRecord&) = default;
};

std::vector<StateRecord> make_records(std::span<const IdentityState> states);

void attach_probabilities(std::vector<StateRecord>& records,
                          std::span<const Rational> probs);
void attach_probabilities(std::vector<StateRecord>& records,
                          std::span<const double> probs);

enum class TableFormat { text, records, csv };

/// "table", "records" or "csv".
TableFormat parse_table_format(std::string_view name);

/// text: aligned human-readable table; records: one JSON object per line;
/// csv: header plus one row per state, list fields space-separated.
void write_state_table(std::ostream& out, std::span<const StateRecord> records,
                       TableFormat format);

std::vector<StateRecord> read_state_records(std::istream& in);
std::vector<StateRecord> read_state_csv(std::istream& in);

/// "A1A1A2"-style rendering of a draw.
std::string draw_letters(std::span<const int> counts);

}  // namespace idstates
