#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idstates/frequency.hpp"

namespace idstates {

/// Parsed `object_id, p[, q]` file. Values are held exactly; decimal
/// literals are converted to their exact rational value.
struct FrequencyTable {
  std::vector<std::string> ids;
  std::vector<Rational> p;
  std::vector<Rational> q;  // equal to p when the file has no q column
  bool has_q = false;
  /// Every value was written as "a/b" or an integer.
  bool all_exact_literals = true;

  FrequencyVector<Rational> p_rational() const;
  FrequencyVector<Rational> q_rational() const;
  FrequencyVector<double> p_floating() const;
  FrequencyVector<double> q_floating() const;
};

/// Comma- or tab-delimited rows; optional header starting with object_id;
/// blank lines and lines starting with '#' are ignored. Rejects non-numeric
/// or negative values, duplicate ids, ragged rows, and columns whose sum is
/// more than kFloatSumTolerance away from 1.
FrequencyTable parse_frequency_text(std::string_view text);
FrequencyTable parse_frequency_file(const std::filesystem::path& path);

}  // namespace idstates
