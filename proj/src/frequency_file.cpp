#include "idstates/frequency_file.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "idstates/error.hpp"

namespace idstates {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\xEF\xBB\xBF";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  const char delim = line.find('\t') != std::string_view::npos ? '\t' : ',';
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(delim, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

Rational parse_value(std::string_view text, std::size_t line_no) {
  try {
    Rational v = parse_rational(text);
    if (v < 0) {
      throw InputError("negative frequency '" + std::string(text) + "'");
    }
    return v;
  } catch (const InputError& e) {
    throw InputError("line " + std::to_string(line_no) + ": " + e.what());
  }
}

void check_sum(const std::vector<Rational>& column, const char* name) {
  Rational total = 0;
  for (const auto& x : column) total += x;
  if (std::abs(total.get_d() - 1.0) > kFloatSumTolerance) {
    throw InputError(std::string(name) + " frequencies sum to " +
                     format_double(total.get_d()));
  }
}

}  // namespace

FrequencyTable parse_frequency_text(std::string_view text) {
  FrequencyTable table;
  std::set<std::string, std::less<>> seen;
  std::size_t columns = 0;
  std::size_t line_no = 0;
  bool first_content = true;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    auto fields = split_fields(line);
    if (first_content) {
      first_content = false;
      std::string head(fields[0]);
      for (auto& c : head) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (head == "object_id") {
        columns = fields.size();
        if (columns < 2 || columns > 3) {
          throw InputError("header must be object_id,p[,q]");
        }
        continue;
      }
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw InputError("line " + std::to_string(line_no) +
                       ": expected object_id,p[,q]");
    }
    if (columns == 0) columns = fields.size();
    if (fields.size() != columns) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " fields");
    }
    if (fields[0].empty()) {
      throw InputError("line " + std::to_string(line_no) + ": empty object_id");
    }
    if (!seen.emplace(fields[0]).second) {
      throw InputError("duplicate object_id '" + std::string(fields[0]) + "'");
    }
    table.ids.emplace_back(fields[0]);
    for (std::size_t f = 1; f < fields.size(); ++f) {
      table.all_exact_literals =
          table.all_exact_literals && is_exact_literal(fields[f]);
    }
    table.p.push_back(parse_value(fields[1], line_no));
    if (columns == 3) table.q.push_back(parse_value(fields[2], line_no));
  }

  if (table.ids.empty()) throw InputError("frequency file has no rows");
  table.has_q = columns == 3;
  if (!table.has_q) table.q = table.p;
  check_sum(table.p, "p");
  if (table.has_q) check_sum(table.q, "q");
  return table;
}

FrequencyTable parse_frequency_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open frequency file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_frequency_text(buf.str());
}

FrequencyVector<Rational> FrequencyTable::p_rational() const {
  return FrequencyVector<Rational>(p);
}

FrequencyVector<Rational> FrequencyTable::q_rational() const {
  return FrequencyVector<Rational>(q);
}

namespace {
FrequencyVector<double> floating(const std::vector<Rational>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return FrequencyVector<double>(std::move(out));
}
}  // namespace

FrequencyVector<double> FrequencyTable::p_floating() const { return floating(p); }
FrequencyVector<double> FrequencyTable::q_floating() const { return floating(q); }

}  // namespace idstates
