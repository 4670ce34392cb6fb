#include "idstates/stabilizer.hpp"

#include <algorithm>

namespace idstates {

RowSignature row_signature(const DrawVector& g) {
  RowSignature r{std::vector<int>(g.draw_size() + 1, 0)};
  for (int c : g.counts()) ++r.counts[c];
  return r;
}

bool rows_equivalent(const DrawVector& g1, const DrawVector& g2) {
  return g1.draw_size() == g2.draw_size() &&
         g1.alphabet_size() == g2.alphabet_size() &&
         row_signature(g1) == row_signature(g2);
}

std::uint64_t stabilizer_size(const PairMatrix& pair) {
  std::vector<PairMatrix::Column> cols;
  for (const auto& c : pair.columns()) {
    if (c.top != 0 || c.bottom != 0) cols.push_back(c);
  }
  std::sort(cols.begin(), cols.end());
  std::uint64_t size = 1;
  std::size_t run = 0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    run = (i > 0 && cols[i] == cols[i - 1]) ? run + 1 : 1;
    if (__builtin_mul_overflow(size, run, &size)) {
      throw InputError("stabilizer size overflows 64 bits");
    }
  }
  return size;
}

}  // namespace idstates
