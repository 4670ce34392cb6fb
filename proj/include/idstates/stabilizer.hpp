#pragma once

#include <cstdint>
#include <vector>

#include "idstates/multiset.hpp"

namespace idstates {

/// r(g): entry k counts the positions of g holding value k, for k = 0..K.
struct RowSignature {
  std::vector<int> counts;
  friend bool operator==(const RowSignature&, const RowSignature&) = default;
};

RowSignature row_signature(const DrawVector& g);

/// g1 ~ g2: the rows agree up to a permutation of positions.
bool rows_equivalent(const DrawVector& g1, const DrawVector& g2);

/// Number of permutations of the nonzero columns that fix the pair: the
/// product of factorials of the sizes of equal-column classes.
std::uint64_t stabilizer_size(const PairMatrix& pair);

}  // namespace idstates
