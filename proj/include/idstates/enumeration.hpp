#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "idstates/multiset.hpp"

namespace idstates {

using Partition = std::vector<int>;

/// Partitions of k, each nonincreasing, in lexicographically decreasing order.
std::vector<Partition> unordered_partitions(int k);

/// All distinct length-`slots` vectors whose nonzero entries are a
/// rearrangement of `partition`, in lexicographically decreasing order.
std::vector<std::vector<int>> placements(std::span<const int> partition,
                                         int slots);

/// (K+1) x (K+1) matrix; entry (a, b) counts the columns of a pair equal to
/// (a, b). Indices are zero-based here, so entry (0, 0) counts empty columns.
class StateMatrix {
 public:
  StateMatrix() = default;
  explicit StateMatrix(int draw_size);
  StateMatrix(int draw_size, std::vector<int> cells);

  int draw_size() const { return draw_size_; }
  int dimension() const { return draw_size_ + 1; }
  int at(int row, int col) const { return cells_[row * dimension() + col]; }
  int& at(int row, int col) { return cells_[row * dimension() + col]; }
  std::span<const int> cells() const { return cells_; }

  /// Sum of all entries, i.e. the alphabet size I of the source pair.
  int alphabet_size() const;
  /// Columns that are not (0, 0).
  int nonzero_columns() const { return alphabet_size() - cells_[0]; }
  /// Row and column weighted sums both equal K.
  bool is_valid() const;

  StateMatrix transposed() const;
  bool is_symmetric() const;
  /// Same matrix with the empty-column count set so the sum is `alphabet`.
  StateMatrix with_alphabet_size(int alphabet) const;

  std::string to_string() const;

  friend bool operator==(const StateMatrix&, const StateMatrix&) = default;
  friend auto operator<=>(const StateMatrix&, const StateMatrix&) = default;

 private:
  int draw_size_ = 0;
  std::vector<int> cells_;
};

struct StateMatrixHash {
  std::size_t operator()(const StateMatrix& m) const noexcept;
};

StateMatrix state_matrix(const PairMatrix& pair);

/// Row-major lexicographic minimum of m and its transpose.
StateMatrix canonicalize(const StateMatrix& m);

int n_distinct(const PairMatrix& pair);

struct IdentityState {
  StateMatrix canonical_matrix;
  /// Columns sorted decreasing by (top, bottom); empty columns last.
  PairMatrix representative;
  DissimilarityValue dissimilarity;
  int n_distinct = 0;
  bool is_symmetric = false;
  std::uint64_t stabilizer_size = 1;
  bool row_equiv = false;
  bool row_equal = false;
};

/// Pair whose columns realise `m` or its transpose, columns sorted
/// decreasing, with the lexicographically larger draw first.
PairMatrix representative_pair(const StateMatrix& m);

/// Builds the full state record for a canonical matrix.
IdentityState make_identity_state(const StateMatrix& canonical);

/// Canonical matrices of every identity state at alphabet size 2K, sorted.
/// Row 1 is restricted to one placement per partition; work items
/// (partition, row-2 placement) are distributed over OpenMP threads.
std::vector<StateMatrix> canonical_state_matrices(int k);

/// Single-threaded reference for canonical_state_matrices.
std::vector<StateMatrix> canonical_state_matrices_serial(int k);

/// Every distinct state matrix at alphabet size 2K before the transpose
/// quotient, from the unreduced row-1 enumeration. Exhaustive; small K only.
std::vector<StateMatrix> distinct_state_matrices_unreduced(int k);

/// One record per identity state for draws of size k over `alphabet` objects,
/// sorted by representative (first draw, then second, both decreasing).
std::vector<IdentityState> enumerate_states(int k, int alphabet);
std::vector<IdentityState> enumerate_states_serial(int k, int alphabet);

std::size_t state_count(int k, int alphabet);

}  // namespace idstates
