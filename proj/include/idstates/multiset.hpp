#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "idstates/error.hpp"
#include "idstates/rational.hpp"

namespace idstates {

/// One unordered draw of K items from I objects, stored as the count of each
/// object. K is the sum of the counts.
class DrawVector {
 public:
  DrawVector() = default;
  explicit DrawVector(std::vector<int> counts);

  int draw_size() const { return draw_size_; }
  int alphabet_size() const { return static_cast<int>(counts_.size()); }
  std::span<const int> counts() const { return counts_; }
  int operator[](std::size_t i) const { return counts_[i]; }

  /// Applies an object relabeling: result[perm[i]] = counts[i].
  DrawVector relabeled(std::span<const int> perm) const;

  std::string to_string() const;

  friend bool operator==(const DrawVector&, const DrawVector&) = default;
  friend auto operator<=>(const DrawVector& a, const DrawVector& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  std::vector<int> counts_;
  int draw_size_ = 0;
};

/// Ordered pair of draws over the same alphabet with the same draw size,
/// read as a 2 x I matrix.
class PairMatrix {
 public:
  struct Column {
    int top = 0;
    int bottom = 0;
    friend auto operator<=>(const Column&, const Column&) = default;
  };

  PairMatrix() = default;
  PairMatrix(DrawVector first, DrawVector second);

  const DrawVector& first() const { return first_; }
  const DrawVector& second() const { return second_; }
  int draw_size() const { return first_.draw_size(); }
  int alphabet_size() const { return first_.alphabet_size(); }

  Column column(int i) const { return {first_[i], second_[i]}; }
  std::vector<Column> columns() const;

  PairMatrix swapped() const { return {second_, first_}; }
  PairMatrix relabeled(std::span<const int> perm) const;

  friend bool operator==(const PairMatrix&, const PairMatrix&) = default;
  friend auto operator<=>(const PairMatrix&, const PairMatrix&) = default;

 private:
  DrawVector first_;
  DrawVector second_;
};

/// numerator / K^2, with numerator in [0, K^2].
struct DissimilarityValue {
  std::int64_t numerator = 0;
  int draw_size = 1;

  std::int64_t denominator() const {
    return static_cast<std::int64_t>(draw_size) * draw_size;
  }
  Rational value() const;
  double to_double() const;
  /// Unreduced "num/K^2" form, e.g. "2/4" for K=2.
  std::string to_string() const;

  friend bool operator==(const DissimilarityValue&,
                         const DissimilarityValue&) = default;
};

/// 1 - <g1, g2> / K^2.
DissimilarityValue dissimilarity(const DrawVector& g1, const DrawVector& g2);

template <class Scalar>
Scalar inner_product(std::span<const Scalar> p, std::span<const Scalar> q) {
  if (p.size() != q.size()) {
    throw InputError("inner_product: length mismatch (" +
                     std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()) + ")");
  }
  Scalar total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) total += p[i] * q[i];
  return total;
}

}  // namespace idstates
