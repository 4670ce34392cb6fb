#include "idstates/multiset.hpp"

#include <numeric>

namespace idstates {

DrawVector::DrawVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw InputError("draw vector needs at least one object");
  for (int c : counts_) {
    if (c < 0) throw InputError("draw vector entries must be nonnegative");
  }
  draw_size_ = std::accumulate(counts_.begin(), counts_.end(), 0);
  if (draw_size_ < 1) throw InputError("draw size must be at least 1");
}

DrawVector DrawVector::relabeled(std::span<const int> perm) const {
  if (perm.size() != counts_.size()) {
    throw InputError("relabeling length does not match alphabet size");
  }
  std::vector<int> out(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) out[perm[i]] = counts_[i];
  return DrawVector(std::move(out));
}

std::string DrawVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(counts_[i]);
  }
  return s + ")";
}

PairMatrix::PairMatrix(DrawVector first, DrawVector second)
    : first_(std::move(first)), second_(std::move(second)) {
  if (first_.alphabet_size() != second_.alphabet_size()) {
    throw InputError("pair rows have different alphabet sizes");
  }
  if (first_.draw_size() != second_.draw_size()) {
    throw InputError("pair rows have different draw sizes");
  }
}

std::vector<PairMatrix::Column> PairMatrix::columns() const {
  std::vector<Column> cols(alphabet_size());
  for (int i = 0; i < alphabet_size(); ++i) cols[i] = column(i);
  return cols;
}

PairMatrix PairMatrix::relabeled(std::span<const int> perm) const {
  return {first_.relabeled(perm), second_.relabeled(perm)};
}

Rational DissimilarityValue::value() const {
  Rational r(numerator, denominator());
  r.canonicalize();
  return r;
}

double DissimilarityValue::to_double() const {
  return static_cast<double>(numerator) / static_cast<double>(denominator());
}

std::string DissimilarityValue::to_string() const {
  return std::to_string(numerator) + "/" + std::to_string(denominator());
}

DissimilarityValue dissimilarity(const DrawVector& g1, const DrawVector& g2) {
  if (g1.alphabet_size() != g2.alphabet_size()) {
    throw InputError("dissimilarity: draws have different alphabet sizes");
  }
  if (g1.draw_size() != g2.draw_size()) {
    throw InputError("dissimilarity: draws have different draw sizes");
  }
  std::int64_t shared = 0;
  for (int i = 0; i < g1.alphabet_size(); ++i) {
    shared += static_cast<std::int64_t>(g1[i]) * g2[i];
  }
  const int k = g1.draw_size();
  return {static_cast<std::int64_t>(k) * k - shared, k};
}

}  // namespace idstates
