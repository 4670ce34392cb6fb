#pragma once

#include <cmath>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "idstates/error.hpp"
#include "idstates/rational.hpp"

namespace idstates {

/// Absolute slack allowed on the sum of a floating-point frequency vector
/// before it is renormalized; larger deviations are rejected.
inline constexpr double kFloatSumTolerance = 1e-9;

/// Probability vector over I objects. Rational vectors must sum to exactly 1;
/// double vectors within kFloatSumTolerance of 1 and are then renormalized.
template <class Scalar>
class FrequencyVector {
 public:
  FrequencyVector() = default;

  explicit FrequencyVector(std::vector<Scalar> entries)
      : entries_(std::move(entries)) {
    if (entries_.empty()) throw InputError("frequency vector is empty");
    Scalar total = 0;
    for (const auto& x : entries_) {
      if constexpr (std::is_floating_point_v<Scalar>) {
        if (!std::isfinite(x)) throw InputError("frequency is not finite");
      }
      if (x < 0) throw InputError("frequencies must be nonnegative");
      total += x;
    }
    if constexpr (std::is_floating_point_v<Scalar>) {
      if (std::abs(total - 1.0) > kFloatSumTolerance) {
        throw InputError("frequencies sum to " + format_double(total));
      }
      for (auto& x : entries_) x /= total;
    } else {
      if (total != 1) {
        throw InputError("frequencies sum to " + to_string(total));
      }
    }
  }

  int size() const { return static_cast<int>(entries_.size()); }
  std::span<const Scalar> entries() const { return entries_; }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }

  /// Number of strictly positive entries.
  int support_size() const {
    int n = 0;
    for (const auto& x : entries_) n += x > 0 ? 1 : 0;
    return n;
  }

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;

 private:
  std::vector<Scalar> entries_;
};

template <class Scalar>
FrequencyVector<Scalar> unit_frequencies(int alphabet, int index) {
  std::vector<Scalar> v(alphabet, Scalar(0));
  v.at(index) = 1;
  return FrequencyVector<Scalar>(std::move(v));
}

template <class Scalar>
FrequencyVector<Scalar> uniform_frequencies(int alphabet) {
  return FrequencyVector<Scalar>(
      std::vector<Scalar>(alphabet, from_ratio<Scalar>(1, alphabet)));
}

/// Converts an exact vector to floating point (renormalizing round-off).
FrequencyVector<double> to_floating(const FrequencyVector<Rational>& v);

}  // namespace idstates
