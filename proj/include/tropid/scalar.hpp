#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "tropid/rational.hpp"

namespace tropid {

/// Element of the max-plus semiring over the rationals: an exact rational or
/// the bottom element -inf. Tropical addition is max(), tropical
/// multiplication is ordinary `+`, and bottom absorbs under `+`.
class TropScalar {
 public:
  /// Default-constructed scalars are bottom.
  constexpr TropScalar() = default;
  TropScalar(std::int64_t value) : value_(value), finite_(true) {}  // NOLINT(implicit)
  TropScalar(int value) : value_(value), finite_(true) {}           // NOLINT(implicit)
  TropScalar(Rational value) : value_(value), finite_(true) {}      // NOLINT(implicit)

  static constexpr TropScalar bottom() { return TropScalar(); }
  static TropScalar one() { return TropScalar(0); }

  [[nodiscard]] constexpr bool is_bottom() const { return !finite_; }
  [[nodiscard]] constexpr bool is_finite() const { return finite_; }
  /// Precondition: is_finite().
  [[nodiscard]] const Rational& value() const { return value_; }

  friend TropScalar operator+(const TropScalar& x, const TropScalar& y) {
    if (!x.finite_ || !y.finite_) return bottom();
    return TropScalar(x.value_ + y.value_);
  }
  TropScalar& operator+=(const TropScalar& y) { return *this = *this + y; }

  /// Ordinary difference of finite scalars; bottom minus finite is bottom.
  friend TropScalar operator-(const TropScalar& x, const Rational& y) {
    if (!x.finite_) return bottom();
    return TropScalar(x.value_ - y);
  }

  /// k-fold tropical power (ordinary multiplication by k), k >= 0.
  [[nodiscard]] TropScalar times(std::int64_t k) const {
    if (k == 0) return one();
    if (!finite_) return bottom();
    return TropScalar(value_ * Rational(k));
  }

  friend bool operator==(const TropScalar& x, const TropScalar& y) {
    if (x.finite_ != y.finite_) return false;
    return !x.finite_ || x.value_ == y.value_;
  }
  friend std::strong_ordering operator<=>(const TropScalar& x, const TropScalar& y) {
    if (!x.finite_ || !y.finite_) return x.finite_ <=> y.finite_;
    return x.value_ <=> y.value_;
  }

  /// "-inf" or the exact rational string.
  [[nodiscard]] std::string to_string() const;
  static TropScalar parse(std::string_view text);

 private:
  Rational value_{};
  bool finite_ = false;
};

/// Tropical addition.
inline TropScalar tmax(const TropScalar& x, const TropScalar& y) { return x < y ? y : x; }

inline const TropScalar kBottom = TropScalar::bottom();

}  // namespace tropid
