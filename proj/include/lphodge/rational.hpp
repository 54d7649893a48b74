#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lphodge {

/// Exact rational threshold value. A zero denominator encodes +infinity, which
/// is how degenerate denominators (k = 1 torsion thresholds etc.) are carried.
class Rational {
public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  static Rational infinity() noexcept;

  /// Parses "3", "-2", "1.9", "7/4". Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_infinite() const noexcept { return den_ == 0; }

  double to_double() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

private:
  struct Raw {};
  constexpr Rational(std::int64_t num, std::int64_t den, Raw) : num_(num), den_(den) {}

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Exact comparison of a binary64 value against a rational (p < r).
bool less_than(double value, const Rational& r);

}  // namespace lphodge
