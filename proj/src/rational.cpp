#include "lphodge/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace lphodge {

namespace {

__int128 cross(std::int64_t a, std::int64_t b) { return static_cast<__int128>(a) * b; }

Rational reduce(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr __int128 lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || -num > lim || den > lim) throw std::overflow_error("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::infinity() noexcept { return Rational(1, 0, Raw{}); }

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  std::string s(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Rational a = parse(s.substr(0, slash));
    const Rational b = parse(s.substr(slash + 1));
    if (b.num_ == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return a / b;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  __int128 num = 0;
  __int128 den = 1;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal number: " + s);
    seen_digit = true;
    num = num * 10 + (c - '0');
    if (seen_point) den *= 10;
    if (num > (static_cast<__int128>(1) << 100)) throw std::invalid_argument("too many digits: " + s);
  }
  if (!seen_digit) throw std::invalid_argument("not a decimal number: " + s);
  return reduce(negative ? -num : num, den);
}

double Rational::to_double() const noexcept {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (is_infinite()) return "inf";
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  const __int128 lhs = cross(a.num_, b.den_);
  const __int128 rhs = cross(b.num_, a.den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) return Rational::infinity();
  return reduce(cross(a.num_, b.den_) + cross(b.num_, a.den_), cross(a.den_, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) {
  if (b.is_infinite()) throw std::domain_error("subtracting infinity");
  if (a.is_infinite()) return a;
  return reduce(cross(a.num_, b.den_) - cross(b.num_, a.den_), cross(a.den_, b.den_));
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_infinite() || b.is_infinite()) {
    if (a.num_ == 0 || b.num_ == 0) throw std::domain_error("0 * infinity");
    if ((a.num_ < 0) != (b.num_ < 0)) throw std::domain_error("negative infinity");
    return Rational::infinity();
  }
  return reduce(cross(a.num_, b.num_), cross(a.den_, b.den_));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_infinite()) {
    if (a.is_infinite()) throw std::domain_error("infinity / infinity");
    return Rational(0);
  }
  if (b.num_ == 0) {
    if (a.num_ <= 0 || a.is_infinite()) throw std::domain_error("division by zero");
    return Rational::infinity();
  }
  if (a.is_infinite()) {
    if (b.num_ < 0) throw std::domain_error("negative infinity");
    return a;
  }
  return reduce(cross(a.num_, b.den_), cross(a.den_, b.num_));
}

bool less_than(double value, const Rational& r) {
  if (r.is_infinite()) return !std::isnan(value) && value != std::numeric_limits<double>::infinity();
  // value * den < num, evaluated in long double; exact for the decimal inputs we take.
  const long double lhs = static_cast<long double>(value) * static_cast<long double>(r.den());
  return lhs < static_cast<long double>(r.num());
}

}  // namespace lphodge
