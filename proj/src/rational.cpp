#include "tropid/rational.hpp"

#include <charconv>
#include <limits>

namespace tropid {
namespace {

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr __int128 kMin = std::numeric_limits<std::int64_t>::min();

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t out = 0;
  auto first = s.data();
  auto last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return out;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < kMin || den > kMax) {
    throw ArithmeticOverflow("rational arithmetic left the int64 range");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational operator+(const Rational& x, const Rational& y) {
  if (x.den_ == 1 && y.den_ == 1) {
    std::int64_t out;
    if (__builtin_add_overflow(x.num_, y.num_, &out)) {
      throw ArithmeticOverflow("integer addition overflow");
    }
    return Rational(out);
  }
  __int128 num = static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_;
  __int128 den = static_cast<__int128>(x.den_) * y.den_;
  return Rational::from_wide(num, den);
}

Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

Rational Rational::operator-() const {
  if (num_ == std::numeric_limits<std::int64_t>::min()) {
    throw ArithmeticOverflow("negation overflow");
  }
  Rational r = *this;
  r.num_ = -num_;
  return r;
}

Rational operator*(const Rational& x, const Rational& y) {
  if (x.den_ == 1 && y.den_ == 1) {
    std::int64_t out;
    if (__builtin_mul_overflow(x.num_, y.num_, &out)) {
      throw ArithmeticOverflow("integer multiplication overflow");
    }
    return Rational(out);
  }
  return Rational::from_wide(static_cast<__int128>(x.num_) * y.num_,
                             static_cast<__int128>(x.den_) * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.num_ == 0) throw std::domain_error("division by zero");
  return Rational::from_wide(static_cast<__int128>(x.num_) * y.den_,
                             static_cast<__int128>(x.den_) * y.num_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  if (x.den_ == y.den_) return x.num_ <=> y.num_;
  __int128 lhs = static_cast<__int128>(x.num_) * y.den_;
  __int128 rhs = static_cast<__int128>(y.num_) * x.den_;
  return lhs <=> rhs;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

}  // namespace tropid
