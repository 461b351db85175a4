#include "tgrowth/exact.hpp"

#include <numeric>

#include "tgrowth/errors.hpp"

namespace tgrowth {

Ratio Ratio::make(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw DivisionByZero("ratio with zero denominator");
  const auto g = std::gcd(num, den);
  return g == 0 ? Ratio{0, 1} : Ratio{num / g, den / g};
}

Ratio Ratio::parse(const std::string& text) {
  try {
    if (auto slash = text.find('/'); slash != std::string::npos) {
      return make(std::stoull(text.substr(0, slash)), std::stoull(text.substr(slash + 1)));
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return make(std::stoull(text), 1);
    const std::string frac = text.substr(dot + 1);
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::uint64_t whole = dot == 0 ? 0 : std::stoull(text.substr(0, dot));
    const std::uint64_t part = frac.empty() ? 0 : std::stoull(frac);
    return make(whole * den + part, den);
  } catch (const std::logic_error&) {
    throw ParameterError("cannot parse ratio '" + text + "'");
  }
}

std::strong_ordering Ratio::operator<=>(const Ratio& o) const noexcept {
  const unsigned __int128 lhs = static_cast<unsigned __int128>(num) * o.den;
  const unsigned __int128 rhs = static_cast<unsigned __int128>(o.num) * den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Ratio::decimal(int digits) const {
  return fixed_point(BigInt(num) * pow10(digits) / den, digits);
}

BigInt pow10(int digits) {
  BigInt out = 1;
  for (int i = 0; i < digits; ++i) out *= 10;
  return out;
}

bool sqrt_le(const BigInt& a, const BigInt& y, const BigInt& b) {
  if (b < 0) return false;
  return a * a * y <= b * b;
}

bool sqrt_ge(const BigInt& a, const BigInt& y, const BigInt& b) {
  if (b <= 0) return true;
  return a * a * y >= b * b;
}

bool ratio_le(const BigInt& num, const BigInt& den, const BigInt& value, const SqrtForm& form) {
  // num * (x sqrt(y) + z) <= den * value
  return sqrt_le(num * form.x, form.y, den * value - num * form.z);
}

bool ratio_ge(const BigInt& num, const BigInt& den, const BigInt& value, const SqrtForm& form) {
  return sqrt_ge(num * form.x, form.y, den * value - num * form.z);
}

BigInt scaled_floor(const BigInt& value, const SqrtForm& form, int digits) {
  if (!form.positive()) throw DivisionByZero("bound is zero");
  const BigInt scale = pow10(digits);
  BigInt lo = 0;
  BigInt hi = 1;
  while (ratio_le(hi, scale, value, form)) hi *= 2;
  // Invariant: lo satisfies, hi does not.
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (ratio_le(mid, scale, value, form)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

BigInt scaled_ceil(const BigInt& value, const SqrtForm& form, int digits) {
  BigInt t = scaled_floor(value, form, digits);
  return ratio_ge(t, pow10(digits), value, form) ? t : t + 1;
}

std::string fixed_point(const BigInt& n, int digits) {
  std::string s = n.str();
  if (digits == 0) return s;
  if (s.size() <= static_cast<std::size_t>(digits)) {
    s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  }
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return s;
}

std::string quotient_decimal(const BigInt& value, const SqrtForm& form, int digits) {
  if (!form.positive()) return "inf";
  return fixed_point(scaled_floor(value, form, digits), digits);
}

}  // namespace tgrowth
