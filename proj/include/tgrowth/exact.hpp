#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tgrowth {

using BigInt = boost::multiprecision::cpp_int;

/// Nonnegative rational in lowest terms.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio make(std::uint64_t num, std::uint64_t den);
  /// Parses "123", "0.25" or "3/4".
  static Ratio parse(const std::string& text);

  std::strong_ordering operator<=>(const Ratio& o) const noexcept;
  bool operator==(const Ratio& o) const noexcept { return num == o.num && den == o.den; }

  /// Fixed-point rendering truncated to `digits` decimals.
  std::string decimal(int digits = 9) const;
};

/// x * sqrt(y) + z with x, y, z >= 0, the shape of every bound the tool
/// compares against. All comparisons are exact.
struct SqrtForm {
  BigInt x, y, z;

  bool positive() const { return z > 0 || (x > 0 && y > 0); }
};

/// a * sqrt(y) <= b, for a, y >= 0.
bool sqrt_le(const BigInt& a, const BigInt& y, const BigInt& b);
/// a * sqrt(y) >= b, for a, y >= 0.
bool sqrt_ge(const BigInt& a, const BigInt& y, const BigInt& b);

/// num/den <= value/form.
bool ratio_le(const BigInt& num, const BigInt& den, const BigInt& value, const SqrtForm& form);
/// value/form <= num/den.
bool ratio_ge(const BigInt& num, const BigInt& den, const BigInt& value, const SqrtForm& form);

/// floor(10^digits * value / form). `form` must be positive.
BigInt scaled_floor(const BigInt& value, const SqrtForm& form, int digits);
/// ceil(10^digits * value / form).
BigInt scaled_ceil(const BigInt& value, const SqrtForm& form, int digits);

/// Renders n / 10^digits.
std::string fixed_point(const BigInt& n, int digits);

/// value/form truncated to `digits` decimals; "inf" when form is zero.
std::string quotient_decimal(const BigInt& value, const SqrtForm& form, int digits = 9);

BigInt pow10(int digits);

}  // namespace tgrowth
