#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace tgrowth {

/// An element of F_q in wire form: the base-p integer sum(coeff_i * p^i) of its
/// reduced coefficient vector. Two elements are equal iff their wire forms are.
struct Fq {
  std::uint32_t v = 0;

  friend constexpr auto operator<=>(Fq, Fq) = default;
};

/// F_{p^r} presented as F_p[t]/(modulus). The modulus is little-endian and
/// monic of degree r.
struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  std::vector<std::uint32_t> modulus;

  bool operator==(const FieldSpec&) const = default;
};

constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

bool is_prime(std::uint64_t n);

/// Spec for a prime q, or for one of the shipped prime powers
/// {4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 169, 243, 256}.
/// Throws ParameterError otherwise.
FieldSpec builtin_field_spec(std::uint32_t q);

/// Immutable arithmetic context for one finite field. Multiplication and
/// inversion go through discrete log tables; `mul_poly` is the schoolbook
/// reference the tables are built from.
class Field {
 public:
  /// Validates `spec` (prime p, monic irreducible modulus, q <= 2^16) and
  /// builds the tables. Throws ParameterError.
  explicit Field(FieldSpec spec);

  static std::shared_ptr<const Field> make(FieldSpec spec);
  static std::shared_ptr<const Field> builtin(std::uint32_t q);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t p() const noexcept { return spec_.p; }
  std::uint32_t r() const noexcept { return spec_.r; }
  std::uint32_t q() const noexcept { return q_; }

  Fq zero() const noexcept { return Fq{0}; }
  Fq one() const noexcept { return Fq{1}; }
  bool contains(Fq x) const noexcept { return x.v < q_; }
  /// Image of an integer in the prime subfield.
  Fq from_int(std::int64_t n) const noexcept;

  Fq add(Fq x, Fq y) const noexcept;
  Fq sub(Fq x, Fq y) const noexcept { return add(x, neg(y)); }
  Fq neg(Fq x) const noexcept;
  Fq mul(Fq x, Fq y) const noexcept;
  /// Throws DivisionByZero on x = 0.
  Fq inv(Fq x) const;
  Fq div(Fq x, Fq y) const { return mul(x, inv(y)); }
  Fq pow(Fq x, std::uint64_t n) const noexcept;

  Fq mul_poly(Fq x, Fq y) const noexcept;

  std::vector<std::uint32_t> digits(Fq x) const;
  Fq from_digits(std::span<const std::uint32_t> digits) const;

  /// A fixed primitive element (smallest wire form of multiplicative order q-1).
  Fq generator() const noexcept { return Fq{exp_[1]}; }
  /// Smallest s | r with x^(p^s) = x.
  std::uint32_t frobenius_degree(Fq x) const;

  std::vector<Fq> elements() const;
  bool same_as(const Field& other) const noexcept {
    return this == &other || spec_ == other.spec_;
  }

 private:
  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Checked element handle: carries its field so that mixing fields is caught.
struct FieldElement {
  FieldPtr field;
  Fq value;

  bool operator==(const FieldElement& o) const {
    return field->same_as(*o.field) && value == o.value;
  }
};

FieldElement ff_add(const FieldElement& x, const FieldElement& y);
FieldElement ff_sub(const FieldElement& x, const FieldElement& y);
FieldElement ff_mul(const FieldElement& x, const FieldElement& y);
FieldElement ff_inv(const FieldElement& x);

/// A subfield F_{p^s} of F_q, listed in wire-form order.
struct SubfieldSpec {
  std::uint32_t degree = 0;
  std::vector<Fq> elements;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(Fq x) const;
};

/// The unique subfield of the given degree. Throws ParameterError unless s | r.
SubfieldSpec subfield_of_degree(const Field& field, std::uint32_t s);

/// Smallest subfield containing D, found from the Frobenius degrees of D.
SubfieldSpec subfield_generated_by(const Field& field, std::span<const Fq> D);
SubfieldSpec subfield_generated_by(std::span<const FieldElement> D);

/// The F-linear span of X, enumerated. Throws ResourceLimit when the span
/// would exceed `cap` elements.
std::vector<Fq> span_over_subfield(const Field& field, std::span<const Fq> X,
                                   const SubfieldSpec& F, std::size_t cap);

}  // namespace tgrowth
