#include "tgrowth/field.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "tgrowth/errors.hpp"

namespace tgrowth {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec builtin_field_spec(std::uint32_t q) {
  if (is_prime(q)) return FieldSpec{q, 1, {0, 1}};
  // Conway polynomials, except q = 9 which uses t^2 + 1.
  static const std::map<std::uint32_t, FieldSpec> table = {
      {4, {2, 2, {1, 1, 1}}},
      {8, {2, 3, {1, 1, 0, 1}}},
      {9, {3, 2, {1, 0, 1}}},
      {16, {2, 4, {1, 1, 0, 0, 1}}},
      {25, {5, 2, {2, 4, 1}}},
      {27, {3, 3, {1, 2, 0, 1}}},
      {32, {2, 5, {1, 0, 1, 0, 0, 1}}},
      {49, {7, 2, {3, 6, 1}}},
      {64, {2, 6, {1, 1, 0, 1, 1, 0, 1}}},
      {81, {3, 4, {2, 0, 0, 2, 1}}},
      {121, {11, 2, {2, 7, 1}}},
      {125, {5, 3, {3, 3, 0, 1}}},
      {128, {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}}},
      {169, {13, 2, {2, 12, 1}}},
      {243, {3, 5, {1, 2, 0, 0, 0, 1}}},
      {256, {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}}},
  };
  auto it = table.find(q);
  if (it == table.end()) {
    throw ParameterError("no built-in modulus for q = " + std::to_string(q));
  }
  return it->second;
}

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of f modulo the nonzero polynomial g over F_p.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (f.size() > dg) {
    const std::uint64_t factor = std::uint64_t(f.back()) * lead_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<std::uint32_t>(
          (f[shift + i] + (p - factor) * g[i]) % p);
    }
    trim(f);
  }
  return f;
}

bool has_factor_of_degree(const Poly& f, std::uint32_t d, std::uint32_t p) {
  // All monic polynomials of degree d, indexed by their lower coefficients.
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < d; ++i) count *= p;
  Poly g(d + 1);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t rest = idx;
    for (std::uint32_t i = 0; i < d; ++i) {
      g[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    g[d] = 1;
    if (poly_mod(f, g, p).empty()) return true;
  }
  return false;
}

}  // namespace

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  const auto p = spec_.p;
  const auto r = spec_.r;
  if (!is_prime(p)) throw ParameterError("field characteristic is not prime");
  if (r < 1) throw ParameterError("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw ParameterError("field order exceeds 2^16");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (spec_.modulus.size() != r + 1 || spec_.modulus.back() != 1) {
    throw ParameterError("modulus must be monic of degree r");
  }
  for (auto c : spec_.modulus) {
    if (c >= p) throw ParameterError("modulus coefficient out of range");
  }
  for (std::uint32_t d = 1; d <= r / 2; ++d) {
    if (has_factor_of_degree(spec_.modulus, d, p)) {
      throw ParameterError("modulus is reducible");
    }
  }

  // Discrete log tables from the smallest primitive element.
  exp_.assign(q_, 0);
  log_.assign(q_, 0);
  const std::uint32_t order = q_ - 1;
  for (std::uint32_t cand = 1; cand < q_; ++cand) {
    std::uint32_t x = 1;
    std::uint32_t k = 0;
    bool primitive = true;
    for (k = 0; k < order; ++k) {
      if (k > 0 && x == 1) {
        primitive = false;
        break;
      }
      exp_[k] = x;
      x = mul_poly(Fq{x}, Fq{cand}).v;
    }
    if (primitive && x == 1) break;
    if (cand + 1 == q_) throw ParameterError("no primitive element found");
  }
  for (std::uint32_t k = 0; k < order; ++k) log_[exp_[k]] = k;
  if (q_ == 2) exp_[1] = 1;
}

std::shared_ptr<const Field> Field::make(FieldSpec spec) {
  return std::make_shared<const Field>(std::move(spec));
}

std::shared_ptr<const Field> Field::builtin(std::uint32_t q) {
  return make(builtin_field_spec(q));
}

Fq Field::from_int(std::int64_t n) const noexcept {
  const std::int64_t p = spec_.p;
  return Fq{static_cast<std::uint32_t>(((n % p) + p) % p)};
}

Fq Field::add(Fq x, Fq y) const noexcept {
  const std::uint32_t p = spec_.p;
  if (spec_.r == 1) return Fq{(x.v + y.v) % p};
  if (p == 2) return Fq{x.v ^ y.v};
  std::uint32_t a = x.v, b = y.v, out = 0, place = 1;
  while (a != 0 || b != 0) {
    out += ((a % p + b % p) % p) * place;
    place *= p;
    a /= p;
    b /= p;
  }
  return Fq{out};
}

Fq Field::neg(Fq x) const noexcept {
  const std::uint32_t p = spec_.p;
  if (spec_.r == 1) return Fq{(p - x.v) % p};
  if (p == 2) return x;
  std::uint32_t a = x.v, out = 0, place = 1;
  while (a != 0) {
    out += ((p - a % p) % p) * place;
    place *= p;
    a /= p;
  }
  return Fq{out};
}

Fq Field::mul(Fq x, Fq y) const noexcept {
  if (x.v == 0 || y.v == 0) return Fq{0};
  if (spec_.r == 1) {
    return Fq{static_cast<std::uint32_t>(std::uint64_t(x.v) * y.v % spec_.p)};
  }
  std::uint32_t k = log_[x.v] + log_[y.v];
  if (k >= q_ - 1) k -= q_ - 1;
  return Fq{exp_[k]};
}

Fq Field::inv(Fq x) const {
  if (x.v == 0) throw DivisionByZero("inverse of zero");
  const std::uint32_t k = log_[x.v];
  return Fq{exp_[k == 0 ? 0 : q_ - 1 - k]};
}

Fq Field::pow(Fq x, std::uint64_t n) const noexcept {
  if (n == 0) return one();
  if (x.v == 0) return zero();
  const std::uint64_t k = (std::uint64_t(log_[x.v]) * (n % (q_ - 1))) % (q_ - 1);
  return Fq{exp_[k]};
}

Fq Field::mul_poly(Fq x, Fq y) const noexcept {
  const std::uint32_t p = spec_.p;
  const std::uint32_t r = spec_.r;
  std::vector<std::uint64_t> prod(2 * r, 0);
  std::uint32_t a = x.v;
  for (std::uint32_t i = 0; i < r; ++i, a /= p) {
    const std::uint32_t ai = a % p;
    if (ai == 0) continue;
    std::uint32_t b = y.v;
    for (std::uint32_t j = 0; j < r; ++j, b /= p) {
      prod[i + j] = (prod[i + j] + std::uint64_t(ai) * (b % p)) % p;
    }
  }
  // Reduce using t^r = -(m_0 + ... + m_{r-1} t^{r-1}).
  for (std::size_t deg = 2 * r - 1; deg >= r; --deg) {
    const std::uint64_t c = prod[deg];
    if (c == 0) continue;
    prod[deg] = 0;
    for (std::uint32_t i = 0; i < r; ++i) {
      const std::size_t at = deg - r + i;
      prod[at] = (prod[at] + c * (p - spec_.modulus[i])) % p;
    }
  }
  std::uint32_t out = 0;
  for (std::uint32_t i = r; i-- > 0;) out = out * p + static_cast<std::uint32_t>(prod[i]);
  return Fq{out};
}

std::vector<std::uint32_t> Field::digits(Fq x) const {
  std::vector<std::uint32_t> out(spec_.r);
  std::uint32_t a = x.v;
  for (auto& d : out) {
    d = a % spec_.p;
    a /= spec_.p;
  }
  return out;
}

Fq Field::from_digits(std::span<const std::uint32_t> digits) const {
  if (digits.size() != spec_.r) throw ParameterError("digit vector has wrong length");
  std::uint32_t out = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= spec_.p) throw ParameterError("digit out of range");
    out = out * spec_.p + digits[i];
  }
  return Fq{out};
}

std::uint32_t Field::frobenius_degree(Fq x) const {
  std::uint64_t pk = 1;
  for (std::uint32_t s = 1; s <= spec_.r; ++s) {
    pk *= spec_.p;
    if (spec_.r % s == 0 && pow(x, pk) == x) return s;
  }
  return spec_.r;
}

std::vector<Fq> Field::elements() const {
  std::vector<Fq> out(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out[i] = Fq{i};
  return out;
}

namespace {

void require_same(const FieldElement& x, const FieldElement& y) {
  if (!x.field || !y.field || !x.field->same_as(*y.field)) {
    throw SpecMismatch("field elements belong to different fields");
  }
}

}  // namespace

FieldElement ff_add(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return {x.field, x.field->add(x.value, y.value)};
}

FieldElement ff_sub(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return {x.field, x.field->sub(x.value, y.value)};
}

FieldElement ff_mul(const FieldElement& x, const FieldElement& y) {
  require_same(x, y);
  return {x.field, x.field->mul(x.value, y.value)};
}

FieldElement ff_inv(const FieldElement& x) {
  return {x.field, x.field->inv(x.value)};
}

bool SubfieldSpec::contains(Fq x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

SubfieldSpec subfield_of_degree(const Field& field, std::uint32_t s) {
  if (s == 0 || field.r() % s != 0) {
    throw ParameterError("subfield degree must divide the extension degree");
  }
  std::uint32_t size = 1;
  for (std::uint32_t i = 0; i < s; ++i) size *= field.p();
  const std::uint32_t step = (field.q() - 1) / (size - 1);
  SubfieldSpec out{s, {}};
  out.elements.reserve(size);
  out.elements.push_back(field.zero());
  for (std::uint32_t k = 0; k + 1 < size; ++k) {
    out.elements.push_back(field.pow(field.generator(), std::uint64_t(k) * step));
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

SubfieldSpec subfield_generated_by(const Field& field, std::span<const Fq> D) {
  if (D.empty()) throw ParameterError("generating set must be nonempty");
  std::uint32_t s = 1;
  for (Fq d : D) {
    if (!field.contains(d)) throw SpecMismatch("element outside the field");
    s = std::lcm(s, field.frobenius_degree(d));
  }
  return subfield_of_degree(field, s);
}

SubfieldSpec subfield_generated_by(std::span<const FieldElement> D) {
  if (D.empty()) throw ParameterError("generating set must be nonempty");
  std::vector<Fq> values;
  for (const auto& d : D) {
    require_same(D.front(), d);
    values.push_back(d.value);
  }
  return subfield_generated_by(*D.front().field, values);
}

std::vector<Fq> span_over_subfield(const Field& field, std::span<const Fq> X,
                                   const SubfieldSpec& F, std::size_t cap) {
  std::vector<char> member(field.q(), 0);
  std::vector<Fq> span{field.zero()};
  member[0] = 1;
  for (Fq x : X) {
    if (!field.contains(x)) throw SpecMismatch("element outside the field");
    if (member[x.v]) continue;
    if (span.size() * F.size() > cap) {
      throw ResourceLimit("span exceeds cap", span.size());
    }
    // x is independent of the current span, so span + F*x is a direct sum.
    std::vector<Fq> next;
    next.reserve(span.size() * F.size());
    for (Fq f : F.elements) {
      const Fq fx = field.mul(f, x);
      for (Fq s : span) next.push_back(field.add(s, fx));
    }
    for (Fq y : next) member[y.v] = 1;
    span = std::move(next);
  }
  std::sort(span.begin(), span.end());
  return span;
}

}  // namespace tgrowth
