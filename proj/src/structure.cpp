#include "tgrowth/structure.hpp"

#include <algorithm>

#include "tgrowth/growth.hpp"

namespace tgrowth {

namespace {

std::vector<Fq> sorted_unique(std::vector<Fq> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// S + T (or S - T when subtract is set).
std::vector<Fq> sumset(const Field& F, std::span<const Fq> S, std::span<const Fq> T, bool subtract,
                       const Caps& caps) {
  if (static_cast<std::uint64_t>(S.size()) * T.size() > caps.max_pairs) {
    throw ResourceLimit("sumset: pair count exceeds cap", 0);
  }
  std::vector<char> hit(F.q(), 0);
  for (Fq s : S) {
    for (Fq t : T) hit[(subtract ? F.sub(s, t) : F.add(s, t)).v] = 1;
  }
  std::vector<Fq> out;
  for (std::uint32_t v = 0; v < F.q(); ++v) {
    if (hit[v]) out.push_back(Fq{v});
  }
  return out;
}

std::vector<Fq> dilates(const Field& F, std::span<const Fq> X, std::span<const Fq> D) {
  std::vector<Fq> out;
  for (Fq d : D) {
    for (Fq x : X) out.push_back(F.mul(d, x));
  }
  return sorted_unique(std::move(out));
}

std::vector<Fq> multiple(const Field& F, std::span<const Fq> DX, int ell, const Caps& caps) {
  std::vector<Fq> acc(DX.begin(), DX.end());
  for (int i = 1; i < ell; ++i) acc = sumset(F, acc, DX, false, caps);
  return acc;
}

bool big_pow_le(const BigInt& a, std::uint32_t ea, const BigInt& b, std::uint32_t eb) {
  return boost::multiprecision::pow(a, ea) <= boost::multiprecision::pow(b, eb);
}

}  // namespace

std::vector<Fq> extract_X(const T2Set& A, const Caps& caps) {
  const auto a4 = power_set(A, 4, caps);
  const Field& F = A.field();
  std::vector<Fq> out;
  for (const auto& g : a4) {
    if (g.a == F.one() && g.c == F.one()) out.push_back(g.b);
  }
  return sorted_unique(std::move(out));
}

std::vector<Fq> dilate_sumset(const Field& field, std::span<const Fq> X, std::span<const Fq> D,
                              DilateForm form, const Caps& caps) {
  const auto DX = dilates(field, X, D);
  if (form.kind == DilateForm::Kind::x_plus_dx) return sumset(field, X, DX, false, caps);
  if (form.ell < 1 || form.ell > 6) throw ParameterError("multiple must be in 1..6");
  const auto S = multiple(field, DX, form.ell, caps);
  return sumset(field, S, S, true, caps);
}

SumProductVerdict sum_product_oracle(const Field& field, std::span<const Fq> X_in, std::span<const Fq> D_in,
                                     const Caps& caps) {
  const auto X = sorted_unique({X_in.begin(), X_in.end()});
  const auto D = sorted_unique({D_in.begin(), D_in.end()});
  if (X.empty() || D.empty()) throw ParameterError("sum-product oracle needs nonempty X and D");
  SumProductVerdict out;
  out.subfield = subfield_generated_by(field, D);
  const auto span = span_over_subfield(field, X, out.subfield, caps.max_set);
  out.x_size = X.size();
  out.d_size = D.size();
  out.span_size = span.size();
  out.sum_size = dilate_sumset(field, X, D, DilateForm::plus(), caps).size();
  out.growth = Ratio::make(out.sum_size, out.x_size);
  out.density = Ratio::make(out.x_size, out.span_size);

  const BigInt num = out.growth.num, den = out.growth.den;
  out.growth_alternative = big_pow_le(den, 10, num, 10) &&
                           boost::multiprecision::pow(num, 10) >= BigInt(out.d_size) * boost::multiprecision::pow(den, 10);
  out.density_alternative = 2 * BigInt(out.x_size) * boost::multiprecision::pow(num, 4) >=
                            BigInt(out.span_size) * boost::multiprecision::pow(den, 4);

  const auto DX = dilates(field, X, D);
  std::vector<Fq> S = DX;
  for (int ell = 1; ell <= 6; ++ell) {
    if (ell > 1) S = sumset(field, S, DX, false, caps);
    const auto diff = sumset(field, S, S, true, caps);
    out.multiple_sizes.emplace_back(ell, diff.size());
    if (std::includes(diff.begin(), diff.end(), span.begin(), span.end())) {
      out.containment_depth = ell;
      break;
    }
  }
  return out;
}

std::string to_string(StructureCase c) {
  switch (c) {
    case StructureCase::potent:
      return "POTENT";
    case StructureCase::unipotent:
      return "UNIPOTENT";
    default:
      return "INCONCLUSIVE";
  }
}

StructureReport classify(const T2Set& input, const StructureParams& params, const Caps& caps) {
  StructureReport rep;
  rep.params = params;
  rep.symmetrized = !is_symmetric_with_identity(input);
  const T2Set A = rep.symmetrized ? symmetrize(input) : input;
  const T2Group& grp = A.group();
  const Field& F = A.field();
  rep.size = A.size();

  try {
    rep.tripling = Ratio::make(power_set(A, 3, caps).size(), A.size());
    std::vector<Fq> D;
    for (const auto& g : A) D.push_back(chi(grp, g));
    rep.D = sorted_unique(std::move(D));
    rep.F = subfield_generated_by(F, rep.D);
    rep.X = extract_X(A, caps);

    const BigInt d_size = rep.D.size();
    const bool small_d =
        d_size * boost::multiprecision::pow(BigInt(rep.tripling.den), params.exponent) <=
            boost::multiprecision::pow(BigInt(rep.tripling.num), params.exponent) &&
        rep.D.size() <= params.d_ceiling;

    const auto a2 = product_set(A, A, caps);
    if (small_d) {
      rep.result = StructureCase::potent;
      rep.overlap = static_cast<std::uint64_t>(
          std::count_if(a2.begin(), a2.end(), [](const T2Element& g) { return g.a == g.c; }));
      rep.overlap_ratio = Ratio::make(rep.overlap, A.size());
      return rep;
    }

    rep.W = span_over_subfield(F, rep.X, rep.F, caps.max_set);
    std::vector<T2Element> u_elems;
    for (Fq w : rep.W) u_elems.push_back(unipotent(F, w));
    rep.U = T2Set(grp, std::move(u_elems));
    const T2Set& U = *rep.U;

    rep.c1_squares_in_u = std::all_of(a2.begin(), a2.end(), [&](const T2Element& g) {
      return !(g.a == F.one() && g.c == F.one()) || U.contains(g);
    });

    const auto a1 = symmetrize(A);
    T2Set power = a1;
    for (int k = 1; k <= params.power_budget; ++k) {
      if (k > 1) {
        T2Set next = product_set(power, a1, caps);
        const bool stable = next == power;
        power = std::move(next);
        if (stable) {
          rep.c2_depth = k;
          break;
        }
      }
      rep.c2_depth = k;
      if (power.includes(U)) {
        rep.c2_power = k;
        break;
      }
    }

    rep.c3_normalized = std::all_of(A.begin(), A.end(), [&](const T2Element& a) {
      const auto ai = grp.inv(a);
      return std::all_of(U.begin(), U.end(),
                         [&](const T2Element& u) { return U.contains(grp.mul(grp.mul(ai, u), a)); });
    });

    rep.c4_commutators = std::all_of(A.begin(), A.end(), [&](const T2Element& a) {
      return std::all_of(A.begin(), A.end(),
                         [&](const T2Element& b) { return U.contains(commutator(grp, a, b)); });
    });

    if (!rep.c1_squares_in_u) {
      rep.failed_certificate = "C1";
    } else if (!rep.c2_power) {
      rep.failed_certificate = "C2";
    } else if (!rep.c3_normalized) {
      rep.failed_certificate = "C3";
    } else if (!rep.c4_commutators) {
      rep.failed_certificate = "C4";
    }
    rep.result = rep.failed_certificate.empty() ? StructureCase::unipotent : StructureCase::inconclusive;
  } catch (const ResourceLimit& e) {
    rep.result = StructureCase::inconclusive;
    rep.error = e.what();
  }
  return rep;
}

}  // namespace tgrowth
