#include "tgrowth/serialize.hpp"

#include <limits>

#include "tgrowth/errors.hpp"

namespace tgrowth {

namespace {

Json fq_list(std::span<const Fq> xs) {
  Json out = Json::array();
  for (Fq x : xs) out.push_back(x.v);
  return out;
}

Json pair_list(const std::vector<std::pair<int, std::uint64_t>>& xs, const char* first, const char* second) {
  Json out = Json::array();
  for (const auto& [k, v] : xs) out.push_back({{first, k}, {second, v}});
  return out;
}

std::uint32_t coord(const Json& j) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    throw ParameterError("coordinate must be a nonnegative integer");
  }
  const auto v = j.get<std::uint64_t>();
  if (v >= kMaxFieldOrder) throw ParameterError("coordinate out of range");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Json encode(const FieldSpec& spec) {
  return {{"p", spec.p}, {"r", spec.r}, {"modulus", spec.modulus}};
}

FieldSpec decode_field_spec(const Json& j) {
  if (!j.is_object()) throw ParameterError("field must be an object");
  if (j.contains("q")) return builtin_field_spec(j.at("q").get<std::uint32_t>());
  if (!j.contains("p") || !j.contains("r") || !j.contains("modulus")) {
    throw ParameterError("field needs p, r and modulus, or q");
  }
  return {j.at("p").get<std::uint32_t>(), j.at("r").get<std::uint32_t>(),
          j.at("modulus").get<std::vector<std::uint32_t>>()};
}

Json encode(const T2Element& g) { return Json::array({g.a.v, g.b.v, g.c.v}); }
Json encode(const HeisElement& g) { return Json::array({g.g1.v, g.g2.v, g.g3.v}); }
Json encode(const Ratio& r) { return {{"num", r.num}, {"den", r.den}}; }

Json encode(const BigInt& n) {
  if (n >= 0 && n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
  return n.str();
}

Json encode(const SqrtForm& f) { return {{"x", encode(f.x)}, {"y", encode(f.y)}, {"z", encode(f.z)}}; }

Json encode(const SubgroupTag& tag) {
  Json out{{"kind", to_string(tag.kind)}};
  switch (tag.kind) {
    case SubgroupKind::Torus:
    case SubgroupKind::LambdaTorus:
      out["x"] = tag.x.v;
      break;
    case SubgroupKind::L:
    case SubgroupKind::LZ:
      out["direction"] = Json::array({tag.direction[0].v, tag.direction[1].v});
      break;
    default:
      break;
  }
  return out;
}

SubgroupTag decode_subgroup_tag(const Field& field, const Json& j) {
  const auto kind = subgroup_kind_from_string(j.at("kind").get<std::string>());
  switch (kind) {
    case SubgroupKind::Torus:
    case SubgroupKind::LambdaTorus: {
      const Fq x{coord(j.at("x"))};
      if (!field.contains(x)) throw ParameterError("torus parameter outside the field");
      return SubgroupTag::torus(x, kind == SubgroupKind::LambdaTorus);
    }
    case SubgroupKind::L:
    case SubgroupKind::LZ: {
      const auto& d = j.at("direction");
      const Fq a{coord(d.at(0))}, b{coord(d.at(1))};
      if (!field.contains(a) || !field.contains(b)) throw ParameterError("direction outside the field");
      return SubgroupTag::line(field, kind, a, b);
    }
    default:
      return SubgroupTag::simple(kind);
  }
}

Json encode(const LemmaVerdicts& v) {
  Json powers = Json::array();
  for (const auto& [j, ok] : v.plunnecke_powers) powers.push_back({{"j", j}, {"holds", ok}});
  return {
      {"subgroup", encode(v.subgroup)},
      {"k", v.k},
      {"plunnecke_tripling", v.plunnecke_tripling},
      {"plunnecke_powers", powers},
      {"cosets", v.cosets},
      {"largest_coset_fiber", v.largest_coset_fiber},
      {"orbit_lower", v.orbit_lower},
      {"orbit_upper", v.orbit_upper},
      {"b_size", v.b_size},
      {"b_power_size", v.b_power_size},
      {"a2k_in_h_size", v.a2k_in_h_size},
      {"subgroup_growth", v.subgroup_growth},
      {"normal_subgroup", encode(v.normal_subgroup)},
      {"representatives", v.representatives},
      {"splitting", v.splitting},
      {"all", v.all()},
  };
}

Json encode(const GrowthReport& r) {
  return {
      {"size", r.size},
      {"product_size", r.product_size},
      {"quotient_size", r.quotient_size},
      {"triple_size", r.triple_size},
      {"symmetrized_sizes", pair_list(r.symmetrized_sizes, "k", "size")},
      {"tripling", encode(r.tripling)},
      {"energy", r.energy},
      {"energy_star", r.energy_star},
      {"cauchy_schwarz", r.cauchy_schwarz},
      {"cauchy_schwarz_star", r.cauchy_schwarz_star},
      {"energy_order", r.energy_order},
      {"lemmas", r.lemma_error.empty() ? encode(r.lemmas) : Json{{"error", r.lemma_error}}},
  };
}

Json encode(const CosetProfileT2& p) {
  return {
      {"group", "T2"},
      {"size", p.size},
      {"m1", {{"value", p.m1}, {"x", p.m1_x.v}, {"y", p.m1_y.v}}},
      {"m2", {{"value", p.m2}, {"chi", p.m2_chi.v}}},
      {"m3", {{"value", p.m3}, {"a", p.m3_a.v}, {"c", p.m3_c.v}}},
      {"size_hypothesis", p.size_hypothesis},
  };
}

Json encode(const CosetProfileHeis& p) {
  return {
      {"group", "H"},
      {"size", p.size},
      {"m", {{"value", p.m}, {"g1", p.m_g1.v}, {"g2", p.m_g2.v}}},
      {"big_m",
       {{"value", p.big_m},
        {"direction", Json::array({p.line_direction[0].v, p.line_direction[1].v})},
        {"offset", p.line_offset.v}}},
      {"size_hypothesis", p.size_hypothesis},
      {"sqrt_hypothesis", p.sqrt_hypothesis},
  };
}

Json encode(const BoundRecord& b) {
  return {
      {"group", to_string(b.group)},
      {"size", b.size},
      {"energy", b.energy},
      {"product_size", b.product_size},
      {"quotient_size", b.quotient_size},
      {"energy_rhs", encode(b.energy_rhs)},
      {"product_denominator", encode(b.product_denominator)},
      {"log_factor", b.log_factor},
      {"c_obs", b.c_obs},
      {"c_obs_log", b.c_obs_log},
      {"product_prediction", b.product_prediction},
      {"size_hypothesis", b.size_hypothesis},
      {"piece_hypothesis", b.piece_hypothesis},
      {"max_piece_class", b.max_piece_class},
      {"verdict", b.hypotheses() ? "checked" : "informational"},
  };
}

Json encode(const SubfieldSpec& s) { return {{"degree", s.degree}, {"size", s.size()}}; }

Json encode(const SumProductVerdict& v) {
  Json out{
      {"subfield", encode(v.subfield)},
      {"x_size", v.x_size},
      {"sum_size", v.sum_size},
      {"d_size", v.d_size},
      {"span_size", v.span_size},
      {"growth", encode(v.growth)},
      {"density", encode(v.density)},
      {"growth_alternative", v.growth_alternative},
      {"density_alternative", v.density_alternative},
      {"multiple_sizes", pair_list(v.multiple_sizes, "ell", "size")},
  };
  out["containment_depth"] = v.containment_depth ? Json(*v.containment_depth) : Json(nullptr);
  return out;
}

Json encode(const StructureReport& r) {
  Json out{
      {"params",
       {{"exponent", r.params.exponent}, {"d_ceiling", r.params.d_ceiling}, {"power_budget", r.params.power_budget}}},
      {"symmetrized", r.symmetrized},
      {"size", r.size},
      {"tripling", encode(r.tripling)},
      {"D", fq_list(r.D)},
      {"F", encode(r.F)},
      {"X", fq_list(r.X)},
      {"result", to_string(r.result)},
  };
  if (r.result == StructureCase::potent) {
    out["overlap"] = r.overlap;
    out["overlap_ratio"] = encode(r.overlap_ratio);
  }
  if (r.U) {
    Json u = Json::array();
    for (const auto& g : *r.U) u.push_back(encode(g));
    out["W"] = fq_list(r.W);
    out["U"] = std::move(u);
    out["certificates"] = {
        {"C1", r.c1_squares_in_u},
        {"C2", r.c2_power.has_value()},
        {"C2_power", r.c2_power ? Json(*r.c2_power) : Json(nullptr)},
        {"C2_depth", r.c2_depth},
        {"C3", r.c3_normalized},
        {"C4", r.c4_commutators},
    };
    out["failed_certificate"] = r.failed_certificate.empty() ? Json(nullptr) : Json(r.failed_certificate);
  }
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

Json encode(const RudnevRecord& r) {
  return {
      {"incidences", r.incidences},
      {"weighted_incidences", r.weighted_incidences},
      {"points", r.points},
      {"planes", r.planes},
      {"weighted_points", r.weighted_points},
      {"weighted_planes", r.weighted_planes},
      {"k", r.k},
      {"km", r.km},
      {"swapped", r.swapped},
      {"rhs", encode(r.rhs)},
      {"ratio", r.ratio},
      {"p_constraint", r.p_constraint},
      {"p_constraint_weighted", r.p_constraint_weighted},
  };
}

namespace {

Json encode_vectors(std::span<const ProjVector> vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    out.push_back({{"v", Json::array({v.coords[0].v, v.coords[1].v, v.coords[2].v, v.coords[3].v})},
                   {"w", v.weight}});
  }
  return out;
}

std::vector<ProjVector> decode_vectors(const Field& F, const Json& j) {
  std::vector<ProjVector> raw;
  for (const auto& item : j) {
    const auto& v = item.at("v");
    if (v.size() != 4) throw ParameterError("projective vector needs 4 coordinates");
    ProjVector pv;
    for (std::size_t t = 0; t < 4; ++t) {
      pv.coords[t] = Fq{coord(v.at(t))};
      if (!F.contains(pv.coords[t])) throw ParameterError("coordinate outside the field");
    }
    pv.weight = item.contains("w") ? item.at("w").get<std::uint64_t>() : 1;
    raw.push_back(pv);
  }
  return merge_projective(F, raw);
}

}  // namespace

Json encode(const IncidenceInstance& inst) {
  return {{"field", encode(inst.field->spec())},
          {"points", encode_vectors(inst.points)},
          {"planes", encode_vectors(inst.planes)}};
}

IncidenceInstance decode_instance(const Json& j) {
  IncidenceInstance inst;
  inst.field = Field::make(decode_field_spec(j.at("field")));
  inst.points = decode_vectors(*inst.field, j.at("points"));
  inst.planes = decode_vectors(*inst.field, j.at("planes"));
  return inst;
}

Caps decode_caps(const Json& j) {
  Caps caps;
  if (j.contains("max_set")) caps.max_set = j.at("max_set").get<std::size_t>();
  if (j.contains("max_pairs")) caps.max_pairs = j.at("max_pairs").get<std::uint64_t>();
  if (j.contains("oracle")) caps.oracle = j.at("oracle").get<std::size_t>();
  return caps;
}

Json encode(const Caps& caps) {
  return {{"max_set", caps.max_set}, {"max_pairs", caps.max_pairs}, {"oracle", caps.oracle}};
}

}  // namespace tgrowth
