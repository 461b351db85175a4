#include "tgrowth/experiment.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "tgrowth/growth.hpp"
#include "tgrowth/rng.hpp"

namespace tgrowth {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Set files

namespace {

template <GroupLike G>
std::array<std::uint32_t, 3> wire(const typename G::element_type& g) {
  const auto k = G::key(g);
  return {std::uint32_t(k >> 32), std::uint32_t((k >> 16) & 0xffff), std::uint32_t(k & 0xffff)};
}

template <GroupLike G>
typename G::element_type element_from(const Field& F, const std::array<std::uint32_t, 3>& w) {
  for (auto v : w) {
    if (v >= F.q()) throw ParameterError("element coordinate outside the field");
  }
  return G::from_key(pack3(Fq{w[0]}, Fq{w[1]}, Fq{w[2]}));
}

std::array<std::uint32_t, 3> triple(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParameterError("element must be a list of 3 integers");
  std::array<std::uint32_t, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto v = j.at(i).get<std::int64_t>();
    if (v < 0 || v >= std::int64_t(kMaxFieldOrder)) throw ParameterError("element coordinate out of range");
    out[i] = static_cast<std::uint32_t>(v);
  }
  return out;
}

template <GroupLike G>
GroupSet<G> build_set(FieldPtr field, const std::vector<std::array<std::uint32_t, 3>>& elements) {
  G grp(field);
  std::vector<typename G::element_type> xs;
  xs.reserve(elements.size());
  for (const auto& w : elements) xs.push_back(element_from<G>(*field, w));
  return GroupSet<G>(grp, std::move(xs));
}

}  // namespace

Json encode(const SetFile& file) {
  Json elements = Json::array();
  for (const auto& w : file.elements) elements.push_back(Json::array({w[0], w[1], w[2]}));
  return {{"group", to_string(file.group)},
          {"field", encode(file.field)},
          {"descriptor", file.descriptor},
          {"elements", std::move(elements)}};
}

SetFile decode_set_file(const Json& j) {
  SetFile file;
  file.group = group_kind_from_string(j.at("group").get<std::string>());
  file.field = decode_field_spec(j.at("field"));
  file.descriptor = j.contains("descriptor") ? j.at("descriptor") : Json(nullptr);
  for (const auto& e : j.at("elements")) file.elements.push_back(triple(e));
  // Validation and canonical order come from the set itself.
  return make_set_file(load_set(file), file.descriptor);
}

SetFile make_set_file(const AnySet& set, Json descriptor) {
  return std::visit(
      [&](const auto& A) {
        using G = typename std::decay_t<decltype(A)>::group_type;
        SetFile file;
        file.group = G::kind;
        file.field = A.field().spec();
        file.descriptor = std::move(descriptor);
        file.elements.reserve(A.size());
        for (const auto& g : A) file.elements.push_back(wire<G>(g));
        return file;
      },
      set);
}

AnySet load_set(const SetFile& file) {
  auto field = Field::make(file.field);
  if (file.group == GroupKind::T2) return build_set<T2Group>(field, file.elements);
  return build_set<HeisGroup>(field, file.elements);
}

std::string digest(const SetFile& file) {
  Json canonical = encode(file);
  canonical.erase("descriptor");
  const std::string text = canonical.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

Json inherit(const Json& parent, Json child) {
  for (const char* key : {"group", "field", "seed"}) {
    if (!child.contains(key) && parent.contains(key)) child[key] = parent[key];
  }
  return child;
}

std::uint64_t required_seed(const Json& d) {
  if (!d.contains("seed")) throw ParameterError(d.at("kind").get<std::string>() + " needs a seed");
  return d.at("seed").get<std::uint64_t>();
}

AnySet generate(const Json& d, const Caps& caps);

template <GroupLike G>
std::vector<typename G::element_type> coset_elements(const G& grp, const Json& d) {
  const auto tag = decode_subgroup_tag(grp.field(), d.at("tag"));
  const auto g = element_from<G>(grp.field(), triple(d.at("g")));
  if (!grp.valid(g)) throw ParameterError("coset representative is not in the group");
  std::vector<typename G::element_type> out;
  for (const auto& h : subgroup_elements(grp, tag)) out.push_back(grp.mul(g, h));
  std::sort(out.begin(), out.end());
  return out;
}

// Uniform draw over the wire-form range, retried until it is a group element
// outside `taken`.
template <GroupLike G>
typename G::element_type draw_new(const G& grp, SplitMix64& rng,
                                  const std::unordered_set<std::uint64_t>& taken) {
  const std::uint32_t q = grp.field().q();
  for (;;) {
    const Fq x{std::uint32_t(rng.below(q))};
    const Fq y{std::uint32_t(rng.below(q))};
    const Fq z{std::uint32_t(rng.below(q))};
    const auto g = G::from_key(pack3(x, y, z));
    if (grp.valid(g) && !taken.contains(G::key(g))) return g;
  }
}

// `count` distinct indices below n, uniform without replacement.
std::vector<std::size_t> draw_indices(SplitMix64& rng, std::size_t n, std::size_t count) {
  std::unordered_set<std::size_t> seen;
  std::vector<std::size_t> out;
  while (out.size() < count) {
    const auto i = static_cast<std::size_t>(rng.below(n));
    if (seen.insert(i).second) out.push_back(i);
  }
  return out;
}

template <GroupLike G>
GroupSet<G> generate_in(const G& grp, const Json& d, const Caps& caps) {
  using E = typename G::element_type;
  const Field& F = grp.field();
  const auto kind = d.at("kind").get<std::string>();

  if (kind == "random") {
    const auto size = d.at("size").get<std::uint64_t>();
    SplitMix64 rng(required_seed(d));
    if (size > grp.order()) throw ParameterError("random set larger than the group");
    if (size > caps.max_set) throw ResourceLimit("random set exceeds the set cap", 0);
    std::unordered_set<std::uint64_t> taken;
    std::vector<E> xs;
    while (xs.size() < size) {
      xs.push_back(draw_new(grp, rng, taken));
      taken.insert(G::key(xs.back()));
    }
    return GroupSet<G>(grp, std::move(xs));
  }
  if (kind == "subgroup") {
    return GroupSet<G>(grp, subgroup_elements(grp, decode_subgroup_tag(F, d.at("tag"))));
  }
  if (kind == "coset") return GroupSet<G>(grp, coset_elements(grp, d));
  if (kind == "box") {
    if constexpr (std::is_same_v<G, HeisGroup>) {
      const auto n = d.at("n").get<std::uint64_t>();
      if (n < 1) throw ParameterError("box needs n >= 1");
      if (F.r() != 1) throw ParameterError("box is defined over a prime field");
      if (F.p() <= 3 * n * n) throw ParameterError("box(n) needs p > 3n^2");
      std::vector<E> xs;
      for (std::uint64_t a = 1; a <= n; ++a) {
        for (std::uint64_t b = 1; b <= n; ++b) {
          for (std::uint64_t c = 1; c <= n * n; ++c) {
            xs.push_back({F.from_int(std::int64_t(a)), F.from_int(std::int64_t(b)), F.from_int(std::int64_t(c))});
          }
        }
      }
      return GroupSet<G>(grp, std::move(xs));
    } else {
      throw ParameterError("box is defined in the Heisenberg group");
    }
  }
  if (kind == "union") {
    std::vector<E> xs;
    for (const auto& part : d.at("parts")) {
      const auto sub = generate(inherit(d, part), caps);
      const auto* set = std::get_if<GroupSet<G>>(&sub);
      if (!set || !(set->group() == grp)) throw ParameterError("union parts must share group and field");
      xs.insert(xs.end(), set->begin(), set->end());
    }
    return GroupSet<G>(grp, std::move(xs));
  }
  if (kind == "perturbed_coset") {
    auto coset = coset_elements(grp, d);
    const auto swaps = d.at("swaps").get<std::size_t>();
    SplitMix64 rng(required_seed(d));
    if (swaps > coset.size() || swaps > grp.order() - coset.size()) {
      throw ParameterError("too many swaps for this coset");
    }
    std::unordered_set<std::uint64_t> taken;
    for (const auto& g : coset) taken.insert(G::key(g));
    // Removals first, then replacements drawn from outside the coset.
    const auto drop = draw_indices(rng, coset.size(), swaps);
    std::vector<char> dropped(coset.size(), 0);
    for (auto i : drop) dropped[i] = 1;
    std::vector<E> xs;
    for (std::size_t i = 0; i < coset.size(); ++i) {
      if (!dropped[i]) xs.push_back(coset[i]);
    }
    for (std::size_t s = 0; s < swaps; ++s) {
      xs.push_back(draw_new(grp, rng, taken));
      taken.insert(G::key(xs.back()));
    }
    return GroupSet<G>(grp, std::move(xs));
  }
  if (kind == "sample") {
    const auto parent = generate(inherit(d, d.at("of")), caps);
    const auto* set = std::get_if<GroupSet<G>>(&parent);
    if (!set || !(set->group() == grp)) throw ParameterError("sample must come from the same group");
    const auto size = d.at("size").get<std::size_t>();
    if (size > set->size()) throw ParameterError("sample larger than its parent set");
    SplitMix64 rng(required_seed(d));
    std::vector<E> xs;
    for (auto i : draw_indices(rng, set->size(), size)) xs.push_back((*set)[i]);
    return GroupSet<G>(grp, std::move(xs));
  }
  if (kind == "subfield_group") {
    if constexpr (std::is_same_v<G, T2Group>) {
      const auto sub = subfield_of_degree(F, d.at("degree").get<std::uint32_t>());
      std::vector<E> xs;
      for (Fq a : sub.elements) {
        for (Fq b : sub.elements) {
          for (Fq c : sub.elements) {
            if (a.v != 0 && c.v != 0) xs.push_back({a, b, c});
          }
        }
      }
      return GroupSet<G>(grp, std::move(xs));
    } else {
      throw ParameterError("subfield_group is defined in T2");
    }
  }
  throw ParameterError("unknown generator kind: " + kind);
}

AnySet generate(const Json& d, const Caps& caps) {
  if (!d.is_object() || !d.contains("kind")) throw ParameterError("descriptor needs a kind");
  const auto kind = d.at("kind").get<std::string>();
  const std::string group = d.contains("group") ? d.at("group").get<std::string>() : (kind == "box" ? "H" : "");
  if (group.empty()) throw ParameterError("descriptor needs a group");
  if (!d.contains("field")) throw ParameterError("descriptor needs a field");
  auto field = Field::make(decode_field_spec(d.at("field")));
  if (group_kind_from_string(group) == GroupKind::T2) return generate_in(T2Group(field), d, caps);
  return generate_in(HeisGroup(field), d, caps);
}

}  // namespace

SetFile gen_set(const Json& descriptor, const Caps& caps) {
  return make_set_file(generate(descriptor, caps), descriptor);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

class Timer {
 public:
  explicit Timer(Json* sink) : sink_(sink) {}

  template <class Fn>
  void run(const char* section, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    if (sink_) {
      const auto dt = std::chrono::steady_clock::now() - t0;
      (*sink_)[section] = std::chrono::duration_cast<std::chrono::microseconds>(dt).count();
    }
  }

 private:
  Json* sink_;
};

Json key_json(const std::array<Fq, 2>& key) { return Json::array({key[0].v, key[1].v}); }

template <GroupLike G>
Json incidence_bridge(const GroupSet<G>& A, std::size_t max_classes, std::uint64_t energy, const Caps& caps,
                      RunReport& rep) {
  const auto classes = pair_classes(A, caps);
  const std::size_t run = std::min(max_classes, classes.size());
  Json rows = Json::array();
  std::uint64_t q_sum = 0;
  bool all_match = true;
  for (std::size_t c = 0; c < run; ++c) {
    const auto& C = classes[c];
    const auto Q = quadruple_count(A, C, caps);
    const auto inst = build_instance(A, C);
    const auto I = incidence_count(inst, caps);
    const bool match = I == Q;
    all_match = all_match && match;
    q_sum += Q;
    rows.push_back({{"key", key_json(C.key)},
                    {"pairs", C.members.size()},
                    {"points", inst.points.size()},
                    {"planes", inst.planes.size()},
                    {"incidences", I},
                    {"quadruples", Q},
                    {"match", match},
                    {"rudnev", encode(rudnev_ratio(inst, caps))}});
  }
  const bool complete = run == classes.size();
  Json out{{"classes_total", classes.size()}, {"classes_run", run}, {"all_match", all_match}};
  out["energy_sum"] = complete ? Json(q_sum) : Json(nullptr);
  out["energy_sum_matches"] = complete ? Json(q_sum == energy) : Json(nullptr);
  out["classes"] = std::move(rows);
  if (!all_match || (complete && q_sum != energy)) rep.mismatch = true;
  return out;
}

template <GroupLike G>
void fill_report(const GroupSet<G>& A, const ReportOptions& opt, RunReport& rep) {
  Json& out = rep.json;
  Json timings = Json::object();
  Timer timer(opt.timings ? &timings : nullptr);
  Json errors = Json::array();
  auto section = [&](const char* name, auto&& fn) {
    timer.run(name, [&] {
      try {
        fn();
      } catch (const ResourceLimit& e) {
        rep.cap_overflow = true;
        out[name] = {{"error", e.what()}};
        errors.push_back({{"section", name}, {"message", e.what()}});
      }
    });
  };

  // k = 2 needs A_(4); take it only when that set provably fits under the cap.
  const std::uint64_t sym = 2 * std::uint64_t(A.size()) + 1;
  const bool fits = A.group().order() <= opt.caps.max_set || sym * sym * sym * sym <= opt.caps.max_set;
  const int lemma_k = opt.lemma_k.value_or(fits ? 2 : 1);
  const std::size_t max_classes = opt.max_classes.value_or(A.size() <= 25 ? SIZE_MAX : 16);
  out["options"] = {{"caps", encode(opt.caps)},
                    {"lemma_k", lemma_k},
                    {"max_classes", max_classes == SIZE_MAX ? Json("all") : Json(max_classes)}};

  GrowthReport growth;
  bool have_growth = false;
  section("growth", [&] {
    const std::vector<int> ks{1, 2, 3};
    growth = growth_report(A, ks, default_lemma_subgroup<G>(), lemma_k, opt.caps);
    out["growth"] = encode(growth);
    have_growth = true;
    if (!growth.lemma_error.empty()) {
      rep.cap_overflow = true;
      errors.push_back({{"section", "lemmas"}, {"message", growth.lemma_error}});
    }
    if (!growth.cauchy_schwarz || !growth.cauchy_schwarz_star || !growth.energy_order) rep.mismatch = true;
  });

  section("profile", [&] {
    if constexpr (std::is_same_v<G, T2Group>) {
      const auto profile = coset_profile_t2(A);
      out["profile"] = encode(profile);
      if (have_growth) {
        rep.bounds = theorem_bound_report(A, profile, growth.energy, growth.product_size, growth.quotient_size,
                                          opt.caps);
      }
      Json pieces = Json::array();
      for (const auto& piece : dyadic_decomposition(A)) {
        pieces.push_back({{"j", piece.j}, {"size", piece.members.size()}});
      }
      out["dyadic"] = std::move(pieces);
    } else {
      const auto profile = coset_profile_heis(A);
      out["profile"] = encode(profile);
      if (have_growth) {
        rep.bounds = theorem_bound_report(A, profile, growth.energy, growth.product_size, growth.quotient_size,
                                          opt.caps);
      }
    }
    if (rep.bounds) {
      out["bounds"] = encode(*rep.bounds);
      rep.hypothesis_issue = !rep.bounds->hypotheses();
    }
  });

  if (have_growth) {
    section("incidence", [&] { out["incidence"] = incidence_bridge(A, max_classes, growth.energy, opt.caps, rep); });
  }

  if (opt.structure) {
    section("structure", [&] {
      if constexpr (std::is_same_v<G, T2Group>) {
        const auto s = classify(A, opt.structure_params, opt.caps);
        out["structure"] = encode(s);
        if (!s.error.empty()) {
          rep.cap_overflow = true;
          errors.push_back({{"section", "structure"}, {"message", s.error}});
        }
      } else {
        out["structure"] = {{"skipped", "structure detection is defined for T2"}};
      }
    });
  }

  out["errors"] = std::move(errors);
  if (opt.timings) out["timings_us"] = std::move(timings);
}

}  // namespace

RunReport run_report(const SetFile& file, const ReportOptions& options) {
  const AnySet set = load_set(file);
  RunReport rep;
  rep.json["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  std::visit(
      [&](const auto& A) {
        rep.json["input"] = {{"digest", digest(file)},
                             {"group", to_string(file.group)},
                             {"field", encode(file.field)},
                             {"size", A.size()}};
        if (A.empty()) throw ParameterError("report needs a nonempty set");
        fill_report(A, options, rep);
      },
      set);
  return rep;
}

std::string csv_header() {
  return "digest,group,p,r,size,product_size,quotient_size,triple_size,tripling,energy,energy_star,"
         "c_obs,c_obs_log,hypotheses,errors";
}

std::string csv_row(const RunReport& report) {
  const Json& j = report.json;
  auto get = [&](const Json& obj, const char* key) -> std::string {
    if (!obj.is_object() || !obj.contains(key)) return "";
    const Json& v = obj.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  const Json& in = j.at("input");
  const Json g = j.contains("growth") ? j.at("growth") : Json::object();
  const Json b = j.contains("bounds") ? j.at("bounds") : Json::object();
  std::string tripling;
  if (g.contains("tripling")) {
    tripling = g.at("tripling").at("num").dump() + "/" + g.at("tripling").at("den").dump();
  }
  std::ostringstream os;
  os << get(in, "digest") << ',' << get(in, "group") << ',' << in.at("field").at("p").dump() << ','
     << in.at("field").at("r").dump() << ',' << get(in, "size") << ',' << get(g, "product_size") << ','
     << get(g, "quotient_size") << ',' << get(g, "triple_size") << ',' << tripling << ',' << get(g, "energy")
     << ',' << get(g, "energy_star") << ',' << get(b, "c_obs") << ',' << get(b, "c_obs_log") << ','
     << (report.bounds ? (report.bounds->hypotheses() ? "pass" : "fail") : "") << ','
     << j.at("errors").size();
  return os.str();
}

int exit_code(const RunReport& report) {
  if (report.mismatch) return kExitMismatch;
  if (report.cap_overflow) return kExitCap;
  if (report.hypothesis_issue) return kExitHypothesis;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Rudnev instances

namespace {

std::vector<ProjVector> draw_projective(const Field& F, SplitMix64& rng, std::size_t count) {
  std::set<std::uint64_t> seen;
  std::vector<ProjVector> out;
  while (out.size() < count) {
    Vec4 v;
    for (auto& x : v) x = Fq{std::uint32_t(rng.below(F.q()))};
    if (std::all_of(v.begin(), v.end(), [](Fq x) { return x.v == 0; })) continue;
    v = normalize_projective(F, v);
    if (seen.insert(pack4(v)).second) out.push_back({v, 1});
  }
  std::sort(out.begin(), out.end(), [](const ProjVector& x, const ProjVector& y) {
    return pack4(x.coords) < pack4(y.coords);
  });
  return out;
}

}  // namespace

std::vector<IncidenceInstance> random_rudnev_instances(std::uint32_t q, std::size_t count, std::uint64_t seed) {
  auto field = Field::builtin(q);
  const std::uint64_t q2 = std::uint64_t(q) * q;
  std::vector<IncidenceInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    SplitMix64 rng(SplitMix64::at(seed, i));
    const auto n_points = 2 + rng.below(q2 - 1);
    const auto n_planes = q2 + rng.below(72);
    IncidenceInstance inst;
    inst.field = field;
    inst.points = draw_projective(*field, rng, n_points);
    inst.planes = draw_projective(*field, rng, n_planes);
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus verification

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Json fingerprint(const Json& report) {
  Json out = Json::object();
  if (report.contains("growth") && !report.at("growth").contains("error")) {
    const Json& g = report.at("growth");
    for (const char* key : {"size", "product_size", "quotient_size", "triple_size", "energy", "energy_star"}) {
      out[key] = g.at(key);
    }
    out["symmetrized_sizes"] = g.at("symmetrized_sizes");
  }
  if (report.contains("profile") && !report.at("profile").contains("error")) {
    const Json& p = report.at("profile");
    for (const char* key : {"m1", "m2", "m3", "m", "big_m"}) {
      if (p.contains(key)) out[key] = p.at(key).at("value");
    }
  }
  if (report.contains("incidence") && !report.at("incidence").contains("error")) {
    out["classes_total"] = report.at("incidence").at("classes_total");
    out["energy_sum"] = report.at("incidence").at("energy_sum");
  }
  return out;
}

bool VerifyResult::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

namespace {

struct RudnevConfig {
  std::uint32_t q = 7;
  std::size_t count = 100;
  std::uint64_t seed = 20261016;
};

RudnevConfig rudnev_config(const Json& manifest) {
  RudnevConfig c;
  if (manifest.contains("rudnev")) {
    const Json& r = manifest.at("rudnev");
    c.q = r.value("q", c.q);
    c.count = r.value("count", c.count);
    c.seed = r.value("seed", c.seed);
  }
  return c;
}

std::optional<Ratio> pinned(const Json& manifest, const char* key) {
  if (!manifest.contains("pinned") || !manifest.at("pinned").contains(key)) return std::nullopt;
  const Json& r = manifest.at("pinned").at(key);
  if (r.is_null()) return std::nullopt;
  return Ratio::make(r.at("num").get<std::uint64_t>(), r.at("den").get<std::uint64_t>());
}

Json ratio_or_null(const std::optional<Ratio>& r) { return r ? encode(*r) : Json(nullptr); }

std::vector<std::string> corpus_files(const fs::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && entry.path().extension() == ".json" && name != "manifest.json") {
      names.push_back(name);
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::string diff_keys(const Json& expected, const Json& actual) {
  std::string out;
  for (const auto& [k, v] : expected.items()) {
    if (!actual.contains(k) || actual.at(k) != v) out += (out.empty() ? "" : ",") + k;
  }
  for (const auto& [k, v] : actual.items()) {
    if (!expected.contains(k)) out += (out.empty() ? "" : ",") + k;
  }
  return out;
}

}  // namespace

VerifyResult verify_suite(const fs::path& dir, const VerifyOptions& options) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::is_directory(dir)) throw ParameterError("corpus directory not found: " + dir.string());
  if (!options.pin && !fs::exists(manifest_path)) throw ParameterError("missing " + manifest_path.string());
  const Json manifest = fs::exists(manifest_path) ? read_json(manifest_path) : Json::object();

  VerifyResult result;
  ReportOptions ropt;
  ropt.caps = options.caps;

  std::vector<std::pair<std::string, Json>> entries;  // file -> manifest entry
  if (options.pin) {
    for (const auto& name : corpus_files(dir)) entries.emplace_back(name, Json::object());
  } else {
    for (const auto& e : manifest.at("sets")) entries.emplace_back(e.at("file").get<std::string>(), e);
  }

  std::optional<Ratio> c_t2 = options.pin ? std::nullopt : pinned(manifest, "t2_energy_log");
  std::optional<Ratio> c_h = options.pin ? std::nullopt : pinned(manifest, "h_energy");
  std::vector<std::pair<std::string, BoundRecord>> checked_bounds;
  Json sets = Json::array();

  for (const auto& [name, entry] : entries) {
    VerifyRow row{"set " + name, true, ""};
    auto fail = [&](const std::string& why) {
      row.pass = false;
      row.detail += (row.detail.empty() ? "" : "; ") + why;
    };
    try {
      const SetFile file = decode_set_file(read_json(dir / name));
      const std::string dg = digest(file);
      if (!options.pin && entry.at("digest").get<std::string>() != dg) fail("digest mismatch");
      if (!file.descriptor.is_null() && gen_set(file.descriptor, options.caps).elements != file.elements) {
        fail("regeneration differs");
      }
      const RunReport rep = run_report(file, ropt);
      const Json fp = fingerprint(rep.json);
      if (rep.cap_overflow) {
        result.cap_overflow = true;
        fail("cap overflow");
      }
      if (rep.mismatch) fail("identity check failed");
      if (!options.pin && entry.at("expected") != fp) fail("expected values differ: " + diff_keys(entry.at("expected"), fp));
      if (rep.bounds && rep.bounds->hypotheses()) checked_bounds.emplace_back(name, *rep.bounds);
      if (row.pass) row.detail = "|A|=" + std::to_string(file.elements.size());
      sets.push_back({{"file", name}, {"digest", dg}, {"expected", fp}});
    } catch (const ResourceLimit& e) {
      result.cap_overflow = true;
      fail(e.what());
    } catch (const Error& e) {
      fail(e.what());
    }
    result.rows.push_back(std::move(row));
  }

  // Observed energy constants on sets passing the hypothesis flags.
  if (options.pin) {
    for (const auto& [name, rec] : checked_bounds) {
      auto& slot = rec.group == GroupKind::T2 ? c_t2 : c_h;
      const Ratio c = pinned_energy_constant(rec, rec.group == GroupKind::T2);
      if (!slot || *slot < c) slot = c;
    }
  }
  for (const auto& [group, c] : {std::pair{GroupKind::T2, c_t2}, std::pair{GroupKind::H, c_h}}) {
    VerifyRow row{"bounds " + to_string(group), true, ""};
    std::size_t n = 0;
    if (!c) {
      row.pass = false;
      row.detail = "no pinned constant";
    } else {
      for (const auto& [name, rec] : checked_bounds) {
        if (rec.group != group) continue;
        ++n;
        const bool log_adj = group == GroupKind::T2;
        if (!energy_bound_holds(rec, *c, log_adj) || !product_prediction_holds(rec, *c, log_adj)) {
          row.pass = false;
          row.detail += name + " exceeds C; ";
        }
      }
      if (n == 0) {
        row.pass = false;
        row.detail = "no set passes the hypothesis flags";
      } else if (row.pass) {
        row.detail = std::to_string(n) + " sets within C=" + c->decimal();
      }
    }
    result.rows.push_back(std::move(row));
  }

  // Rudnev comparator.
  const auto rc = rudnev_config(manifest);
  std::optional<Ratio> c_r = options.pin ? std::nullopt : pinned(manifest, "rudnev");
  {
    VerifyRow row{"rudnev", true, ""};
    std::vector<RudnevRecord> recs;
    for (const auto& inst : random_rudnev_instances(rc.q, rc.count, rc.seed)) {
      recs.push_back(rudnev_ratio(inst, options.caps));
    }
    if (options.pin) {
      for (const auto& r : recs) {
        const Ratio c = pinned_rudnev_constant(r);
        if (!c_r || *c_r < c) c_r = c;
      }
    }
    if (!c_r) {
      row.pass = false;
      row.detail = "no pinned constant";
    } else {
      for (std::size_t i = 0; i < recs.size(); ++i) {
        if (!rudnev_bound_holds(recs[i], *c_r)) {
          row.pass = false;
          row.detail += "instance " + std::to_string(i) + " exceeds C; ";
        }
      }
      if (row.pass) row.detail = std::to_string(recs.size()) + " instances within C=" + c_r->decimal();
    }
    result.rows.push_back(std::move(row));
  }

  if (options.pin) {
    Json out{{"tool_version", kToolVersion},
             {"sets", std::move(sets)},
             {"rudnev", {{"q", rc.q}, {"count", rc.count}, {"seed", rc.seed}}},
             {"pinned",
              {{"t2_energy_log", ratio_or_null(c_t2)}, {"h_energy", ratio_or_null(c_h)}, {"rudnev", ratio_or_null(c_r)}}}};
    write_json(manifest_path, out);
  }
  return result;
}

}  // namespace tgrowth
