#include "tgrowth/experiment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "tgrowth/kernels.hpp"
#include "tgrowth/rng.hpp"

namespace tgrowth {
namespace {

namespace fs = std::filesystem;

Json descriptor(const std::string& group, std::uint32_t q, Json extra) {
  Json d{{"group", group}, {"field", {{"q", q}}}};
  for (const auto& [k, v] : extra.items()) d[k] = v;
  return d;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / name) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(SplitMix64, IsCounterBased) {
  SplitMix64 a(7);
  const auto x0 = a.next();
  const auto x1 = a.next();
  EXPECT_EQ(SplitMix64::at(7, 0), x0);
  EXPECT_EQ(SplitMix64::at(7, 1), x1);
  EXPECT_NE(x0, x1);
  SplitMix64 b(7);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(b.below(13), 13u);
}

TEST(Generate, Examples) {
  const auto box = gen_set(descriptor("H", 101, {{"kind", "box"}, {"n", 2}}));
  EXPECT_EQ(box.elements.size(), 16u);
  const auto u2 = gen_set(descriptor("T2", 7, {{"kind", "subgroup"}, {"tag", {{"kind", "U2"}}}}));
  EXPECT_EQ(u2.elements.size(), 7u);
  const auto sub = gen_set(descriptor("T2", 16, {{"kind", "subfield_group"}, {"degree", 2}}));
  EXPECT_EQ(sub.elements.size(), 36u);
  const auto coset = gen_set(
      descriptor("T2", 7, {{"kind", "coset"}, {"tag", {{"kind", "LambdaU2"}}}, {"g", {3, 1, 1}}}));
  EXPECT_EQ(coset.elements.size(), 42u);
  const auto sample = gen_set(descriptor(
      "T2", 7,
      {{"kind", "sample"}, {"size", 30}, {"seed", 5}, {"of", {{"kind", "coset"}, {"tag", {{"kind", "LambdaU2"}}}, {"g", {3, 1, 1}}}}}));
  EXPECT_EQ(sample.elements.size(), 30u);
  EXPECT_TRUE(std::includes(coset.elements.begin(), coset.elements.end(), sample.elements.begin(),
                            sample.elements.end()));
}

TEST(Generate, RandomIsDeterministic) {
  const auto d = descriptor("T2", 9, {{"kind", "random"}, {"size", 20}, {"seed", 11}});
  const auto a = gen_set(d), b = gen_set(d);
  EXPECT_EQ(a.elements, b.elements);
  EXPECT_EQ(a.elements.size(), 20u);
  EXPECT_EQ(digest(a), digest(b));
  auto d2 = d;
  d2["seed"] = 12;
  EXPECT_NE(gen_set(d2).elements, a.elements);
  EXPECT_TRUE(std::is_sorted(a.elements.begin(), a.elements.end()));
}

TEST(Generate, UnionAndPerturbedCoset) {
  const Json parts = Json::array({Json{{"kind", "subgroup"}, {"tag", {{"kind", "Z"}}}},
                                  Json{{"kind", "coset"}, {"tag", {{"kind", "Z"}}}, {"g", {1, 0, 0}}}});
  const auto u = gen_set(descriptor("H", 5, {{"kind", "union"}, {"parts", parts}}));
  EXPECT_EQ(u.elements.size(), 10u);
  const auto p = gen_set(descriptor(
      "H", 7, {{"kind", "perturbed_coset"}, {"tag", {{"kind", "LZ"}, {"direction", {1, 2}}}}, {"g", {0, 0, 1}},
               {"swaps", 3}, {"seed", 2}}));
  EXPECT_EQ(p.elements.size(), 49u);
  const auto clean = gen_set(
      descriptor("H", 7, {{"kind", "coset"}, {"tag", {{"kind", "LZ"}, {"direction", {1, 2}}}}, {"g", {0, 0, 1}}}));
  std::vector<std::array<std::uint32_t, 3>> common;
  std::set_intersection(p.elements.begin(), p.elements.end(), clean.elements.begin(), clean.elements.end(),
                        std::back_inserter(common));
  EXPECT_EQ(common.size(), 46u);
}

TEST(Generate, Errors) {
  EXPECT_THROW(gen_set(descriptor("H", 7, {{"kind", "box"}, {"n", 2}})), ParameterError);  // 7 <= 12
  EXPECT_THROW(gen_set(descriptor("H", 25, {{"kind", "box"}, {"n", 1}})), ParameterError);
  EXPECT_THROW(gen_set(descriptor("T2", 101, {{"kind", "box"}, {"n", 1}})), ParameterError);
  EXPECT_THROW(gen_set(descriptor("T2", 5, {{"kind", "spiral"}})), ParameterError);
  EXPECT_THROW(gen_set(descriptor("T2", 5, {{"kind", "random"}, {"size", 81}, {"seed", 1}})), ParameterError);
  EXPECT_THROW(gen_set(descriptor("T2", 5, {{"kind", "random"}, {"size", 3}})), ParameterError);
  EXPECT_THROW(gen_set(descriptor("T2", 6, {{"kind", "random"}, {"size", 3}, {"seed", 1}})), ParameterError);
  EXPECT_THROW(gen_set(Json{{"kind", "random"}}), ParameterError);
}

TEST(SetFiles, RoundTripAndValidation) {
  const auto f = gen_set(descriptor("H", 5, {{"kind", "random"}, {"size", 12}, {"seed", 3}}));
  const Json j = encode(f);
  const auto g = decode_set_file(j);
  EXPECT_EQ(g.elements, f.elements);
  EXPECT_EQ(digest(g), digest(f));

  Json bad = j;
  bad["elements"][0] = Json::array({0, 0, 7});
  EXPECT_THROW(decode_set_file(bad), ParameterError);

  // The descriptor is not part of the digest; the elements are.
  Json no_desc = j;
  no_desc["descriptor"] = nullptr;
  EXPECT_EQ(digest(decode_set_file(no_desc)), digest(f));
  Json moved = j;
  moved["elements"][0] = moved["elements"][1];
  moved["elements"][1] = j["elements"][0];
  EXPECT_EQ(digest(decode_set_file(moved)), digest(f));  // canonical order
}

TEST(Report, ByteIdenticalAcrossThreadCounts) {
  const auto f = gen_set(descriptor("T2", 7, {{"kind", "random"}, {"size", 20}, {"seed", 4}}));
  ReportOptions opt;
  opt.structure = true;
  kernels::set_threads(1);
  const auto one = run_report(f, opt).json.dump(2);
  kernels::set_threads(4);
  const auto four = run_report(f, opt).json.dump(2);
  kernels::set_threads(1);
  EXPECT_EQ(one, four);
}

TEST(Report, IdentitiesHoldAndExitCodes) {
  const auto f = gen_set(descriptor("H", 101, {{"kind", "box"}, {"n", 2}}));
  const auto rep = run_report(f);
  EXPECT_FALSE(rep.mismatch);
  EXPECT_FALSE(rep.cap_overflow);
  EXPECT_TRUE(rep.json.at("incidence").at("all_match").get<bool>());
  EXPECT_TRUE(rep.json.at("incidence").at("energy_sum_matches").get<bool>());
  EXPECT_EQ(rep.json.at("incidence").at("energy_sum"), rep.json.at("growth").at("energy"));
  EXPECT_EQ(exit_code(rep), kExitOk);

  ReportOptions tight;
  tight.caps.max_pairs = 100;
  EXPECT_EQ(exit_code(run_report(f, tight)), kExitCap);

  // A subgroup fails the size hypothesis of the T2 bound.
  const auto sub = gen_set(descriptor("T2", 5, {{"kind", "subgroup"}, {"tag", {{"kind", "LambdaU2"}}}}));
  EXPECT_EQ(exit_code(run_report(sub)), kExitHypothesis);
}

TEST(Report, CsvRowMatchesHeader) {
  const auto f = gen_set(descriptor("T2", 5, {{"kind", "random"}, {"size", 10}, {"seed", 1}}));
  const auto header = csv_header();
  const auto row = csv_row(run_report(f));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
}

TEST(RudnevInstances, AreSeeded) {
  const auto a = random_rudnev_instances(5, 4, 99);
  const auto b = random_rudnev_instances(5, 4, 99);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].points, b[i].points);
    EXPECT_EQ(a[i].planes, b[i].planes);
    EXPECT_GE(a[i].points.size(), 2u);
    EXPECT_LE(a[i].points.size(), 25u);
    EXPECT_GE(a[i].planes.size(), 25u);
  }
}

TEST(Verify, PinsThenDetectsCorruption) {
  TempDir dir("tgrowth_verify_test");
  write_json(dir.path() / "t2.json",
             encode(gen_set(descriptor("T2", 101, {{"kind", "random"}, {"size", 30}, {"seed", 8}}))));
  write_json(dir.path() / "box.json", encode(gen_set(descriptor("H", 101, {{"kind", "box"}, {"n", 2}}))));
  write_json(dir.path() / "manifest.json", Json{{"rudnev", {{"q", 5}, {"count", 10}, {"seed", 3}}}});

  EXPECT_THROW(verify_suite(dir.path() / "missing"), ParameterError);
  const auto pinned = verify_suite(dir.path(), {.pin = true});
  EXPECT_TRUE(pinned.ok());
  const auto again = verify_suite(dir.path());
  EXPECT_TRUE(again.ok());
  EXPECT_EQ(again.rows.size(), 5u);

  Json file = read_json(dir.path() / "t2.json");
  file["elements"][0] = Json::array({1, 0, 1});
  file["descriptor"] = nullptr;
  write_json(dir.path() / "t2.json", file);
  const auto broken = verify_suite(dir.path());
  EXPECT_FALSE(broken.ok());
  const auto row = std::find_if(broken.rows.begin(), broken.rows.end(),
                                [](const VerifyRow& r) { return r.name == "set t2.json"; });
  ASSERT_NE(row, broken.rows.end());
  EXPECT_FALSE(row->pass);
  EXPECT_NE(row->detail.find("digest"), std::string::npos);
}

}  // namespace
}  // namespace tgrowth
