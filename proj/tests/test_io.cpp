#include <gtest/gtest.h>

#include <random>

#include "hypsurf/io.hpp"

using namespace hs;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(parse_q("3/6"), frac(1, 2));
  EXPECT_EQ(parse_q("-4"), Q(-4));
  EXPECT_EQ(to_string(frac(6, 4)), "3/2");
  EXPECT_EQ(to_string(Q(5)), "5");
  for (const char* bad : {"", "1/0", "x", "1/2/3", "1.5"}) EXPECT_THROW(parse_q(bad), std::invalid_argument) << bad;
}

TEST(Json, HalfTreeAndSurfaceRoundTrip) {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 6; ++n)
    for (auto& t : enumerate(n)) {
      EXPECT_EQ(halftree_from_json(parse_json(dump(to_json(t)))), t);
      auto s = random_surface(t, rng);
      auto back = surface_from_json(parse_json(dump(to_json(s))));
      EXPECT_EQ(back.skeleton, s.skeleton);
      EXPECT_EQ(back.length, s.length);
      EXPECT_EQ(back.height, s.height);
      EXPECT_EQ(back.twist, s.twist);
      EXPECT_TRUE(isomorphic(back, s));
      EXPECT_EQ(dump(to_json(back)), dump(to_json(s)));
    }
}

TEST(Json, BlueprintRoundTrip) {
  for (const auto& b : cover_fixtures()) {
    auto text = dump(to_json(b));
    auto back = blueprint_from_json(parse_json(text));
    EXPECT_EQ(dump(to_json(back)), text) << b.name;
    EXPECT_EQ(area(pullback(back).surface), area(pullback(b).surface)) << b.name;
  }
}

TEST(Json, MissingMetricAndBadInput) {
  auto j = parse_json(R"({"vertices":[{"id":0,"ports":[0,1]},{"id":1,"ports":[2]}],"pairs":[[0,2]]})");
  EXPECT_FALSE(has_metric(j));
  j["lengths"] = {{"0", "1/2"}, {"1", "1"}};
  j["heights"] = {{"0", "1"}, {"1", "2"}};
  j["twists"] = {{"0", "0"}, {"1", "0"}};
  EXPECT_TRUE(has_metric(j));
  auto s = surface_from_json(j);
  EXPECT_EQ(s.length.at(2), frac(1, 2));  // filled from the mate
  EXPECT_THROW(parse_json("{"), Error);
  EXPECT_THROW(halftree_from_json(parse_json(R"({"vertices":[{"id":0}]})")), Error);
  j["heights"]["1"] = "-1";
  EXPECT_THROW(surface_from_json(j), Error);
}

TEST(Json, DumpIsStable) {
  auto t = enumerate(5).front();
  auto a = dump(profile_json(build_unit(t)));
  auto b = dump(profile_json(build_unit(t)));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.back(), '\n');
}
