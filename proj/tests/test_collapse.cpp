#include <gtest/gtest.h>

#include <random>

#include "hypsurf/collapse.hpp"
#include "hypsurf/flow.hpp"

using namespace hs;

namespace {

HalfTree single(int k) {
  HalfTree t;
  Vertex v{0, {}};
  for (int i = 0; i < k; ++i) v.ports.push_back(i);
  t.vertices.push_back(v);
  return t;
}

HalfTree path3() { return HalfTree{{{0, {0}}, {1, {1, 2}}, {2, {3}}}, {{0, 1}, {2, 3}}}; }

// Twist of cylinder v chosen so the bottom junction `k` sits under the top junction `j`.
Surface align(const Surface& s, int v, int k, int j) {
  for (const auto& c : s.raw.cylinders)
    if (c.id == v) {
      Q t = mod_pos(c.top[j].start - c.bottom[k].start, c.circumference);
      return shift_twists(s, {{v, t - c.twist}});
    }
  throw Error("no cylinder");
}

bool independent(const HalfTree& t, const std::vector<int>& set) {
  TreeIndex ix(t);
  std::set<int> s(set.begin(), set.end());
  for (auto& [p, m] : ix.mate) {
    int a = t.vertices[ix.vertex_of(p)].id, b = t.vertices[ix.vertex_of(m)].id;
    if (s.count(a) && s.count(b)) return false;  // covers half-edges (a == b)
  }
  return s.size() < t.vertices.size();
}

}  // namespace

TEST(Certify, BuildOutputsAndCycleControl) {
  for (int n = 1; n <= 6; ++n)
    for (auto& t : enumerate(n)) EXPECT_TRUE(certify_hyperelliptic(build_unit(t).raw).ok);
  // two cylinders sharing two saddle pairs: the diagram has a cycle
  RawSurface r;
  r.cylinders.push_back({0, 2, 1, 0, {{0, 0, 1}, {1, 1, 1}}, {{0, 0, 1}, {1, 1, 1}}});
  r.cylinders.push_back({1, 2, 1, 0, {{2, 0, 1}, {3, 1, 1}}, {{2, 0, 1}, {3, 1, 1}}});
  r.glue = {{0, 2}, {1, 3}, {2, 0}, {3, 1}};
  auto c = certify_hyperelliptic(r);
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.message.empty());
}

TEST(VerticalCollapse, LeafVanishes) {
  auto r = vertical_collapse(build_unit(path3()), {{{0, 1}}});
  ASSERT_EQ(r.result.components.size(), 1u);
  EXPECT_EQ(r.result.notices.size(), 1u);
  EXPECT_TRUE(r.result.components[0].certification.ok);
  EXPECT_EQ(r.result.collapsed_area, Q(2));
  EXPECT_EQ(r.result.collapsed_area, r.predicted_collapsed_area);
}

TEST(VerticalCollapse, PathOneEdge) {
  // 3-vertex path with a half-edge at each leaf
  HalfTree t{{{0, {0, 4}}, {1, {1, 2}}, {2, {3, 5}}}, {{0, 1}, {2, 3}}};
  auto s = build_unit(t);
  VerticalCollapseInput in{{{0, 1}}};
  auto r = vertical_collapse(s, in);
  ASSERT_EQ(r.result.components.size(), 2u);
  std::multiset<int> sizes;
  for (const auto& c : r.result.components) {
    EXPECT_TRUE(c.certification.ok) << c.certification.message;
    sizes.insert(static_cast<int>(c.surface.skeleton.vertices.size()));
  }
  EXPECT_EQ(sizes, (std::multiset<int>{1, 2}));
  EXPECT_EQ(r.result.collapsed_area, r.predicted_collapsed_area);
  EXPECT_EQ(r.result.collapsed_area, Q(2));
}

TEST(VerticalCollapse, IdentityAndPartial) {
  std::mt19937_64 rng(8);
  auto s = random_surface(path3(), rng);
  auto id = vertical_collapse(s, {});
  ASSERT_EQ(id.result.components.size(), 1u);
  EXPECT_TRUE(isomorphic(id.result.components[0].surface, s));
  EXPECT_EQ(id.result.collapsed_area, Q(0));
  auto half = vertical_collapse(s, {{{2, frac(1, 2)}}});
  ASSERT_EQ(half.result.components.size(), 1u);
  const auto& h = half.result.components[0].surface;
  EXPECT_EQ(canonical_form(h.skeleton).code, canonical_form(s.skeleton).code);
  EXPECT_EQ(area(h), area(s) - (s.height.at(1) + s.height.at(2)) * s.length.at(2) / 2);
}

TEST(VerticalCollapse, Errors) {
  auto s = build_unit(single(3));
  EXPECT_THROW(vertical_collapse(s, {{{0, 1}}}), Error);
  HalfTree two{{{0, {0}}, {1, {1}}}, {{0, 1}}};
  EXPECT_THROW(vertical_collapse(build_unit(two), {{{0, 1}}}), Error);  // nothing survives
  EXPECT_THROW(vertical_collapse(s, {{{0, 2}}}), Error);
}

TEST(VerticalCollapse, AllEdgeSubsetsCertify) {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int n = 2; n <= 6; ++n)
    for (auto& t : enumerate(n)) {
      auto s = random_surface(t, rng);
      const int k = static_cast<int>(t.pairs.size());
      for (int mask = 1; mask < (1 << k); ++mask) {
        VerticalCollapseInput in;
        for (int e = 0; e < k; ++e)
          if (mask >> e & 1) in.proportion[std::min(t.pairs[e].first, t.pairs[e].second)] = 1;
        VerticalCollapseReport r;
        try {
          r = vertical_collapse(s, in);
        } catch (const Error&) {
          EXPECT_EQ(k, mask == (1 << k) - 1 ? k : -1);  // only when every cylinder dies
          continue;
        }
        ++checked;
        EXPECT_EQ(r.result.collapsed_area, r.predicted_collapsed_area);
        ASSERT_EQ(r.result.components.size(), r.predicted_skeletons.size());
        for (size_t i = 0; i < r.predicted_skeletons.size(); ++i) {
          const auto& c = r.result.components[i];
          EXPECT_TRUE(c.certification.ok) << c.certification.message;
          EXPECT_EQ(canonical_form(lindsey_tree(c.raw)).code, canonical_form(r.predicted_skeletons[i]).code);
        }
      }
    }
  EXPECT_GT(checked, 40);
}

TEST(HorizontalCollapse, PathMiddle) {
  auto s = build_unit(path3());
  auto r = horizontal_collapse(s, {{1}});
  ASSERT_EQ(r.result.components.size(), 1u);
  const auto& c = r.result.components[0];
  EXPECT_TRUE(c.certification.ok) << c.certification.message;
  EXPECT_EQ(c.certification.stratum, "H(0,0)");
  EXPECT_EQ(r.result.collapsed_area, Q(2));
  ASSERT_EQ(r.regluing.size(), 1u);
  EXPECT_TRUE(r.regluing[0].forest);
  EXPECT_EQ(r.regluing[0].edges.size(), 1u);
  std::map<int, Q> l{{0, 1}, {1, 1}, {2, 1}, {3, 1}}, h{{0, 1}, {1, 1}, {2, 1}}, tw{{1, frac(1, 2)}};
  EXPECT_THROW(horizontal_collapse(build(path3(), l, h, tw), {{1}}), Error);
}

TEST(HorizontalCollapse, LeafAgainstTraceOracle) {
  std::mt19937_64 rng(10);
  auto s = align(random_surface(path3(), rng), 0, 0, 0);
  auto r = horizontal_collapse(s, {{0}});
  ASSERT_EQ(r.result.components.size(), 1u);
  EXPECT_TRUE(r.result.components[0].certification.ok);
  EXPECT_TRUE(r.marks.empty());
  // each new saddle: a vertical line through the deleted cylinder joins its two pieces
  for (const auto& g : r.glues) {
    const RawCylinder* lower = nullptr;
    for (const auto& c : s.raw.cylinders)
      if (c.id == g.lower_cyl) lower = &c;
    Q X = 0;
    for (const auto& t : lower->top)
      if (t.id == g.top_source) X = t.start + g.top_offset + g.length / 2;
    // one downward step from the deleted cylinder's bottom is the same as going up from X
    auto bottom_pt = X - lower->twist;
    auto tr = trace_vertical(s.raw, lower->id, bottom_pt, 3);
    ASSERT_GE(tr.crossings.size(), 2u);
    EXPECT_EQ(tr.crossings[1].cyl, g.deleted);
    ASSERT_GE(tr.crossings.size(), 3u);
    EXPECT_EQ(tr.crossings[2].cyl, g.upper_cyl);
  }
}

TEST(HorizontalCollapse, Errors) {
  auto s = build_unit(path3());
  EXPECT_THROW(horizontal_collapse(s, {{0, 1}}), Error);
  EXPECT_THROW(horizontal_collapse(s, {{0, 1, 2}}), Error);
  EXPECT_THROW(horizontal_collapse(build_unit(single(3)), {{0}}), Error);
}

TEST(HorizontalCollapse, AllIndependentSetsCertify) {
  std::mt19937_64 rng(11);
  int runs = 0;
  for (int n = 2; n <= 6; ++n)
    for (auto& t : enumerate(n)) {
      const int nv = static_cast<int>(t.vertices.size());
      for (int mask = 1; mask < (1 << nv); ++mask) {
        std::vector<int> set;
        for (int i = 0; i < nv; ++i)
          if (mask >> i & 1) set.push_back(t.vertices[i].id);
        if (!independent(t, set)) continue;
        for (int trial = 0; trial < 3; ++trial) {
          auto s = random_surface(t, rng);
          for (int v : set) {
            int deg = static_cast<int>(t.vertices.at(TreeIndex(t).vertex_index.at(v)).ports.size());
            s = align(s, v, static_cast<int>(rng() % deg), static_cast<int>(rng() % deg));
          }
          auto J = involution_check(s);
          auto r = horizontal_collapse(s, {set});
          ++runs;
          Q comp = 0;
          for (const auto& c : r.result.components) {
            EXPECT_TRUE(c.certification.ok) << c.certification.message;
            comp += area(c.raw);
          }
          Q deleted = 0;
          for (int v : set) deleted += circumference(s, v) * s.height.at(v);
          EXPECT_EQ(r.result.collapsed_area, deleted);
          EXPECT_EQ(comp + deleted, area(s));
          for (const auto& g : r.regluing) EXPECT_TRUE(g.forest);
          // marks are carried to marks by the rotation of their own cylinder
          for (const auto& m : r.marks) {
            const RawCylinder* c = nullptr;
            for (const auto& x : s.raw.cylinders)
              if (x.id == m.cyl) c = &x;
            Q pos;
            for (const auto& seg : (m.side == "top" ? c->top : c->bottom))
              if (seg.id == m.source_segment) pos = seg.start + m.offset;
            Q image = mod_pos(J.centre.at(c->id) - pos, c->circumference);
            bool found = false;
            for (const auto& o : r.marks) {
              if (o.cyl != m.cyl || o.side == m.side) continue;
              for (const auto& seg : (o.side == "top" ? c->top : c->bottom))
                if (seg.id == o.source_segment && mod_pos(seg.start + o.offset, c->circumference) == image)
                  found = true;
            }
            EXPECT_TRUE(found);
          }
        }
      }
    }
  EXPECT_GT(runs, 50);
}
