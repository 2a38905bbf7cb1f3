#include <gtest/gtest.h>

#include <random>

#include "hypsurf/deform.hpp"
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

bool same_data(const Surface& a, const Surface& b) {
  return a.skeleton == b.skeleton && a.length == b.length && a.height == b.height && a.twist == b.twist;
}

}  // namespace

TEST(Shear, IdentityAndDehnTwist) {
  std::mt19937_64 rng(1);
  auto s = random_surface(path3(), rng);
  EXPECT_TRUE(same_data(shear_class(s, {0, 1, 2}, 0), s));
  auto torus = build_unit(single(1));
  EXPECT_EQ(shear_class(torus, {0}, 1).twist.at(0), Q(0));
  EXPECT_EQ(shear_class(torus, {0}, frac(1, 3)).twist.at(0), frac(1, 3));
}

TEST(Shear, RealisesStandardPosition) {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 6; ++n)
    for (auto& t : enumerate(n)) {
      auto s = random_surface(t, rng);
      for (auto [p, q] : t.pairs) {
        auto sp = standard_position(s, p);
        auto moved = shear_class(s, {sp.c}, sp.delta.at(sp.c) / s.height.at(sp.c));
        moved = shear_class(moved, {sp.d}, sp.delta.at(sp.d) / s.height.at(sp.d));
        auto d = vertical_decomposition(moved);
        Q mid = 0;
        for (const auto& c : moved.raw.cylinders)
          for (const auto& b : c.bottom)
            if (b.id == p) mid = b.start + b.length / 2;
        const auto& v = d.cylinders[vertical_cylinder_at(d, sp.c, mid)];
        EXPECT_EQ(v.width, s.length.at(p));
        EXPECT_EQ(v.core, s.height.at(sp.c) + s.height.at(sp.d));
        EXPECT_EQ(v.crossings.size(), 2u);
      }
    }
}

TEST(Dilate, AreaBookkeeping) {
  std::mt19937_64 rng(3);
  auto s = random_surface(path3(), rng);
  EXPECT_TRUE(same_data(dilate_class(s, {1}, 1), s));
  EXPECT_EQ(area(dilate_class(s, {0, 1, 2}, 2)), 2 * area(s));
  Q lam = frac(7, 3);
  Q expect = area(s) + (lam - 1) * circumference(s, 1) * s.height.at(1);
  EXPECT_EQ(area(dilate_class(s, {1}, lam)), expect);
  EXPECT_THROW(dilate_class(s, {1}, 0), Error);
  EXPECT_THROW(dilate_class(s, {1}, -1), Error);
}

TEST(DilateSaddle, Examples) {
  auto s = build_unit(single(3));
  auto d = dilate_saddle_class(s, {0}, 2);
  EXPECT_EQ(d.length.at(0), Q(2));
  EXPECT_EQ(d.length.at(1), Q(1));
  EXPECT_EQ(d.length.at(2), Q(1));
  EXPECT_EQ(area(d), Q(4));
  EXPECT_TRUE(same_data(dilate_saddle_class(s, {0, 1}, 1), s));
  std::map<int, Q> l{{0, 1}, {1, 2}, {2, 1}}, h{{0, 1}}, tw;
  auto uneven = build(single(3), l, h, tw);
  EXPECT_THROW(dilate_saddle_class(uneven, {0, 1}, 2), Error);
  EXPECT_THROW(dilate_saddle_class(s, {0}, 0), Error);
}

TEST(DilateSaddle, InverseRestores) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 6; ++n)
    for (auto& t : enumerate(n)) {
      auto s = random_surface(t, rng);
      for (int e : edge_ids(t)) {
        auto there = dilate_saddle_class(s, {e}, frac(5, 2));
        auto back = dilate_saddle_class(there, {e}, frac(2, 5));
        EXPECT_TRUE(same_data(back, s));
        EXPECT_TRUE(involution_check(there).ok);
      }
    }
}

TEST(Deformations, PreserveCombinatorialType) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 6; ++n)
    for (auto& t : enumerate(n)) {
      auto s = random_surface(t, rng);
      auto prof = singularity_profile(s);
      auto lt = lindsey_tree(s);
      std::vector<int> first{t.vertices[0].id};
      for (const auto& m : {shear_class(s, first, frac(3, 7)), dilate_class(s, first, frac(9, 4)),
                            dilate_saddle_class(s, {edge_ids(t)[0]}, 3)}) {
        EXPECT_EQ(singularity_profile(m), prof);
        EXPECT_EQ(lindsey_tree(m), lt);
      }
    }
}

TEST(Cochains, StandardShear) {
  auto s = build_unit(single(1));
  EXPECT_EQ(standard_shear(s, {0}).at(0), Q(1));
  std::map<int, Q> l{{0, 1}, {1, 1}, {2, 1}, {3, 1}}, h{{0, 1}, {1, 2}, {2, 1}}, tw;
  auto p = build(path3(), l, h, tw);
  auto all = standard_shear(p, {0, 1, 2});
  EXPECT_EQ(all.at(0), Q(1));
  EXPECT_EQ(all.at(1), Q(2));
  EXPECT_EQ(all.at(2), Q(1));
  auto a = standard_shear(p, {0, 2}), b = standard_shear(p, {1});
  EXPECT_EQ(a + b, all);
  EXPECT_EQ(a.at(1), Q(0));
  EXPECT_EQ(b.at(0), Q(0));
  EXPECT_THROW(standard_shear(p, {}), Error);
}

TEST(Cochains, RelativeDeformation) {
  auto eta = relative_deformation(build_unit(path3()));
  EXPECT_EQ(eta.at(0), Q(1));
  EXPECT_EQ(eta.at(1), Q(-1));
  EXPECT_EQ(eta.at(2), Q(1));
  HalfTree two{{{0, {0}}, {1, {1}}}, {{0, 1}}};
  auto e2 = relative_deformation(build_unit(two));
  EXPECT_EQ(e2.at(0) * e2.at(1), Q(-1));
  EXPECT_THROW(relative_deformation(build_unit(single(3))), Error);
}

TEST(Cochains, RelativeDeformationKernelAndSigns) {
  int trees = 0;
  for (int n = 2; n <= 10; n += 2)
    for (auto& t : enumerate(n)) {
      TreeIndex ix(t);
      bool has_half = false;
      for (auto& [p, m] : ix.mate) has_half |= p == m;
      if (has_half) continue;
      ++trees;
      auto eta = relative_deformation(build_unit(t));
      for (auto [a, b] : t.pairs) {
        int va = t.vertices[ix.vertex_of(a)].id, vb = t.vertices[ix.vertex_of(b)].id;
        EXPECT_EQ(evaluate_walk(eta, {va, vb}), Q(0));
      }
      int root = relative_deformation_root(t);
      for (const auto& v : t.vertices)
        EXPECT_EQ(eta.at(v.id) == 1, tree_distance(t, root, v.id) % 2 == 0);
    }
  EXPECT_GT(trees, 5);
}

TEST(Candidate, SingletonsPass) {
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 6; ++n)
    for (auto& t : enumerate(n)) {
      auto s = random_surface(t, rng);
      auto r = check_candidate(s, singleton_cylinders(t), singleton_saddles(t));
      EXPECT_TRUE(r.ok);
      EXPECT_EQ(r.checks.size(), 7u);
    }
}

TEST(Candidate, NegativeControls) {
  // 5-vertex path: leaves 0 and 4 are at even distance, 0 and 1 at odd distance
  HalfTree p5{{{0, {0}}, {1, {1, 2}}, {2, {3, 4}}, {3, {5, 6}}, {4, {7}}}, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}};
  std::map<int, Q> l, h, tw;
  for (int p = 0; p < 8; ++p) l[p] = 1;
  for (int v = 0; v < 5; ++v) h[v] = 1;
  h[4] = 2;
  auto s = build(p5, l, h, tw);
  CylinderPartition cp{{{0, 4}, {1}, {2}, {3}}};
  auto r = check_candidate(s, cp, singleton_saddles(p5));
  EXPECT_FALSE(r.find("heights")->ok);
  EXPECT_TRUE(r.find("distances")->ok);
  CylinderPartition odd{{{0, 1}, {2}, {3}, {4}}};
  EXPECT_FALSE(check_candidate(build_unit(p5), odd, singleton_saddles(p5)).find("distances")->ok);
  auto u = build_unit(single(3));
  std::map<int, Q> l3{{0, 1}, {1, 2}, {2, 1}}, h3{{0, 1}};
  SaddlePartition merged{{{0, 1}, {2}}};
  auto r3 = check_candidate(build(single(3), l3, h3, tw), singleton_cylinders(single(3)), merged);
  EXPECT_FALSE(r3.find("lengths")->ok);
  EXPECT_FALSE(r3.find("periodic")->ok);  // classes (0,0,1) around the vertex
  SaddlePartition missing{{{0}, {1}}};
  EXPECT_FALSE(check_candidate(u, singleton_cylinders(single(3)), missing).ok);
}

TEST(Candidate, WrappedClassAndModuli) {
  // one cylinder with pattern (a,b,a,b) over a two-port period
  HalfTree t{{{0, {0, 1, 2, 3}}}, {}};
  std::map<int, Q> l{{0, 1}, {1, 2}, {2, 1}, {3, 2}}, h{{0, 3}}, tw{{0, 1}};
  auto s = build(t, l, h, tw);
  auto r = check_candidate(s, CylinderPartition{{{0}}}, SaddlePartition{{{0, 2}, {1, 3}}});
  ASSERT_TRUE(r.ok);
  ASSERT_EQ(r.bases.size(), 1u);
  EXPECT_EQ(r.bases[0].circumference, Q(3));
  EXPECT_EQ(r.bases[0].wrap.at(0), 2);
  // moduli ratio inside a passing class is rational, equal to inverse circumference ratio
  HalfTree p5{{{0, {0}}, {1, {1, 2}}, {2, {3, 4}}, {3, {5, 6}}, {4, {7}}}, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}};
  std::map<int, Q> l5, h5, tw5;
  for (int p = 0; p < 8; ++p) l5[p] = 1;
  for (int v = 0; v < 5; ++v) h5[v] = 1;
  auto s5 = build(p5, l5, h5, tw5);
  auto r5 = check_candidate(s5, CylinderPartition{{{0, 4}, {1, 3}, {2}}},
                            SaddlePartition{{{0, 6}, {2, 4}}});
  EXPECT_TRUE(r5.ok) << r5.checks.size();
  Q mod0 = s5.height.at(0) / circumference(s5, 0), mod4 = s5.height.at(4) / circumference(s5, 4);
  EXPECT_EQ(mod0 / mod4, circumference(s5, 4) / circumference(s5, 0));
}
