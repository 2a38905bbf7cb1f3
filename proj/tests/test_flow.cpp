#include <gtest/gtest.h>

#include <random>

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

// Tracer working from the skeleton and metric only: top intervals come from the reversed
// port order, gluing from the edge pairing. No gluing tables involved.
struct NaiveStep {
  int vertex;
  Q entry, exit;
};

std::vector<NaiveStep> naive_trace(const Surface& s, int vertex, Q x, bool& closed) {
  std::map<int, int> mate;
  std::map<int, int> owner;
  std::map<int, Q> bstart;
  std::map<int, Q> circ;
  for (const auto& v : s.skeleton.vertices) {
    Q a = 0;
    for (int p : v.ports) {
      owner[p] = v.id;
      bstart[p] = a;
      a += s.length.at(p);
      mate[p] = p;
    }
    circ[v.id] = a;
  }
  for (auto [a, b] : s.skeleton.pairs) {
    mate[a] = b;
    mate[b] = a;
  }
  std::vector<NaiveStep> out;
  const int v0 = vertex;
  const Q x0 = x;
  closed = false;
  for (int guard = 0; guard < 100000; ++guard) {
    Q C = circ[vertex];
    Q X = mod_pos(x + s.twist.at(vertex), C);
    out.push_back({vertex, x, X});
    int hit = -1;
    Q u;
    for (const auto& v : s.skeleton.vertices) {
      if (v.id != vertex) continue;
      for (int p : v.ports) {
        // top of port p spans (C - end, C - start)
        Q lo = C - bstart[p] - s.length.at(p), hi = C - bstart[p];
        if (X == lo || (X == 0 && hi == C)) return out;
        if (X > lo && X < hi) {
          hit = p;
          u = X - lo;
        }
      }
    }
    if (hit < 0) return out;
    int q = mate[hit];
    vertex = owner[q];
    x = bstart[q] + u;
    if (vertex == v0 && x == x0) {
      closed = true;
      return out;
    }
  }
  ADD_FAILURE() << "naive trace did not stop";
  return out;
}

}  // namespace

TEST(Trace, TorusExamples) {
  auto t = build_unit(single(1));
  auto tr = trace_vertical(t.raw, 0, frac(1, 2));
  EXPECT_TRUE(tr.closed);
  EXPECT_EQ(tr.crossings.size(), 1u);
  EXPECT_EQ(tr.length, Q(1));
  EXPECT_THROW(trace_vertical(t.raw, 0, Q(0)), Error);
  std::map<int, Q> l{{0, 1}}, h{{0, 1}}, tw{{0, frac(1, 2)}};
  auto sheared = build(single(1), l, h, tw);
  auto below = trace_vertical(sheared.raw, 0, frac(1, 2));
  EXPECT_FALSE(below.closed);
  EXPECT_EQ(below.crossings.size(), 1u);
}

TEST(Trace, MatchesNaiveOracle) {
  std::mt19937_64 rng(101);
  std::vector<HalfTree> trees = {single(3)};
  for (int n = 2; n <= 6; ++n)
    for (auto& t : enumerate(n)) trees.push_back(t);
  int compared = 0;
  for (const auto& t : trees) {
    for (int trial = 0; trial < 3; ++trial) {
      auto s = trial == 0 ? build_unit(t) : random_surface(t, rng);
      for (const auto& v : t.vertices) {
        Q C = circumference(s, v.id);
        for (int k = 1; k < 8; ++k) {
          Q x = C * frac(k, 8);
          bool singular_start = false;
          Trajectory tr;
          try {
            tr = trace_vertical(s.raw, v.id, x);
          } catch (const Error&) {
            singular_start = true;
          }
          if (singular_start) continue;
          bool closed = false;
          auto nv = naive_trace(s, v.id, x, closed);
          ASSERT_EQ(tr.crossings.size(), nv.size());
          EXPECT_EQ(tr.closed, closed);
          for (size_t i = 0; i < nv.size(); ++i) {
            EXPECT_EQ(tr.crossings[i].cyl, nv[i].vertex);
            EXPECT_EQ(tr.crossings[i].entry, nv[i].entry);
            EXPECT_EQ(tr.crossings[i].exit, nv[i].exit);
          }
          ++compared;
        }
      }
    }
  }
  EXPECT_GT(compared, 50);
}

TEST(Trace, UnitThreePortOrbit) {
  auto s = build_unit(single(3));
  auto tr = trace_vertical(s.raw, 0, frac(1, 2));
  bool closed = false;
  auto nv = naive_trace(s, 0, frac(1, 2), closed);
  EXPECT_TRUE(tr.closed);
  EXPECT_TRUE(closed);
  EXPECT_EQ(tr.crossings.size(), nv.size());
}

TEST(Trace, Reversible) {
  std::mt19937_64 rng(7);
  for (auto& t : enumerate(5)) {
    auto s = random_surface(t, rng);
    for (const auto& v : t.vertices) {
      Q x = circumference(s, v.id) * frac(3, 7);
      Trajectory up;
      try {
        up = trace_vertical(s.raw, v.id, x);
      } catch (const Error&) {
        continue;
      }
      if (!up.closed) continue;
      const auto& last = up.crossings.back();
      auto down = trace_downward(s.raw, last.cyl, last.exit, static_cast<int>(up.crossings.size()));
      ASSERT_EQ(down.crossings.size(), up.crossings.size());
      for (size_t i = 0; i < up.crossings.size(); ++i) {
        const auto& a = up.crossings[up.crossings.size() - 1 - i];
        const auto& b = down.crossings[i];
        EXPECT_EQ(a.cyl, b.cyl);
        EXPECT_EQ(a.entry, b.exit);
        EXPECT_EQ(a.exit, b.entry);
      }
      EXPECT_TRUE(down.closed);
    }
  }
}

TEST(Decomposition, Torus) {
  auto d = vertical_decomposition(build_unit(single(1)));
  ASSERT_EQ(d.cylinders.size(), 1u);
  EXPECT_EQ(d.cylinders[0].width, Q(1));
  EXPECT_EQ(d.cylinders[0].core, Q(1));
  EXPECT_EQ(cylinder_proportion(build_unit(single(1)).raw, d, {0}, 0), Q(1));
}

TEST(Decomposition, UnitThreePortAreaAndOracle) {
  auto s = build_unit(single(3));
  auto d = vertical_decomposition(s);
  Q a = 0;
  for (const auto& v : d.cylinders) {
    a += v.width * v.core;
    // the orbit through the first interval's midpoint agrees with the independent tracer
    const auto& iv = v.intervals.front();
    bool closed = false;
    auto nv = naive_trace(s, iv.cyl, iv.start + iv.length / 2, closed);
    EXPECT_TRUE(closed);
    EXPECT_EQ(nv.size(), v.intervals.size());
  }
  EXPECT_EQ(a, area(s));
}

TEST(Decomposition, AreaAndInvolutionProperties) {
  std::mt19937_64 rng(55);
  for (int n = 1; n <= 6; ++n)
    for (auto& t : enumerate(n))
      for (int trial = 0; trial < 3; ++trial) {
        auto s = trial == 0 ? build_unit(t) : random_surface(t, rng);
        auto d = vertical_decomposition(s);
        Q a = 0;
        for (const auto& v : d.cylinders) {
          a += v.width * v.core;
          Q core = 0;
          for (const auto& iv : v.intervals)
            for (const auto& c : s.raw.cylinders)
              if (c.id == iv.cyl) core += c.height;
          EXPECT_EQ(core, v.core);
          EXPECT_GT(v.width, 0);
        }
        EXPECT_EQ(a, area(s));
        auto j = vertical_involution(s.raw, d);
        for (size_t v = 0; v < j.size(); ++v) {
          EXPECT_EQ(j[j[v]], static_cast<int>(v));
          EXPECT_EQ(d.cylinders[j[v]].width, d.cylinders[v].width);
          EXPECT_EQ(d.cylinders[j[v]].crossings, d.cylinders[v].crossings);
        }
        // proportions over the whole decomposition are 1 on every cylinder
        std::vector<int> all;
        for (size_t v = 0; v < d.cylinders.size(); ++v) all.push_back(static_cast<int>(v));
        for (const auto& c : s.raw.cylinders) EXPECT_EQ(cylinder_proportion(s.raw, d, all, c.id), Q(1));
      }
}

TEST(Decomposition, LocalTraceAgreesWithGlobal) {
  std::mt19937_64 rng(91);
  int compared = 0;
  for (int n = 1; n <= 5; ++n)
    for (auto& t : enumerate(n))
      for (int trial = 0; trial < 3; ++trial) {
        auto s = trial == 0 ? build_unit(t) : random_surface(t, rng);
        auto d = vertical_decomposition(s);
        for (const auto& v : d.cylinders) {
          // start from the middle of the first interval, so the strip's bottom piece comes first
          const auto& iv = v.intervals.front();
          auto local = vertical_cylinder_through(s.raw, iv.cyl, iv.start + iv.length / 2);
          EXPECT_EQ(local.width, v.width);
          EXPECT_EQ(local.core, v.core);
          EXPECT_EQ(local.crossings, v.crossings);
          ASSERT_EQ(local.intervals.size(), v.intervals.size());
          for (size_t k = 0; k < v.intervals.size(); ++k) {
            EXPECT_EQ(local.intervals[k].cyl, v.intervals[k].cyl);
            EXPECT_EQ(local.intervals[k].start, v.intervals[k].start);
          }
          ++compared;
        }
      }
  EXPECT_GT(compared, 50);
}

TEST(StandardPosition, AllAdjacentPairs) {
  std::mt19937_64 rng(77);
  for (int n = 2; n <= 6; ++n)
    for (auto& t : enumerate(n))
      for (int trial = 0; trial < 2; ++trial) {
        auto s = random_surface(t, rng);
        for (auto [p, q] : t.pairs)
          for (bool transverse : {false, true}) {
            auto sp = standard_position(s, p, transverse);
            Q len = s.length.at(p);
            EXPECT_EQ(sp.cylinder.width, len);
            EXPECT_EQ(sp.cylinder.core, s.height.at(sp.c) + s.height.at(sp.d));
            EXPECT_EQ(sp.cylinder.crossings.size(), 2u);
            EXPECT_EQ(sp.cylinder.crossings.at(sp.c), len);
            EXPECT_EQ(sp.cylinder.crossings.at(sp.d), len);
            if (transverse) {
              EXPECT_EQ(sp.delta.at(sp.c), Q(0));
            } else {
              auto again = standard_position(sp.adjusted, p, false);
              EXPECT_EQ(again.delta.at(sp.c), Q(0));
              EXPECT_EQ(again.delta.at(sp.d), Q(0));
            }
          }
      }
}

TEST(StandardPosition, ProportionAndDisjoint) {
  auto s = build_unit(path3());
  auto sp = standard_position(s, 0, false);
  EXPECT_EQ(sp.c, 0);
  EXPECT_EQ(sp.d, 1);
  auto d = vertical_decomposition(sp.adjusted);
  int v = vertical_cylinder_at(d, 0, frac(1, 2));
  EXPECT_EQ(cylinder_proportion(sp.adjusted.raw, d, {v}, 0), Q(1));
  EXPECT_EQ(cylinder_proportion(sp.adjusted.raw, d, {v}, 1), frac(1, 2));
  EXPECT_EQ(cylinder_proportion(sp.adjusted.raw, d, {v}, 2), Q(0));
  EXPECT_THROW(standard_position(build_unit(single(3)), 0, false), Error);
  EXPECT_THROW(cylinder_proportion(sp.adjusted.raw, d, {99}, 0), Error);
}
