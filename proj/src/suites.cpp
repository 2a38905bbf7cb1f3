#include "hypsurf/suites.hpp"

#include <chrono>
#include <random>
#include <set>

#include "hypsurf/collapse.hpp"
#include "hypsurf/deform.hpp"
#include "hypsurf/flow.hpp"

namespace hs {

namespace {

constexpr size_t kMaxListed = 25;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Per-instance generator, so a failure can be replayed from its label alone.
std::mt19937_64 instance_rng(std::uint64_t seed, int n, int index, int trial) {
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(sq);
}

std::string label(const HalfTree& t, int trial) {
  return "skeleton " + canonical_form(t).code + " metric " + std::to_string(trial);
}

bool has_half_edge(const HalfTree& t) {
  TreeIndex ix(t);
  for (auto& [p, m] : ix.mate)
    if (p == m) return true;
  return false;
}

std::vector<int> full_edge_ports(const HalfTree& t) {
  std::vector<int> out;
  for (auto [a, b] : t.pairs) out.push_back(std::min(a, b));
  return out;
}

}  // namespace

void SuiteReport::fail(const std::string& what) {
  ++failed;
  if (failures.size() < kMaxListed) failures.push_back(what);
}

SuiteReport suite_roundtrip(int ports_max, int metrics, std::uint64_t seed) {
  SuiteReport r;
  r.name = "roundtrip";
  auto t0 = Clock::now();
  for (int n = 1; n <= ports_max; ++n) {
    auto trees = enumerate(n);
    const int g = (n + 1) / 2;
    const std::vector<int> want = n % 2 ? std::vector<int>{2 * g - 2} : std::vector<int>{g - 1, g - 1};
    for (int i = 0; i < static_cast<int>(trees.size()); ++i) {
      const auto& t = trees[i];
      const std::string code = canonical_form(t).code;
      if (stratum_of(t).genus != g) r.fail("skeleton " + code + ": genus disagrees with port count");
      for (int m = 0; m < metrics; ++m) {
        auto rng = instance_rng(seed, n, i, m);
        ++r.checked;
        try {
          auto s = random_surface(t, rng);
          if (canonical_form(lindsey_tree(s)).code != code) r.fail(label(t, m) + ": diagram not recovered");
          if (singularity_profile(s).orders != want) r.fail(label(t, m) + ": singularity profile");
          auto w = weierstrass_points(s);
          if (static_cast<int>(w.points.size()) != 2 * g + 2 || w.expected != 2 * g + 2)
            r.fail(label(t, m) + ": " + std::to_string(w.points.size()) + " Weierstrass points");
          if (w.residual != 0) r.fail(label(t, m) + ": Weierstrass formula residual " + std::to_string(w.residual));
        } catch (const Error& e) {
          r.fail(label(t, m) + ": " + e.what());
        }
      }
    }
  }
  r.seconds = since(t0);
  return r;
}

SuiteReport suite_flow(int ports_max, int metrics, std::uint64_t seed) {
  SuiteReport r;
  r.name = "flow";
  auto t0 = Clock::now();
  for (int n = 1; n <= ports_max; ++n) {
    auto trees = enumerate(n);
    for (int i = 0; i < static_cast<int>(trees.size()); ++i)
      for (int m = 0; m < metrics; ++m) {
        const auto& t = trees[i];
        auto rng = instance_rng(seed, n, i, m);
        ++r.checked;
        try {
          auto s = m == 0 ? build_unit(t) : random_surface(t, rng);
          auto d = vertical_decomposition(s);
          Q total = 0;
          for (const auto& v : d.cylinders) total += v.width * v.core;
          if (total != area(s)) r.fail(label(t, m) + ": vertical area " + to_string(total) + " != " + to_string(area(s)));
          TreeIndex ix(t);
          for (int p : full_edge_ports(t))
            for (bool transverse : {false, true}) {
              auto sp = standard_position(s, p, transverse);
              int c = t.vertices[ix.vertex_of(p)].id, dd = t.vertices[ix.vertex_of(ix.mate.at(p))].id;
              if (sp.cylinder.width != s.length.at(p) || sp.cylinder.core != s.height.at(c) + s.height.at(dd))
                r.fail(label(t, m) + ": standard position at port " + std::to_string(p) +
                       (transverse ? " (transverse)" : ""));
            }
        } catch (const Error& e) {
          r.fail(label(t, m) + ": " + e.what());
        }
      }
  }
  r.seconds = since(t0);
  return r;
}

SuiteReport suite_collapse(int ports_max, int trials, std::uint64_t seed) {
  SuiteReport r;
  r.name = "collapse";
  auto t0 = Clock::now();
  auto certified = [&](const DisjointSurface& d, const std::string& where) {
    for (size_t i = 0; i < d.components.size(); ++i)
      if (!d.components[i].certification.ok)
        r.fail(where + ": component " + std::to_string(i) + " " + d.components[i].certification.message);
  };
  for (int n = 2; n <= ports_max; ++n) {
    auto trees = enumerate(n);
    for (int i = 0; i < static_cast<int>(trees.size()); ++i) {
      const auto& t = trees[i];
      TreeIndex ix(t);
      const int k = static_cast<int>(t.pairs.size());
      for (int trial = 0; trial < trials; ++trial) {
        auto rng = instance_rng(seed, n, i, trial);
        auto s = random_surface(t, rng);
        for (int mask = 1; mask < (1 << k); ++mask) {
          std::string where = label(t, trial) + " vertical mask " + std::to_string(mask);
          VerticalCollapseInput in;
          std::set<int> dead_ports;
          for (int e = 0; e < k; ++e)
            if (mask >> e & 1) {
              // odd trials shrink partially, even trials delete
              Q p = trial % 2 ? frac(1 + static_cast<long>(rng() % 7), 8) : Q(1);
              in.proportion[std::min(t.pairs[e].first, t.pairs[e].second)] = p;
              if (p == 1) dead_ports.insert({t.pairs[e].first, t.pairs[e].second});
            }
          bool all_die = true;
          for (const auto& v : t.vertices)
            for (int p : v.ports)
              if (!dead_ports.count(p)) all_die = false;
          ++r.checked;
          try {
            auto rep = vertical_collapse(s, in);
            if (all_die) r.fail(where + ": expected an empty result");
            if (rep.result.collapsed_area != rep.predicted_collapsed_area) r.fail(where + ": collapsed area");
            Q comp = 0;
            for (const auto& c : rep.result.components) comp += area(c.raw);
            if (comp + rep.result.collapsed_area != area(s)) r.fail(where + ": area accounting");
            if (rep.result.components.size() != rep.predicted_skeletons.size()) {
              r.fail(where + ": component count");
              continue;
            }
            certified(rep.result, where);
            for (size_t c = 0; c < rep.predicted_skeletons.size(); ++c)
              if (rep.result.components[c].certification.ok &&
                  canonical_form(lindsey_tree(rep.result.components[c].raw)).code !=
                      canonical_form(rep.predicted_skeletons[c]).code)
                r.fail(where + ": component " + std::to_string(c) + " has the wrong diagram");
          } catch (const Error& e) {
            if (!all_die) r.fail(where + ": " + e.what());
          }
        }
        const int nv = static_cast<int>(t.vertices.size());
        for (int mask = 1; mask < (1 << nv); ++mask) {
          std::vector<int> set;
          for (int v = 0; v < nv; ++v)
            if (mask >> v & 1) set.push_back(t.vertices[v].id);
          bool independent = static_cast<int>(set.size()) < nv;
          std::set<int> in_set(set.begin(), set.end());
          for (auto& [p, m] : ix.mate)
            if (in_set.count(t.vertices[ix.vertex_of(p)].id) && in_set.count(t.vertices[ix.vertex_of(m)].id))
              independent = false;
          if (!independent) continue;
          std::string where = label(t, trial) + " horizontal mask " + std::to_string(mask);
          auto a = s;
          for (int v : set) {
            int deg = static_cast<int>(t.vertices[ix.vertex_index.at(v)].ports.size());
            a = align_junctions(a, v, static_cast<int>(rng() % deg), static_cast<int>(rng() % deg));
          }
          ++r.checked;
          try {
            auto rep = horizontal_collapse(a, {set});
            certified(rep.result, where);
            Q deleted = 0, comp = 0;
            for (int v : set) deleted += circumference(a, v) * a.height.at(v);
            for (const auto& c : rep.result.components) comp += area(c.raw);
            if (rep.result.collapsed_area != deleted || comp + deleted != area(a)) r.fail(where + ": area accounting");
            for (const auto& g : rep.regluing)
              if (!g.forest) r.fail(where + ": regluing graph at " + std::to_string(g.deleted) + " has a cycle");
          } catch (const Error& e) {
            r.fail(where + ": " + e.what());
          }
        }
      }
    }
  }
  r.seconds = since(t0);
  return r;
}

SuiteReport suite_lemmas(const LemmaBounds& b) {
  SuiteReport r;
  r.name = "lemmas";
  auto t0 = Clock::now();
  if (b.interval_literal) r.lemmas.push_back(verify_interval_lemma(b.interval_n));
  r.lemmas.push_back(verify_interval_lemma(b.interval_n, true));
  r.lemmas.push_back(verify_balls_lemma(b.balls_n, b.balls_m));
  r.lemmas.push_back(verify_colored_tree_lemma(b.tree_vertices, b.tree_colors));
  for (const auto& l : r.lemmas) {
    r.checked += l.search_space;
    for (const auto& c : l.counterexamples) r.fail(l.lemma + ": " + c);
  }
  r.seconds = since(t0);
  return r;
}

SuiteReport suite_cover(const std::vector<CoverBlueprint>& blueprints, int trials, std::uint64_t seed) {
  SuiteReport r;
  r.name = "cover";
  auto t0 = Clock::now();
  for (int i = 0; i < static_cast<int>(blueprints.size()); ++i)
    for (int trial = 0; trial < trials; ++trial) {
      const auto& b0 = blueprints[i];
      std::string where = "blueprint " + b0.name + " metric " + std::to_string(trial);
      ++r.checked;
      try {
        auto rng = instance_rng(seed, 0, i, trial);
        auto b = trial ? with_base_metric(b0, random_surface(b0.base.skeleton, rng)) : b0;
        auto pb = pullback(b);
        auto v = certify_cover(pb.surface, pb.map);
        for (const auto& c : v.checks)
          if (!c.ok) r.fail(where + ": pullback fails " + c.name + (c.details.empty() ? "" : ": " + c.details[0]));
        if (area(pb.surface) != b.degree * area(b.base)) r.fail(where + ": area is not degree times base area");
        if (v.graph.residual != 0) r.fail(where + ": Riemann-Hurwitz residual " + std::to_string(v.graph.residual));
        auto q = quotient(pb.surface, pb.cylinders, pb.saddles);
        if (!q.verdict.ok) r.fail(where + ": quotient map does not certify");
        if (q.map.degree != b.degree) r.fail(where + ": quotient degree " + std::to_string(q.map.degree));
        if (!isomorphic(q.map.base, b.base)) r.fail(where + ": quotient is not the base");
        if (!q.stratum_law) r.fail(where + ": base stratum " + q.base_stratum + " breaks the half-edge law");
        auto src = stratum_of(pb.surface.skeleton), bs = stratum_of(b.base.skeleton);
        if (src.zeros == 1 && bs.zeros == 1 && (2 * src.genus - 1) % (2 * bs.genus - 1) != 0)
          r.fail(where + ": 2r-1 does not divide 2g-1");
      } catch (const Error& e) {
        r.fail(where + ": " + e.what());
      }
    }
  r.seconds = since(t0);
  return r;
}

SuiteReport suite_proportion(const std::vector<CoverBlueprint>& blueprints, int trials, std::uint64_t seed) {
  SuiteReport r;
  r.name = "proportion";
  auto t0 = Clock::now();
  for (int i = 0; i < static_cast<int>(blueprints.size()); ++i)
    for (int trial = 0; trial < trials; ++trial) {
      const auto& b0 = blueprints[i];
      std::string where = "blueprint " + b0.name + " metric " + std::to_string(trial);
      try {
        auto rng = instance_rng(seed, 1, i, trial);
        auto b = trial ? with_base_metric(b0, random_surface(b0.base.skeleton, rng)) : b0;
        auto pb = pullback(b);
        auto ds = vertical_decomposition(pb.surface);
        auto db = vertical_decomposition(b.base);
        auto jb = vertical_involution(b.base.raw, db);
        std::set<int> seen;
        for (int c = 0; c < static_cast<int>(db.cylinders.size()); ++c) {
          if (seen.count(c)) continue;
          std::vector<int> orbit{c};
          if (jb[c] != c) orbit.push_back(jb[c]);
          seen.insert(orbit.begin(), orbit.end());
          auto up = pullback_vertical_set(pb.surface, pb.map, ds, db, orbit);
          for (const auto& v : b.base.skeleton.vertices) {
            Q base = cylinder_proportion(b.base.raw, db, orbit, v.id);
            std::set<Q> seen_here;
            for (const auto& f : b.fibers)
              if (f.base == v.id) {
                ++r.checked;
                Q p = cylinder_proportion(pb.surface.raw, ds, up, f.id);
                seen_here.insert(p);
                if (p != base)
                  r.fail(where + ": fibre " + std::to_string(f.id) + " proportion " + to_string(p) + " vs base " +
                         to_string(base));
              }
            if (seen_here.size() > 1) r.fail(where + ": fibres over " + std::to_string(v.id) + " disagree");
          }
        }
      } catch (const Error& e) {
        r.fail(where + ": " + e.what());
      }
    }
  r.seconds = since(t0);
  return r;
}

SuiteReport suite_eta(int ports_max) {
  SuiteReport r;
  r.name = "eta";
  auto t0 = Clock::now();
  for (int n = 1; n <= ports_max; ++n) {
    auto trees = enumerate(n);
    for (int i = 0; i < static_cast<int>(trees.size()); ++i) {
      const auto& t = trees[i];
      const std::string where = "skeleton " + canonical_form(t).code;
      auto rng = instance_rng(0, n, i, 0);
      auto s = random_surface(t, rng);
      ++r.checked;
      FormalCochain eta;
      try {
        eta = relative_deformation(s);
      } catch (const Error&) {
        if (!has_half_edge(t)) r.fail(where + ": no relative deformation on a tree without half-edges");
        continue;
      }
      if (has_half_edge(t)) {
        r.fail(where + ": relative deformation produced despite half-edges");
        continue;
      }
      // bipartition by breadth-first colouring, independent of tree_distance
      TreeIndex ix(t);
      std::vector<int> colour(t.vertices.size(), -1);
      colour[0] = 0;
      std::vector<int> queue{0};
      for (size_t q = 0; q < queue.size(); ++q)
        for (int w : ix.adj[queue[q]])
          if (colour[w] < 0) {
            colour[w] = 1 - colour[queue[q]];
            queue.push_back(w);
          }
      Q first = eta.at(t.vertices[0].id);
      for (size_t v = 0; v < t.vertices.size(); ++v) {
        Q c = eta.at(t.vertices[v].id);
        if (c * c != 1 || c * first != (colour[v] == 0 ? 1 : -1)) r.fail(where + ": sign pattern at vertex " + std::to_string(t.vertices[v].id));
      }
      for (int p : full_edge_ports(t)) {
        auto sp = standard_position(s, p);
        Q value = 0;
        for (auto& [c, w] : sp.cylinder.crossings) value += eta.at(c) * w / sp.cylinder.width;
        if (value != 0) r.fail(where + ": value " + to_string(value) + " on the crossing class at port " + std::to_string(p));
      }
    }
  }
  r.seconds = since(t0);
  return r;
}

}  // namespace hs
