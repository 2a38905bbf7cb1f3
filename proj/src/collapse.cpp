#include "hypsurf/collapse.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "hypsurf/deform.hpp"
#include "hypsurf/flow.hpp"

namespace hs {

Certification certify_hyperelliptic(const RawSurface& s) {
  Certification c;
  auto j = involution_check(s);
  if (!j.ok) {
    c.message = j.failure;
    return c;
  }
  c.involution = true;
  HalfTree t;
  try {
    t = lindsey_tree(s);
  } catch (const Error& e) {
    c.message = e.what();
    return c;
  }
  auto d = validate(t);
  if (!d.ok) {
    c.message = "diagram is not a Lindsey half-tree: " + d.message;
    return c;
  }
  c.tree = true;
  auto st = stratum_of(t);
  std::vector<int> want = st.zeros == 1 ? std::vector<int>{2 * st.genus - 2}
                                        : std::vector<int>{st.genus - 1, st.genus - 1};
  auto prof = singularity_profile(s);
  if (prof.orders != want) {
    c.message = "singularity orders do not match " + st.name;
    return c;
  }
  c.stratum = st.name;
  c.ok = true;
  return c;
}

std::vector<RawSurface> connected_components(const RawSurface& s) {
  RawIndex ix(s);
  const int m = static_cast<int>(s.cylinders.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& g : s.glue) parent[find(ix.top_at.at(g.top).first)] = find(ix.bottom_at.at(g.bottom).first);
  std::map<int, int> comp_of_root;
  std::vector<RawSurface> out;
  for (int i = 0; i < m; ++i) {
    int r = find(i);
    if (!comp_of_root.count(r)) {
      comp_of_root[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[comp_of_root[r]].cylinders.push_back(s.cylinders[i]);
  }
  for (const auto& g : s.glue) out[comp_of_root[find(ix.top_at.at(g.top).first)]].glue.push_back(g);
  return out;
}

namespace {

Component make_component(RawSurface raw) {
  Component c;
  c.certification = certify_hyperelliptic(raw);
  if (c.certification.ok) c.surface = surface_from_raw(raw);
  c.raw = std::move(raw);
  return c;
}

}  // namespace

VerticalCollapseInput proportions_by_class(const std::vector<std::vector<int>>& classes, const std::vector<Q>& p) {
  if (classes.size() != p.size()) throw Error("one proportion per saddle class required");
  VerticalCollapseInput in;
  for (size_t k = 0; k < classes.size(); ++k)
    for (int e : classes[k]) in.proportion[e] = p[k];
  return in;
}

VerticalCollapseReport vertical_collapse(const Surface& s, const VerticalCollapseInput& in) {
  TreeIndex ix(s.skeleton);
  auto edges = edge_ids(s.skeleton);
  std::set<int> valid(edges.begin(), edges.end());
  std::map<int, Q> prop;
  for (auto& [e, p] : in.proportion) {
    if (!valid.count(e)) throw Error("unknown edge id " + std::to_string(e));
    if (p < 0 || p > 1) throw Error("shrink proportion outside [0,1] on edge " + std::to_string(e));
    if (p == 1 && ix.is_half(e)) throw Error("full collapse requested on half-edge " + std::to_string(e));
    prop[e] = p;
  }
  auto p_of = [&](int port) {
    auto it = prop.find(edge_id(ix, port));
    return it == prop.end() ? Q(0) : it->second;
  };
  VerticalCollapseReport rep;
  std::set<int> dead;
  for (int e : edges)
    if (p_of(e) == 1) {
      dead.insert(e);
      rep.deleted_edges.push_back(e);
    }
  std::map<int, Q> nl;
  Q predicted = 0;
  std::set<int> vanished;
  for (const auto& v : s.skeleton.vertices) {
    bool alive = false;
    for (int p : v.ports) {
      nl[p] = (1 - p_of(p)) * s.length.at(p);
      predicted += s.height.at(v.id) * p_of(p) * s.length.at(p);
      alive |= nl[p] > 0;
    }
    if (!alive) vanished.insert(v.id);
  }
  if (vanished.size() == s.skeleton.vertices.size()) throw Error("every cylinder collapses to zero circumference");
  rep.predicted_collapsed_area = predicted;
  std::map<int, Q> tw;
  for (const auto& v : s.skeleton.vertices)
    if (!vanished.count(v.id)) tw[v.id] = rescaled_twist(s, v.id, nl);

  // skeleton minus dead edges, split into components
  const int nv = static_cast<int>(s.skeleton.vertices.size());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::pair<int, int>> kept;
  for (auto [a, b] : s.skeleton.pairs) {
    if (dead.count(std::min(a, b))) continue;
    kept.push_back({a, b});
    parent[find(ix.vertex_of(a))] = find(ix.vertex_of(b));
  }
  std::map<int, int> comp;
  std::vector<HalfTree> trees;
  for (int i = 0; i < nv; ++i) {
    int r = find(i);
    if (!comp.count(r)) {
      comp[r] = static_cast<int>(trees.size());
      trees.emplace_back();
    }
    Vertex v{s.skeleton.vertices[i].id, {}};
    for (int p : s.skeleton.vertices[i].ports)
      if (!dead.count(edge_id(ix, p))) v.ports.push_back(p);
    trees[comp[r]].vertices.push_back(v);
  }
  for (auto [a, b] : kept) trees[comp[find(ix.vertex_of(a))]].pairs.push_back({a, b});
  Q total = 0;
  for (const auto& t : trees) {
    // an isolated cylinder whose every saddle shrank away carries no area in the limit
    if (t.vertices.size() == 1 && vanished.count(t.vertices[0].id)) {
      rep.result.notices.push_back("cylinder " + std::to_string(t.vertices[0].id) +
                                   " collapses to zero area; component dropped");
      continue;
    }
    rep.predicted_skeletons.push_back(t);
    std::map<int, Q> l, h, tt;
    for (const auto& v : t.vertices) {
      for (int p : v.ports) l[p] = nl[p];
      h[v.id] = s.height.at(v.id);
      tt[v.id] = tw[v.id];
    }
    auto part = build(t, l, h, tt);
    total += area(part);
    rep.result.components.push_back(make_component(part.raw));
  }
  rep.result.collapsed_area = area(s) - total;
  return rep;
}

HorizontalCollapseReport horizontal_collapse(const Surface& s, const HorizontalCollapseInput& in) {
  const RawSurface& raw = s.raw;
  RawIndex ix(raw);
  std::set<int> del(in.cylinders.begin(), in.cylinders.end());
  if (del.empty()) throw Error("nothing to delete");
  for (int v : del)
    if (!ix.cyl_index.count(v)) throw Error("unknown cylinder " + std::to_string(v));
  if (del.size() == raw.cylinders.size()) throw Error("deletion set covers the whole surface");
  auto cyl_id_of_top = [&](int seg) { return raw.cylinders[ix.top_at.at(seg).first].id; };
  auto cyl_id_of_bottom = [&](int seg) { return raw.cylinders[ix.bottom_at.at(seg).first].id; };
  for (const auto& g : raw.glue) {
    int a = cyl_id_of_top(g.top), b = cyl_id_of_bottom(g.bottom);
    if (a == b && del.count(a)) throw Error("deletion set is self-adjacent: cylinder " + std::to_string(a) + " meets itself");
    if (a != b && del.count(a) && del.count(b))
      throw Error("deletion set is self-adjacent: cylinders " + std::to_string(a) + " and " + std::to_string(b));
  }
  std::map<int, int> order_of_symbol;
  for (const auto& z : zero_classes(raw))
    for (int sym : z.symbols) order_of_symbol[sym] = z.order;

  HorizontalCollapseReport rep;
  rep.deleted.assign(del.begin(), del.end());
  int next_id = 0;
  for (const auto& c : raw.cylinders) {
    for (const auto& b : c.bottom) next_id = std::max(next_id, b.id + 1);
    for (const auto& t : c.top) next_id = std::max(next_id, t.id + 1);
  }
  struct Cut {
    Q offset, length;
    int id;
  };
  std::map<int, std::vector<Cut>> split_top, split_bottom;  // source segment -> pieces
  std::vector<Glue> new_glue;

  for (int vid : del) {
    const RawCylinder& v = raw.cylinders[ix.cyl_index.at(vid)];
    const Q& C = v.circumference;
    std::set<Q> top_junctions, shifted;
    for (const auto& t : v.top) top_junctions.insert(mod_pos(t.start, C));
    for (const auto& b : v.bottom) shifted.insert(mod_pos(b.start + v.twist, C));
    bool vertical_saddle = false;
    for (const auto& x : shifted) vertical_saddle |= top_junctions.count(x) > 0;
    if (!vertical_saddle)
      throw Error("cylinder " + std::to_string(vid) + " contains no vertical saddle connection; shear it first");
    std::set<Q> cuts = top_junctions;
    cuts.insert(shifted.begin(), shifted.end());
    std::vector<Q> pts(cuts.begin(), cuts.end());
    RegluingGraph rg;
    rg.deleted = vid;
    std::map<int, int> nb_index;
    for (const auto& b : v.bottom) {
      int w = cyl_id_of_top(raw.glue[ix.glue_of_bottom.at(b.id)].top);
      if (nb_index.emplace(w, static_cast<int>(rg.neighbours.size())).second) rg.neighbours.push_back(w);
    }
    std::map<std::pair<int, int>, int> directed;
    for (size_t k = 0; k < pts.size(); ++k) {
      Q p = pts[k];
      Q len = (k + 1 < pts.size() ? pts[k + 1] : pts[0] + C) - p;
      Q mid = p + len / 2;
      const Segment* beta = nullptr;
      const Segment* tau = nullptr;
      Q off_b, off_t;
      for (const auto& b : v.bottom) {
        Q u = mod_pos(mid - v.twist - b.start, C);
        if (u < b.length) {
          beta = &b;
          off_b = u - len / 2;
        }
      }
      for (const auto& t : v.top) {
        Q u = mod_pos(mid - t.start, C);
        if (u < t.length) {
          tau = &t;
          off_t = u - len / 2;
        }
      }
      if (!beta || !tau) throw Error("boundary of cylinder " + std::to_string(vid) + " does not tile");
      int gb = ix.glue_of_bottom.at(beta->id), gt = ix.glue_of_top.at(tau->id);
      int sigma = raw.glue[gb].top;          // lower neighbour's top segment
      int beta_up = raw.glue[gt].bottom;     // upper neighbour's bottom segment
      VerticalGlue vg;
      vg.deleted = vid;
      vg.lower_cyl = cyl_id_of_top(sigma);
      vg.upper_cyl = cyl_id_of_bottom(beta_up);
      vg.top_source = sigma;
      vg.bottom_source = beta_up;
      vg.top_offset = off_b;
      vg.bottom_offset = off_t;
      vg.length = len;
      vg.top_segment = next_id++;
      vg.bottom_segment = next_id++;
      split_top[sigma].push_back({off_b, len, vg.top_segment});
      split_bottom[beta_up].push_back({off_t, len, vg.bottom_segment});
      new_glue.push_back({vg.top_segment, vg.bottom_segment});
      if (off_t == 0 && off_b != 0) {
        int ord = order_of_symbol.at(2 * gt);
        rep.marks.push_back({vg.lower_cyl, "top", sigma, off_b, ord > 0 ? "zero" : "marked", ord});
      }
      if (off_b == 0 && off_t != 0) {
        int ord = order_of_symbol.at(2 * gb);
        rep.marks.push_back({vg.upper_cyl, "bottom", beta_up, off_t, ord > 0 ? "zero" : "marked", ord});
      }
      if (vg.lower_cyl == vg.upper_cyl)
        ++rg.self_gluings;
      else
        directed[{vg.lower_cyl, vg.upper_cyl}]++;
      rep.glues.push_back(vg);
    }
    bool balanced = true;
    for (auto& [key, cnt] : directed) {
      auto rev = directed.find({key.second, key.first});
      if (rev == directed.end() || rev->second != cnt) balanced = false;
      if (key.first < key.second)
        for (int i = 0; i < cnt; ++i) rg.edges.push_back({nb_index.at(key.first), nb_index.at(key.second)});
    }
    rg.forest = balanced && is_forest(static_cast<int>(rg.neighbours.size()), rg.edges);
    rep.regluing.push_back(rg);
  }

  RawSurface out;
  for (const auto& c : raw.cylinders) {
    if (del.count(c.id)) continue;
    RawCylinder n = c;
    n.top.clear();
    n.bottom.clear();
    for (const auto& t : c.top) {
      auto it = split_top.find(t.id);
      if (it == split_top.end()) {
        n.top.push_back(t);
        continue;
      }
      for (const auto& cut : it->second) n.top.push_back({cut.id, mod_pos(t.start + cut.offset, c.circumference), cut.length});
    }
    for (const auto& b : c.bottom) {
      auto it = split_bottom.find(b.id);
      if (it == split_bottom.end()) {
        n.bottom.push_back(b);
        continue;
      }
      for (const auto& cut : it->second)
        n.bottom.push_back({cut.id, mod_pos(b.start + cut.offset, c.circumference), cut.length});
    }
    auto by_start = [](const Segment& a, const Segment& b) { return a.start < b.start; };
    std::sort(n.top.begin(), n.top.end(), by_start);
    std::sort(n.bottom.begin(), n.bottom.end(), by_start);
    out.cylinders.push_back(std::move(n));
  }
  for (const auto& g : raw.glue)
    if (!split_top.count(g.top) && !split_bottom.count(g.bottom) && !del.count(cyl_id_of_top(g.top)))
      out.glue.push_back(g);
  out.glue.insert(out.glue.end(), new_glue.begin(), new_glue.end());
  Q total = 0;
  for (auto& part : connected_components(out)) {
    total += area(part);
    rep.result.components.push_back(make_component(std::move(part)));
  }
  rep.result.collapsed_area = area(raw) - total;
  return rep;
}

Surface align_junctions(const Surface& s, int v, int k, int j) {
  for (const auto& c : s.raw.cylinders)
    if (c.id == v) {
      if (k < 0 || j < 0 || k >= static_cast<int>(c.bottom.size()) || j >= static_cast<int>(c.top.size()))
        throw Error("junction index out of range on cylinder " + std::to_string(v));
      Q t = mod_pos(c.top[j].start - c.bottom[k].start, c.circumference);
      return shift_twists(s, {{v, t - c.twist}});
    }
  throw Error("unknown cylinder " + std::to_string(v));
}

}  // namespace hs
