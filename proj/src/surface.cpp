#include "hypsurf/surface.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <set>

namespace hs {

RawIndex::RawIndex(const RawSurface& s) : surf(&s) {
  for (int i = 0; i < static_cast<int>(s.cylinders.size()); ++i) {
    const auto& c = s.cylinders[i];
    if (!cyl_index.emplace(c.id, i).second) throw Error("duplicate cylinder id " + std::to_string(c.id));
    for (int j = 0; j < static_cast<int>(c.bottom.size()); ++j)
      if (!bottom_at.emplace(c.bottom[j].id, std::make_pair(i, j)).second)
        throw Error("duplicate bottom segment " + std::to_string(c.bottom[j].id));
    for (int j = 0; j < static_cast<int>(c.top.size()); ++j)
      if (!top_at.emplace(c.top[j].id, std::make_pair(i, j)).second)
        throw Error("duplicate top segment " + std::to_string(c.top[j].id));
  }
  for (int g = 0; g < static_cast<int>(s.glue.size()); ++g) {
    const auto& e = s.glue[g];
    if (!top_at.count(e.top) || !bottom_at.count(e.bottom))
      throw Error("glue entry " + std::to_string(g) + " names an unknown segment");
    if (!glue_of_top.emplace(e.top, g).second)
      throw Error("top segment " + std::to_string(e.top) + " glued twice");
    if (!glue_of_bottom.emplace(e.bottom, g).second)
      throw Error("bottom segment " + std::to_string(e.bottom) + " glued twice");
  }
  if (glue_of_top.size() != top_at.size() || glue_of_bottom.size() != bottom_at.size())
    throw Error("gluing table leaves a boundary segment free");
}

const Segment& RawIndex::bottom_seg(int id) const {
  auto [c, j] = bottom_at.at(id);
  return surf->cylinders[c].bottom[j];
}

const Segment& RawIndex::top_seg(int id) const {
  auto [c, j] = top_at.at(id);
  return surf->cylinders[c].top[j];
}

Surface build(const HalfTree& skeleton, const std::map<int, Q>& lengths,
              const std::map<int, Q>& heights, const std::map<int, Q>& twists) {
  auto d = validate(skeleton);
  if (!d.ok) throw Error("invalid skeleton: " + d.message);
  TreeIndex ix(skeleton);
  Surface s;
  s.skeleton = skeleton;
  for (auto& [p, l] : lengths)
    if (!ix.port_vertex.count(p)) throw Error("length given for unknown port " + std::to_string(p));
  for (auto& [p, v] : ix.port_vertex) {
    auto it = lengths.find(p);
    if (it == lengths.end()) throw Error("missing length for port " + std::to_string(p));
    if (it->second <= 0) throw Error("non-positive length on port " + std::to_string(p));
    s.length[p] = it->second;
  }
  for (auto [a, b] : skeleton.pairs)
    if (s.length[a] != s.length[b])
      throw Error("length mismatch on edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
  for (const auto& v : skeleton.vertices) {
    auto h = heights.find(v.id);
    if (h == heights.end()) throw Error("missing height for vertex " + std::to_string(v.id));
    if (h->second <= 0) throw Error("non-positive height on vertex " + std::to_string(v.id));
    s.height[v.id] = h->second;
    auto t = twists.find(v.id);
    Q tw = t == twists.end() ? Q(0) : t->second;
    RawCylinder c;
    c.id = v.id;
    c.height = h->second;
    Q a = 0;
    for (int p : v.ports) {
      c.bottom.push_back({p, a, s.length[p]});
      a += s.length[p];
    }
    c.circumference = a;
    c.twist = mod_pos(tw, a);
    s.twist[v.id] = c.twist;
    Q prefix = 0;
    for (int p : v.ports) {
      prefix += s.length[p];
      c.top.push_back({p, a - prefix, s.length[p]});
    }
    std::sort(c.top.begin(), c.top.end(), [](const Segment& x, const Segment& y) { return x.start < y.start; });
    s.raw.cylinders.push_back(std::move(c));
  }
  for (auto& [p, m] : ix.mate) s.raw.glue.push_back({p, m});
  return s;
}

Surface build_unit(const HalfTree& skeleton) {
  std::map<int, Q> l, h, t;
  for (const auto& v : skeleton.vertices) {
    for (int p : v.ports) l[p] = 1;
    h[v.id] = 1;
    t[v.id] = 0;
  }
  return build(skeleton, l, h, t);
}

Surface random_surface(const HalfTree& skeleton, std::mt19937_64& rng) {
  TreeIndex ix(skeleton);
  std::uniform_int_distribution<int> num(1, 7), den(1, 5);
  std::map<int, Q> l, h, t;
  for (auto& [p, m] : ix.mate) {
    if (p > m) continue;
    Q q(num(rng), den(rng));
    q.canonicalize();
    l[p] = l[m] = q;
  }
  for (const auto& v : skeleton.vertices) {
    Q q(num(rng), den(rng));
    q.canonicalize();
    h[v.id] = q;
    Q c = 0;
    for (int p : v.ports) c += l[p];
    int d = den(rng) + 1;
    Q frac(std::uniform_int_distribution<int>(0, d - 1)(rng), d);
    frac.canonicalize();
    t[v.id] = c * frac;
  }
  return build(skeleton, l, h, t);
}

Q circumference(const Surface& s, int vertex_id) {
  for (const auto& c : s.raw.cylinders)
    if (c.id == vertex_id) return c.circumference;
  throw Error("unknown vertex " + std::to_string(vertex_id));
}

Q area(const RawSurface& s) {
  Q a = 0;
  for (const auto& c : s.cylinders) a += c.circumference * c.height;
  return a;
}

Q area(const Surface& s) { return area(s.raw); }

std::vector<ZeroClass> zero_classes(const RawSurface& s) {
  RawIndex ix(s);
  const int ns = 2 * static_cast<int>(s.glue.size());
  std::vector<int> parent(ns);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<std::pair<int, int>> junctions;
  for (const auto& c : s.cylinders) {
    const int kb = static_cast<int>(c.bottom.size());
    for (int j = 0; j < kb; ++j) {
      int g1 = ix.glue_of_bottom.at(c.bottom[j].id);
      int g2 = ix.glue_of_bottom.at(c.bottom[(j + 1) % kb].id);
      junctions.push_back({2 * g1 + 1, 2 * g2});
    }
    const int kt = static_cast<int>(c.top.size());
    for (int j = 0; j < kt; ++j) {
      int g1 = ix.glue_of_top.at(c.top[j].id);
      int g2 = ix.glue_of_top.at(c.top[(j + 1) % kt].id);
      junctions.push_back({2 * g1 + 1, 2 * g2});
    }
  }
  for (auto [a, b] : junctions) parent[find(a)] = find(b);
  std::map<int, ZeroClass> by_root;
  std::map<int, int> corners;
  for (int x = 0; x < ns; ++x) by_root[find(x)].symbols.push_back(x);
  for (auto [a, b] : junctions) corners[find(a)]++;
  std::vector<ZeroClass> out;
  for (auto& [r, z] : by_root) {
    int k = corners[r];
    if (k % 2 != 0) throw Error("inconsistent gluing: odd corner count at a singular point");
    z.order = k / 2 - 1;
    out.push_back(std::move(z));
  }
  std::sort(out.begin(), out.end(),
            [](const ZeroClass& a, const ZeroClass& b) { return a.symbols[0] < b.symbols[0]; });
  return out;
}

SingularityProfile singularity_profile(const RawSurface& s, bool forget_marked) {
  SingularityProfile p;
  for (const auto& z : zero_classes(s))
    if (!(forget_marked && z.order == 0)) p.orders.push_back(z.order);
  std::sort(p.orders.rbegin(), p.orders.rend());
  return p;
}

SingularityProfile singularity_profile(const Surface& s, bool forget_marked) {
  return singularity_profile(s.raw, forget_marked);
}

InvolutionReport involution_check(const RawSurface& s) {
  InvolutionReport r;
  std::unique_ptr<RawIndex> ixp;
  try {
    ixp = std::make_unique<RawIndex>(s);
  } catch (const Error& e) {
    r.failure = e.what();
    return r;
  }
  const RawIndex& ix = *ixp;
  auto cyl_of_bottom = [&](int id) { return ix.bottom_at.at(id).first; };
  auto cyl_of_top = [&](int id) { return ix.top_at.at(id).first; };
  for (const auto& g : s.glue)
    if (ix.top_seg(g.top).length != ix.bottom_seg(g.bottom).length) {
      r.failure = "saddle (top " + std::to_string(g.top) + " -> bottom " + std::to_string(g.bottom) +
                  ") joins segments of different lengths";
      return r;
    }
  std::map<int, int> bottom_to_top;
  for (int a = 0; a < static_cast<int>(s.cylinders.size()); ++a) {
    const auto& cyl = s.cylinders[a];
    bool have_c = false;
    Q c;
    std::set<int> used;
    for (const auto& sig : cyl.top) {
      int beta = s.glue[ix.glue_of_top.at(sig.id)].bottom;
      int b = cyl_of_bottom(beta);
      int partner = beta;
      if (b != a) {
        std::vector<int> cands;
        for (const auto& bs : cyl.bottom)
          if (cyl_of_top(s.glue[ix.glue_of_bottom.at(bs.id)].top) == b) cands.push_back(bs.id);
        if (cands.size() != 1) {
          r.failure = "cylinders " + std::to_string(cyl.id) + " and " + std::to_string(s.cylinders[b].id) +
                      " share " + std::to_string(cands.size()) + " saddles from below (not a tree diagram)";
          return r;
        }
        partner = cands[0];
      }
      const Segment& ps = ix.bottom_seg(partner);
      if (ps.length != sig.length || !used.insert(partner).second) {
        r.failure = "saddle pair (top " + std::to_string(sig.id) + ", bottom " + std::to_string(partner) +
                    ") on cylinder " + std::to_string(cyl.id) + " is not exchanged by the rotation";
        return r;
      }
      Q cc = mod_pos(sig.start + sig.length + ps.start, cyl.circumference);
      if (!have_c) {
        c = cc;
        have_c = true;
      } else if (cc != c) {
        r.failure = "saddle pair (top " + std::to_string(sig.id) + ", bottom " + std::to_string(partner) +
                    ") on cylinder " + std::to_string(cyl.id) + " breaks the rotation by pi";
        return r;
      }
      r.top_to_bottom[sig.id] = partner;
      bottom_to_top[partner] = sig.id;
    }
    if (used.size() != cyl.bottom.size()) {
      r.failure = "cylinder " + std::to_string(cyl.id) + " has unmatched bottom saddles";
      return r;
    }
    r.centre[cyl.id] = c;
  }
  r.glue_image.assign(s.glue.size(), -1);
  for (int gi = 0; gi < static_cast<int>(s.glue.size()); ++gi) {
    const auto& g = s.glue[gi];
    int tau = bottom_to_top.at(g.bottom);
    int want_bottom = r.top_to_bottom.at(g.top);
    int h = ix.glue_of_top.at(tau);
    if (s.glue[h].bottom != want_bottom) {
      r.failure = "saddle pair (top " + std::to_string(g.top) + " -> bottom " + std::to_string(g.bottom) +
                  ") and (top " + std::to_string(tau) + " -> bottom " + std::to_string(s.glue[h].bottom) +
                  ") are not exchanged by the involution";
      return r;
    }
    r.glue_image[gi] = h;
  }
  for (const auto& cyl : s.cylinders) {
    Q a = r.centre[cyl.id] - cyl.twist;
    Q half = cyl.height / 2;
    r.fixed_points.push_back({"interior", cyl.id, mod_pos(a / 2, cyl.circumference), half});
    r.fixed_points.push_back({"interior", cyl.id, mod_pos(a / 2 + cyl.circumference / 2, cyl.circumference), half});
  }
  for (int gi = 0; gi < static_cast<int>(s.glue.size()); ++gi)
    if (r.glue_image[gi] == gi)
      r.fixed_points.push_back({"saddle", gi, ix.top_seg(s.glue[gi].top).length / 2, 0});
  auto zs = zero_classes(s);
  for (int zi = 0; zi < static_cast<int>(zs.size()); ++zi) {
    int sym = zs[zi].symbols[0];
    int g = sym / 2;
    int img = 2 * r.glue_image[g] + (sym % 2 == 0 ? 1 : 0);
    if (std::find(zs[zi].symbols.begin(), zs[zi].symbols.end(), img) != zs[zi].symbols.end())
      r.fixed_points.push_back({"zero", zi, 0, 0});
  }
  r.ok = true;
  return r;
}

InvolutionReport involution_check(const Surface& s) { return involution_check(s.raw); }

Point apply_involution(const RawSurface& s, const InvolutionReport& j, const Point& p) {
  for (const auto& c : s.cylinders)
    if (c.id == p.cyl) {
      Q a = j.centre.at(c.id) - c.twist;
      return {p.cyl, mod_pos(a - p.x, c.circumference), c.height - p.y};
    }
  throw Error("unknown cylinder");
}

WeierstrassReport weierstrass_points(const Surface& s) {
  auto j = involution_check(s);
  if (!j.ok) throw Error("involution is not an isometry: " + j.failure);
  WeierstrassReport w;
  w.points = j.fixed_points;
  auto st = stratum_of(s.skeleton);
  w.expected = 2 * st.genus + 2;
  for (const auto& p : w.points)
    if (p.kind == "zero") ++w.fixed_zeros;
  long long f = 0;
  for (const auto& v : s.skeleton.vertices) f += static_cast<long long>(v.ports.size()) + 2;
  f -= 2 * static_cast<long long>(s.skeleton.pairs.size());
  f += w.fixed_zeros;
  w.formula = f;
  w.residual = f - static_cast<long long>(w.points.size());
  return w;
}

HalfTree lindsey_tree(const RawSurface& s) {
  auto j = involution_check(s);
  if (!j.ok) throw Error("no consistent involution: " + j.failure);
  RawIndex ix(s);
  HalfTree t;
  for (const auto& c : s.cylinders) {
    Vertex v{c.id, {}};
    for (const auto& b : c.bottom) {
      v.ports.push_back(b.id);
      int g = ix.glue_of_bottom.at(b.id);
      int other = s.glue[j.glue_image[g]].bottom;
      if (other != b.id && b.id < other) t.pairs.push_back({b.id, other});
    }
    t.vertices.push_back(std::move(v));
  }
  std::sort(t.pairs.begin(), t.pairs.end());
  return t;
}

HalfTree lindsey_tree(const Surface& s) { return lindsey_tree(s.raw); }

Surface surface_from_raw(const RawSurface& s) {
  auto j = involution_check(s);
  if (!j.ok) throw Error("no consistent involution: " + j.failure);
  HalfTree t = lindsey_tree(s);
  std::map<int, Q> l, h, tw;
  for (const auto& c : s.cylinders) {
    for (const auto& b : c.bottom) l[b.id] = b.length;
    h[c.id] = c.height;
    tw[c.id] = c.twist - j.centre.at(c.id);
  }
  return build(t, l, h, tw);
}

Q twist_from_port(const Surface& s, int port) {
  for (const auto& c : s.raw.cylinders)
    for (const auto& b : c.bottom)
      if (b.id == port) return mod_pos(c.twist + 2 * b.start, c.circumference);
  throw Error("unknown port " + std::to_string(port));
}

bool isomorphic(const Surface& a, const Surface& b) {
  auto ca = canonical_form(a.skeleton);
  auto cb = canonical_form(b.skeleton);
  if (ca.code != cb.code) return false;
  auto invert = [](const std::map<int, int>& m) {
    std::map<int, int> r;
    for (auto& [k, v] : m) r[v] = k;
    return r;
  };
  const auto& pa = ca.port_maps[0];
  const auto& va = ca.vertex_maps[0];
  for (size_t k = 0; k < cb.port_maps.size(); ++k) {
    auto pb_inv = invert(cb.port_maps[k]);
    auto vb_inv = invert(cb.vertex_maps[k]);
    bool same = true;
    for (auto& [p, lab] : pa)
      if (a.length.at(p) != b.length.at(pb_inv.at(lab))) same = false;
    for (auto& [v, lab] : va)
      if (a.height.at(v) != b.height.at(vb_inv.at(lab))) same = false;
    // twists compared from the port carrying the first canonical label at each vertex
    for (const auto& cv : ca.tree.vertices) {
      int first = *std::min_element(cv.ports.begin(), cv.ports.end());
      int port_a = invert(pa).at(first);
      int port_b = pb_inv.at(first);
      if (twist_from_port(a, port_a) != twist_from_port(b, port_b)) same = false;
    }
    if (same) return true;
  }
  return false;
}

}  // namespace hs
