#include "hypsurf/cover.hpp"

#include <algorithm>
#include <set>

namespace hs {

namespace {

const Segment& bottom_of(const Surface& s, int port) {
  for (const auto& c : s.raw.cylinders)
    for (const auto& b : c.bottom)
      if (b.id == port) return b;
  throw Error("unknown port " + std::to_string(port));
}

const RawCylinder& raw_cyl(const Surface& s, int id) {
  for (const auto& c : s.raw.cylinders)
    if (c.id == id) return c;
  throw Error("unknown cylinder " + std::to_string(id));
}

std::string str(int x) { return std::to_string(x); }

}  // namespace

const CoverCheck* CoverVerdict::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Pullback pullback(const CoverBlueprint& b) {
  const Surface& base = b.base;
  TreeIndex bix(base.skeleton);
  if (b.degree < 1) throw Error("degree must be positive");
  std::set<int> fiber_ids;
  std::map<int, int> wrap_sum;
  std::map<int, int> port_fiber;
  HalfTree sk;
  std::map<int, Q> len, hgt, tw;
  Pullback out;
  out.map.base = base;
  out.map.degree = b.degree;
  for (const auto& f : b.fibers) {
    if (!fiber_ids.insert(f.id).second) throw Error("duplicate fibre id " + str(f.id));
    if (!bix.vertex_index.count(f.base)) throw Error("fibre " + str(f.id) + " lies over unknown base vertex " + str(f.base));
    if (f.wrap < 1) throw Error("fibre " + str(f.id) + " has non-positive wrap");
    const auto& bports = base.skeleton.vertices[bix.vertex_index.at(f.base)].ports;
    const int k = static_cast<int>(bports.size());
    if (static_cast<int>(f.ports.size()) != f.wrap * k)
      throw Error("fibre " + str(f.id) + " has " + str(static_cast<int>(f.ports.size())) + " ports, expected wrap x " + str(k));
    std::vector<int> over;
    for (int p : f.ports) {
      auto it = b.lifts.find(p);
      if (it == b.lifts.end()) throw Error("fibre port " + str(p) + " has no lift");
      if (!port_fiber.emplace(p, f.id).second) throw Error("fibre port " + str(p) + " used twice");
      over.push_back(it->second.base_port);
    }
    auto r_it = std::find(bports.begin(), bports.end(), over[0]);
    if (r_it == bports.end()) throw Error("fibre " + str(f.id) + " port lifts leave its base vertex");
    const int r = static_cast<int>(r_it - bports.begin());
    for (int i = 0; i < static_cast<int>(over.size()); ++i)
      if (over[i] != bports[(i + r) % k])
        throw Error("order-incompatible port lifts on fibre " + str(f.id) + " at position " + str(i));
    wrap_sum[f.base] += f.wrap;
    sk.vertices.push_back({f.id, f.ports});
    for (int p : f.ports) len[p] = base.length.at(b.lifts.at(p).base_port);
    hgt[f.id] = base.height.at(f.base);
    const Q Cb = circumference(base, f.base);
    const Q o = bottom_of(base, bports[r]).start;
    Q want = mod_pos(base.twist.at(f.base) + 2 * o, Cb);
    if (f.twist) {
      if (mod_pos(*f.twist - want, Cb) != 0) throw Error("twist lift of fibre " + str(f.id) + " is not congruent to the base twist");
      want = *f.twist;
    }
    tw[f.id] = want;
    out.map.cylinder[f.id] = f.base;
    out.map.offset[f.id] = o;
    for (int p : f.ports) out.map.port[p] = b.lifts.at(p).base_port;
  }
  for (auto& [p, l] : b.lifts)
    if (!port_fiber.count(p)) throw Error("lift for port " + str(p) + " which no fibre carries");
  for (const auto& v : base.skeleton.vertices)
    if (wrap_sum[v.id] != b.degree)
      throw Error("inconsistent multiplicity sum over base vertex " + str(v.id) + ": " + str(wrap_sum[v.id]) +
                  " != degree " + str(b.degree));
  std::map<int, std::set<int>> sheets;
  for (auto& [p, l] : b.lifts)
    if (!sheets[l.base_port].insert(l.sheet).second)
      throw Error("sheet " + str(l.sheet) + " repeated over base port " + str(l.base_port));
  for (auto& [q, ss] : sheets)
    if (static_cast<int>(ss.size()) != b.degree || *ss.begin() != 0 || *ss.rbegin() != b.degree - 1)
      throw Error("sheets over base port " + str(q) + " are not 0.." + str(b.degree - 1));
  std::set<int> paired;
  for (auto [a, c] : b.pairs) {
    if (!port_fiber.count(a) || !port_fiber.count(c)) throw Error("pair names an unknown fibre port");
    if (a == c || !paired.insert(a).second || !paired.insert(c).second) throw Error("fibre port paired twice");
    int qa = b.lifts.at(a).base_port, qc = b.lifts.at(c).base_port;
    if (bix.mate.at(qa) != qc)
      throw Error("pair (" + str(a) + "," + str(c) + ") does not lie over a base edge");
  }
  for (auto& [p, f] : port_fiber)
    if (!paired.count(p) && !bix.is_half(b.lifts.at(p).base_port))
      throw Error("fibre port " + str(p) + " is unpaired over a full base edge");
  sk.pairs = b.pairs;
  auto d = validate(sk);
  if (!d.ok) throw Error("lifted skeleton is not a half-tree: " + d.message);
  out.surface = build(sk, len, hgt, tw);

  for (const auto& v : base.skeleton.vertices) {
    std::vector<int> cls;
    for (const auto& f : b.fibers)
      if (f.base == v.id) cls.push_back(f.id);
    out.cylinders.classes.push_back(cls);
  }
  TreeIndex fix(sk);
  std::map<int, std::vector<int>> by_base_edge;
  for (int e : edge_ids(sk)) by_base_edge[edge_id(bix, b.lifts.at(e).base_port)].push_back(e);
  for (auto& [be, es] : by_base_edge) out.saddles.classes.push_back(es);
  return out;
}

CoverVerdict certify_cover(const Surface& source, const CoverMap& map) {
  CoverVerdict v;
  const Surface& base = map.base;
  TreeIndex six(source.skeleton), bix(base.skeleton);
  const int d = map.degree;
  CoverCheck cyl{"local-isometry", true, {}}, deg{"degree", true, {}}, glue{"gluing", true, {}};
  CoverCheck ar{"area", true, {}}, gr{"graph-cover", true, {}}, br{"branching", true, {}}, inv{"involution", true, {}};

  std::map<int, int> wraps;
  std::map<int, int> preimages;
  for (const auto& sv : source.skeleton.vertices) {
    auto it = map.cylinder.find(sv.id);
    if (it == map.cylinder.end() || !bix.vertex_index.count(it->second)) {
      cyl.details.push_back("cylinder " + str(sv.id) + " has no base cylinder");
      continue;
    }
    int bv = it->second;
    const auto& bports = base.skeleton.vertices[bix.vertex_index.at(bv)].ports;
    const int k = static_cast<int>(bports.size()), K = static_cast<int>(sv.ports.size());
    if (K % k) {
      cyl.details.push_back("cylinder " + str(sv.id) + " port count is not a multiple of its base");
      continue;
    }
    wraps[sv.id] = K / k;
    if (source.height.at(sv.id) != base.height.at(bv)) cyl.details.push_back("cylinder " + str(sv.id) + " height differs");
    const Q Cb = circumference(base, bv);
    const Q o = map.offset.count(sv.id) ? map.offset.at(sv.id) : Q(0);
    for (int p : sv.ports) {
      auto pm = map.port.find(p);
      if (pm == map.port.end() || std::find(bports.begin(), bports.end(), pm->second) == bports.end()) {
        cyl.details.push_back("port " + str(p) + " does not map into base cylinder " + str(bv));
        continue;
      }
      preimages[pm->second]++;
      if (source.length.at(p) != base.length.at(pm->second))
        cyl.details.push_back("port " + str(p) + " length differs from base port " + str(pm->second));
      if (mod_pos(bottom_of(source, p).start + o - bottom_of(base, pm->second).start, Cb) != 0)
        cyl.details.push_back("port " + str(p) + " is not carried onto base port " + str(pm->second) + " by translation");
    }
    if (mod_pos(source.twist.at(sv.id) - base.twist.at(bv) - 2 * o, Cb) != 0)
      cyl.details.push_back("cylinder " + str(sv.id) + " twist does not descend to base cylinder " + str(bv));
  }
  std::map<int, int> wrap_sum;
  for (auto& [sv, w] : wraps) wrap_sum[map.cylinder.at(sv)] += w;
  for (const auto& bv : base.skeleton.vertices)
    if (wrap_sum[bv.id] != d)
      deg.details.push_back("base cylinder " + str(bv.id) + " covered " + str(wrap_sum[bv.id]) + " times, degree " + str(d));
  for (auto& [q, vtx] : bix.port_vertex)
    if (preimages[q] != d) deg.details.push_back("base port " + str(q) + " has " + str(preimages[q]) + " preimages");

  if (cyl.details.empty()) {
    for (auto& [p, m] : six.mate) {
      int bp = map.port.at(p), bm = map.port.at(m);
      if (bix.mate.at(bp) != bm)
        glue.details.push_back("saddle (" + str(p) + "," + str(m) + ") does not lie over a base saddle");
    }
  } else {
    glue.details.push_back("skipped: cylinder map invalid");
  }
  if (area(source) != d * area(base))
    ar.details.push_back("area " + to_string(area(source)) + " != " + str(d) + " x " + to_string(area(base)));

  GraphCoverDatum gd{source.skeleton, base.skeleton, map.cylinder, d, wraps};
  if (cyl.details.empty()) {
    v.graph = check_graph_cover(gd);
    if (!v.graph.ok || v.graph.residual != 0)
      for (const auto& e : v.graph.errors) gr.details.push_back(e);
    if (v.graph.residual != 0) gr.details.push_back("Riemann-Hurwitz residual " + std::to_string(v.graph.residual));
  } else {
    gr.details.push_back("skipped: cylinder map invalid");
  }

  if (cyl.details.empty() && glue.details.empty()) {
    RawIndex six_raw(source.raw), bix_raw(base.raw);
    // source glue index -> base glue index, through the top segment (named by its port)
    std::vector<int> gmap(source.raw.glue.size());
    for (size_t g = 0; g < source.raw.glue.size(); ++g)
      gmap[g] = bix_raw.glue_of_top.at(map.port.at(source.raw.glue[g].top));
    auto zs = zero_classes(source.raw), zb = zero_classes(base.raw);
    std::map<int, int> base_class_of;
    for (int i = 0; i < static_cast<int>(zb.size()); ++i)
      for (int sym : zb[i].symbols) base_class_of[sym] = i;
    std::vector<int> over(zb.size(), 0);
    for (int i = 0; i < static_cast<int>(zs.size()); ++i) {
      std::set<int> targets;
      for (int sym : zs[i].symbols) targets.insert(base_class_of.at(2 * gmap[sym / 2] + sym % 2));
      if (targets.size() != 1) {
        br.details.push_back("zero class " + str(i) + " maps to several base points");
        continue;
      }
      int t = *targets.begin();
      int num = zs[i].order + 1, den = zb[t].order + 1;
      if (num % den) {
        br.details.push_back("zero class " + str(i) + " cone angle is not a multiple of its image's");
        continue;
      }
      v.ramification.push_back({i, t, zs[i].order, zb[t].order, num / den});
      over[t] += num / den;
    }
    for (int t = 0; t < static_cast<int>(zb.size()); ++t)
      if (over[t] != d) br.details.push_back("base point " + str(t) + " has total local degree " + str(over[t]));

    auto js = involution_check(source.raw), jb = involution_check(base.raw);
    if (!js.ok || !jb.ok) {
      inv.details.push_back("involution missing on " + std::string(js.ok ? "base" : "source"));
    } else {
      for (const auto& sv : source.skeleton.vertices) {
        int bv = map.cylinder.at(sv.id);
        const auto& sc = raw_cyl(source, sv.id);
        const auto& bc = raw_cyl(base, bv);
        Q lhs = js.centre.at(sv.id) - sc.twist + 2 * map.offset.at(sv.id);
        Q rhs = jb.centre.at(bv) - bc.twist;
        if (mod_pos(lhs - rhs, bc.circumference) != 0)
          inv.details.push_back("rotation of cylinder " + str(sv.id) + " does not descend");
      }
      for (size_t g = 0; g < gmap.size(); ++g)
        if (gmap[js.glue_image[g]] != jb.glue_image[gmap[g]])
          inv.details.push_back("saddle " + str(static_cast<int>(g)) + ": involution does not commute with the cover");
      // fixed points go to fixed points
      std::set<std::tuple<int, Q, Q>> base_interior;
      std::set<int> base_saddles, base_zeros;
      for (const auto& fp : jb.fixed_points) {
        if (fp.kind == "interior") base_interior.insert({fp.where, fp.x, fp.y});
        if (fp.kind == "saddle") base_saddles.insert(fp.where);
        if (fp.kind == "zero") base_zeros.insert(fp.where);
      }
      std::map<int, int> zero_image;
      for (const auto& rm : v.ramification) zero_image[rm.source_zero] = rm.base_zero;
      for (const auto& fp : js.fixed_points) {
        bool hit = true;
        if (fp.kind == "interior") {
          int bv = map.cylinder.at(fp.where);
          Q x = mod_pos(fp.x + map.offset.at(fp.where), circumference(base, bv));
          hit = base_interior.count({bv, x, fp.y}) > 0;
        } else if (fp.kind == "saddle") {
          hit = base_saddles.count(gmap[fp.where]) > 0;
        } else if (zero_image.count(fp.where)) {
          hit = base_zeros.count(zero_image.at(fp.where)) > 0;
        }
        if (!hit) inv.details.push_back("Weierstrass point (" + fp.kind + " " + str(fp.where) + ") maps off the base fixed set");
      }
    }
  } else {
    br.details.push_back("skipped: cover map invalid");
    inv.details.push_back("skipped: cover map invalid");
  }
  for (auto* c : {&cyl, &deg, &glue, &ar, &gr, &br, &inv}) {
    c->ok = c->details.empty();
    v.checks.push_back(*c);
  }
  v.ok = std::all_of(v.checks.begin(), v.checks.end(), [](const CoverCheck& c) { return c.ok; });
  return v;
}

QuotientResult quotient(const Surface& s, const CylinderPartition& cp, const SaddlePartition& sp) {
  QuotientResult q;
  q.candidate = check_candidate(s, cp, sp);
  if (!q.candidate.ok) {
    std::string why;
    for (const auto& c : q.candidate.checks)
      if (!c.ok) {
        why = c.name + (c.details.empty() ? "" : ": " + c.details[0]);
        break;
      }
    throw Error("candidate check failed at " + why);
  }
  TreeIndex ix(s.skeleton);
  std::map<int, int> vclass, eclass;
  for (int k = 0; k < static_cast<int>(cp.classes.size()); ++k)
    for (int v : cp.classes[k]) vclass[v] = k;
  for (int k = 0; k < static_cast<int>(sp.classes.size()); ++k)
    for (int e : sp.classes[k]) eclass[e] = k;
  // cylinder classes met by each saddle class
  std::vector<std::set<int>> ends(sp.classes.size());
  for (int k = 0; k < static_cast<int>(sp.classes.size()); ++k) {
    std::set<std::set<int>> kinds;
    for (int e : sp.classes[k]) {
      int a = s.skeleton.vertices[ix.vertex_of(e)].id, b = s.skeleton.vertices[ix.vertex_of(ix.mate.at(e))].id;
      std::set<int> pair{vclass.at(a), vclass.at(b)};
      if (!ix.is_half(e) && pair.size() == 1)
        throw Error("saddle class " + str(k) + " joins two cylinders of one class");
      kinds.insert(ix.is_half(e) ? std::set<int>{vclass.at(a), -1} : pair);
    }
    if (kinds.size() != 1) throw Error("saddle class " + str(k) + " does not join a single pair of cylinder classes");
    ends[k] = *kinds.begin();
  }
  HalfTree base_tree;
  std::map<std::pair<int, int>, int> port_of;  // (cylinder class, saddle class) -> base port
  std::map<int, Q> bl, bh, bt;
  int next = 0;
  for (int k = 0; k < static_cast<int>(cp.classes.size()); ++k) {
    const auto& b = q.candidate.bases[k];
    Vertex v{k, {}};
    for (size_t i = 0; i < b.saddle_classes.size(); ++i) {
      port_of[{k, b.saddle_classes[i]}] = next;
      bl[next] = b.lengths[i];
      v.ports.push_back(next++);
    }
    bh[k] = b.height;
    bt[k] = b.twist;
    base_tree.vertices.push_back(v);
  }
  for (int k = 0; k < static_cast<int>(sp.classes.size()); ++k) {
    if (ends[k].count(-1)) {
      ++q.half_edge_classes;
      continue;
    }
    int a = *ends[k].begin(), b = *ends[k].rbegin();
    base_tree.pairs.push_back({port_of.at({a, k}), port_of.at({b, k})});
  }
  auto val = validate(base_tree);
  if (!val.ok) throw Error("quotient diagram is not a half-tree: " + val.message);
  q.map.base = build(base_tree, bl, bh, bt);
  for (const auto& v : s.skeleton.vertices) {
    int k = vclass.at(v.id);
    q.map.cylinder[v.id] = k;
    for (int p : v.ports) q.map.port[p] = port_of.at({k, eclass.at(edge_id(ix, p))});
    const auto& aligned = q.candidate.bases[k].aligned_ports.at(v.id);
    q.map.offset[v.id] = mod_pos(-bottom_of(s, aligned[0]).start, q.candidate.bases[k].circumference);
  }
  int d = 0;
  for (auto& [v, w] : q.candidate.bases[0].wrap) d += w;
  q.map.degree = d;
  q.verdict = certify_cover(s, q.map);
  auto st = stratum_of(base_tree);
  q.base_stratum = st.name;
  q.has_half_edge_class = q.half_edge_classes > 0;
  q.stratum_law = (st.zeros == 1) == q.has_half_edge_class;
  q.stratum_parity = (st.zeros == 1) == (q.half_edge_classes % 2 == 1);
  return q;
}

std::vector<int> pullback_vertical_set(const Surface& source, const CoverMap& map, const VerticalDecomposition& src,
                                       const VerticalDecomposition& base, const std::vector<int>& base_set) {
  std::set<int> want(base_set.begin(), base_set.end());
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(src.cylinders.size()); ++i) {
    const auto& iv = src.cylinders[i].intervals.front();
    int bv = map.cylinder.at(iv.cyl);
    Q x = mod_pos(iv.start + iv.length / 2 + map.offset.at(iv.cyl), circumference(map.base, bv));
    if (want.count(vertical_cylinder_at(base, bv, x))) out.push_back(i);
  }
  (void)source;
  return out;
}

CoverBlueprint with_base_metric(const CoverBlueprint& b, const Surface& base) {
  if (canonical_form(base.skeleton).code != canonical_form(b.base.skeleton).code || !(base.skeleton == b.base.skeleton))
    throw Error("replacement base has a different skeleton");
  CoverBlueprint r = b;
  r.base = base;
  for (auto& f : r.fibers) f.twist.reset();
  return r;
}

namespace {

HalfTree path3() { return HalfTree{{{0, {0}}, {1, {1, 2}}, {2, {3}}}, {{0, 1}, {2, 3}}}; }

Surface metric(const HalfTree& t, const std::map<int, Q>& l, const std::map<int, Q>& h, const std::map<int, Q>& tw) {
  return build(t, l, h, tw);
}

}  // namespace

std::vector<CoverBlueprint> cover_fixtures() {
  std::vector<CoverBlueprint> out;
  {
    CoverBlueprint b;
    b.name = "identity-path";
    b.base = metric(path3(), {{0, 1}, {1, 1}, {2, 2}, {3, 2}}, {{0, 1}, {1, 2}, {2, 1}}, {{1, Q(1)}});
    b.degree = 1;
    for (const auto& v : b.base.skeleton.vertices) {
      b.fibers.push_back({v.id, v.id, 1, v.ports, std::nullopt});
      for (int p : v.ports) b.lifts[p] = {p, 0};
    }
    b.pairs = b.base.skeleton.pairs;
    out.push_back(b);
  }
  {
    CoverBlueprint b;
    b.name = "wrap3-over-H2";
    HalfTree t{{{0, {0, 1, 2}}}, {}};
    b.base = metric(t, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1}}, {{0, Q(1)}});
    b.degree = 3;
    std::vector<int> ports;
    for (int i = 0; i < 9; ++i) {
      ports.push_back(i);
      b.lifts[i] = {i % 3, i / 3};
    }
    b.fibers.push_back({0, 0, 3, ports, std::nullopt});
    out.push_back(b);
  }
  {
    CoverBlueprint b;
    b.name = "star-over-path";
    b.base = metric(path3(), {{0, 1}, {1, 1}, {2, 2}, {3, 2}}, {{0, 2}, {1, 1}, {2, 3}}, {});
    b.degree = 2;
    b.fibers.push_back({1, 1, 2, {10, 11, 12, 13}, std::nullopt});
    b.fibers.push_back({0, 0, 1, {20}, std::nullopt});
    b.fibers.push_back({3, 0, 1, {21}, std::nullopt});
    b.fibers.push_back({2, 2, 1, {30}, std::nullopt});
    b.fibers.push_back({4, 2, 1, {31}, std::nullopt});
    b.lifts = {{10, {1, 0}}, {11, {2, 0}}, {12, {1, 1}}, {13, {2, 1}},
               {20, {0, 0}}, {21, {0, 1}}, {30, {3, 0}}, {31, {3, 1}}};
    b.pairs = {{10, 20}, {12, 21}, {11, 30}, {13, 31}};
    out.push_back(b);
  }
  {
    CoverBlueprint b;
    b.name = "double-over-torus";
    HalfTree t{{{0, {0}}, {1, {1}}}, {{0, 1}}};
    b.base = metric(t, {{0, 1}, {1, 1}}, {{0, 1}, {1, 2}}, {});
    b.degree = 2;
    b.fibers.push_back({1, 0, 2, {10, 11}, std::nullopt});
    b.fibers.push_back({0, 1, 1, {20}, std::nullopt});
    b.fibers.push_back({2, 1, 1, {21}, std::nullopt});
    b.lifts = {{10, {0, 0}}, {11, {0, 1}}, {20, {1, 0}}, {21, {1, 1}}};
    b.pairs = {{10, 20}, {11, 21}};
    out.push_back(b);
  }
  {
    CoverBlueprint b;
    b.name = "rel0-over-H2";
    HalfTree t{{{0, {0, 1}}, {1, {2}}}, {{0, 2}}};
    b.base = metric(t, {{0, 2}, {1, 1}, {2, 2}}, {{0, 1}, {1, 1}}, {{0, Q(1)}});
    b.degree = 2;
    b.fibers.push_back({0, 0, 2, {10, 11, 12, 13}, std::nullopt});
    b.fibers.push_back({1, 1, 1, {20}, std::nullopt});
    b.fibers.push_back({2, 1, 1, {21}, std::nullopt});
    b.lifts = {{10, {0, 0}}, {11, {1, 0}}, {12, {0, 1}}, {13, {1, 1}}, {20, {2, 0}}, {21, {2, 1}}};
    b.pairs = {{10, 20}, {12, 21}};
    out.push_back(b);
  }
  return out;
}

}  // namespace hs
