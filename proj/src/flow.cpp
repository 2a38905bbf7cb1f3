#include "hypsurf/flow.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace hs {

namespace {

constexpr long long kStepGuard = 50'000'000;

// Position of X on a tiling of the circle: segment index and offset into it, or -1 at a junction.
struct Hit {
  int seg = -1;
  Q offset;
};

Hit locate(const std::vector<Segment>& segs, const Q& X, const Q& C) {
  for (int i = 0; i < static_cast<int>(segs.size()); ++i) {
    Q u = mod_pos(X - segs[i].start, C);
    if (u == 0) return {};
    if (u < segs[i].length) return {i, u};
  }
  throw Error("boundary segments do not tile the circle");
}

struct Walker {
  const RawSurface& s;
  RawIndex ix;
  explicit Walker(const RawSurface& surf) : s(surf), ix(surf) {}

  const RawCylinder& cyl(int idx) const { return s.cylinders[idx]; }
  int index_of(int id) const {
    auto it = ix.cyl_index.find(id);
    if (it == ix.cyl_index.end()) throw Error("unknown cylinder " + std::to_string(id));
    return it->second;
  }

  // Upward through cylinder idx from bottom x. Returns false if the top point is a junction.
  bool up(int idx, const Q& x, Q& top, int& next, Q& nx) const {
    const auto& c = cyl(idx);
    top = mod_pos(x + c.twist, c.circumference);
    Hit h = locate(c.top, top, c.circumference);
    if (h.seg < 0) return false;
    int beta = s.glue[ix.glue_of_top.at(c.top[h.seg].id)].bottom;
    auto [ci, bj] = ix.bottom_at.at(beta);
    next = ci;
    nx = mod_pos(cyl(ci).bottom[bj].start + h.offset, cyl(ci).circumference);
    return true;
  }

  // Downward through cylinder idx from top X. Returns false if the bottom point is a junction.
  bool down(int idx, const Q& X, Q& bottom, int& next, Q& nX) const {
    const auto& c = cyl(idx);
    bottom = mod_pos(X - c.twist, c.circumference);
    Hit h = locate(c.bottom, bottom, c.circumference);
    if (h.seg < 0) return false;
    int sigma = s.glue[ix.glue_of_bottom.at(c.bottom[h.seg].id)].top;
    auto [ci, tj] = ix.top_at.at(sigma);
    next = ci;
    nX = mod_pos(cyl(ci).top[tj].start + h.offset, cyl(ci).circumference);
    return true;
  }
};

}  // namespace

Trajectory trace_vertical(const RawSurface& s, int cyl, const Q& x, int max_crossings) {
  Walker w(s);
  int idx = w.index_of(cyl);
  Q x0 = mod_pos(x, w.cyl(idx).circumference);
  if (locate(w.cyl(idx).bottom, x0, w.cyl(idx).circumference).seg < 0)
    throw Error("trajectory starts on a singular point");
  Trajectory t;
  t.start_cyl = cyl;
  t.start = x0;
  t.length = 0;
  int cur = idx;
  Q cx = x0;
  for (long long step = 0; step < kStepGuard; ++step) {
    Q top, nx;
    int next = -1;
    bool ok = w.up(cur, cx, top, next, nx);
    t.crossings.push_back({w.cyl(cur).id, cx, top});
    t.length += w.cyl(cur).height;
    if (!ok) return t;
    if (next == idx && nx == x0) {
      t.closed = true;
      return t;
    }
    if (max_crossings > 0 && static_cast<int>(t.crossings.size()) >= max_crossings) return t;
    cur = next;
    cx = nx;
  }
  throw Error("vertical trace did not terminate");
}

Trajectory trace_downward(const RawSurface& s, int cyl, const Q& X, int max_crossings) {
  Walker w(s);
  int idx = w.index_of(cyl);
  Q X0 = mod_pos(X, w.cyl(idx).circumference);
  if (locate(w.cyl(idx).top, X0, w.cyl(idx).circumference).seg < 0)
    throw Error("trajectory starts on a singular point");
  Trajectory t;
  t.start_cyl = cyl;
  t.start = X0;
  t.length = 0;
  int cur = idx;
  Q cX = X0;
  for (long long step = 0; step < kStepGuard; ++step) {
    Q bottom, nX;
    int next = -1;
    bool ok = w.down(cur, cX, bottom, next, nX);
    t.crossings.push_back({w.cyl(cur).id, cX, bottom});
    t.length += w.cyl(cur).height;
    if (!ok) return t;
    if (next == idx && nX == X0) {
      t.closed = true;
      return t;
    }
    if (max_crossings > 0 && static_cast<int>(t.crossings.size()) >= max_crossings) return t;
    cur = next;
    cX = nX;
  }
  throw Error("vertical trace did not terminate");
}

VerticalDecomposition vertical_decomposition(const RawSurface& s) {
  Walker w(s);
  const int m = static_cast<int>(s.cylinders.size());
  std::vector<std::set<Q>> bp(m);
  // Upward separatrices from every bottom junction; their bottom crossings split the flow.
  for (int i = 0; i < m; ++i)
    for (const auto& b : w.cyl(i).bottom) {
      bp[i].insert(mod_pos(b.start, w.cyl(i).circumference));
      int cur = i;
      Q cx = b.start;
      for (long long step = 0;; ++step) {
        if (step > kStepGuard) throw Error("separatrix did not terminate");
        Q top, nx;
        int next = -1;
        if (!w.up(cur, cx, top, next, nx)) break;
        bp[next].insert(nx);
        cur = next;
        cx = nx;
      }
    }
  VerticalDecomposition d;
  struct Piece {
    int cyl;
    Q start, length;
  };
  std::vector<Piece> pieces;
  std::vector<std::vector<int>> by_cyl(m);
  for (int i = 0; i < m; ++i) {
    const Q& C = w.cyl(i).circumference;
    std::vector<Q> pts(bp[i].begin(), bp[i].end());
    d.breakpoints[w.cyl(i).id] = pts;
    d.circumference[w.cyl(i).id] = C;
    for (size_t k = 0; k < pts.size(); ++k) {
      Q len = (k + 1 < pts.size() ? pts[k + 1] : pts[0] + C) - pts[k];
      by_cyl[i].push_back(static_cast<int>(pieces.size()));
      pieces.push_back({i, pts[k], len});
    }
  }
  auto piece_at = [&](int ci, const Q& x) {
    const Q& C = w.cyl(ci).circumference;
    for (int p : by_cyl[ci]) {
      Q u = mod_pos(x - pieces[p].start, C);
      if (u > 0 && u < pieces[p].length) return p;
    }
    throw Error("vertical flow does not respect its breakpoints");
  };
  std::vector<int> succ(pieces.size());
  for (size_t p = 0; p < pieces.size(); ++p) {
    Q mid = pieces[p].start + pieces[p].length / 2;
    Q top, nx;
    int next = -1;
    if (!w.up(pieces[p].cyl, mid, top, next, nx)) throw Error("interval midpoint meets a singularity");
    succ[p] = piece_at(next, nx);
  }
  std::vector<char> seen(pieces.size(), 0);
  for (size_t p0 = 0; p0 < pieces.size(); ++p0) {
    if (seen[p0]) continue;
    VerticalCylinder v;
    v.width = pieces[p0].length;
    v.core = 0;
    for (size_t p = p0; !seen[p]; p = succ[p]) {
      seen[p] = 1;
      if (pieces[p].length != v.width) throw Error("vertical cylinder with uneven width");
      const auto& c = w.cyl(pieces[p].cyl);
      v.core += c.height;
      v.crossings[c.id] += v.width;
      v.intervals.push_back({c.id, pieces[p].start, pieces[p].length});
    }
    d.cylinders.push_back(std::move(v));
  }
  return d;
}

VerticalDecomposition vertical_decomposition(const Surface& s) { return vertical_decomposition(s.raw); }

VerticalCylinder vertical_cylinder_through(const RawSurface& s, int cyl, const Q& x) {
  Trajectory t = trace_vertical(s, cyl, x);
  if (!t.closed) throw Error("vertical leaf runs into a singularity");
  RawIndex ix(s);
  // Free room to the left and right of the leaf, over every crossing.
  std::optional<Q> left, right;
  auto room = [&](const std::vector<Segment>& segs, const Q& at, const Q& C) {
    for (const auto& g : segs) {
      Q r = mod_pos(g.start - at, C);
      Q l = mod_pos(at - g.start, C);
      if (!right || r < *right) right = r;
      if (!left || l < *left) left = l;
    }
  };
  for (const auto& c : t.crossings) {
    const auto& h = s.cylinders[ix.cyl_index.at(c.cyl)];
    room(h.bottom, c.entry, h.circumference);
    room(h.top, c.exit, h.circumference);
  }
  VerticalCylinder v;
  v.width = *left + *right;
  v.core = t.length;
  for (const auto& c : t.crossings) {
    const auto& h = s.cylinders[ix.cyl_index.at(c.cyl)];
    v.crossings[c.cyl] += v.width;
    v.intervals.push_back({c.cyl, mod_pos(c.entry - *left, h.circumference), v.width});
  }
  return v;
}

int vertical_cylinder_at(const VerticalDecomposition& d, int cyl, const Q& x) {
  auto C = d.circumference.find(cyl);
  if (C == d.circumference.end()) throw Error("unknown cylinder " + std::to_string(cyl));
  for (int v = 0; v < static_cast<int>(d.cylinders.size()); ++v)
    for (const auto& iv : d.cylinders[v].intervals)
      if (iv.cyl == cyl) {
        Q u = mod_pos(x - iv.start, C->second);
        if (u > 0 && u < iv.length) return v;
      }
  throw Error("point lies on a singular vertical leaf");
}

std::vector<int> vertical_involution(const RawSurface& s, const VerticalDecomposition& d) {
  auto j = involution_check(s);
  if (!j.ok) throw Error("no involution: " + j.failure);
  std::map<int, const RawCylinder*> by_id;
  for (const auto& c : s.cylinders) by_id[c.id] = &c;
  std::vector<int> img;
  for (const auto& v : d.cylinders) {
    const auto& iv = v.intervals.front();
    const RawCylinder& c = *by_id.at(iv.cyl);
    Q mid = iv.start + iv.length / 2;
    Q jx = mod_pos(j.centre.at(c.id) - c.twist - mid, c.circumference);
    img.push_back(vertical_cylinder_at(d, c.id, jx));
  }
  return img;
}

Q cylinder_proportion(const RawSurface& s, const VerticalDecomposition& d, const std::vector<int>& members,
                      int cyl) {
  const RawCylinder* c = nullptr;
  for (const auto& x : s.cylinders)
    if (x.id == cyl) c = &x;
  if (!c) throw Error("unknown cylinder " + std::to_string(cyl));
  if (d.circumference.count(cyl) == 0 || d.circumference.at(cyl) != c->circumference)
    throw Error("decomposition does not belong to this surface");
  std::set<int> uniq(members.begin(), members.end());
  Q total = 0;
  for (int v : uniq) {
    if (v < 0 || v >= static_cast<int>(d.cylinders.size())) throw Error("vertical cylinder not in decomposition");
    auto it = d.cylinders[v].crossings.find(cyl);
    if (it != d.cylinders[v].crossings.end()) total += it->second;
  }
  return total / c->circumference;
}

Surface shift_twists(const Surface& s, const std::map<int, Q>& delta) {
  std::map<int, Q> tw = s.twist;
  for (auto& [v, d] : delta) {
    if (!tw.count(v)) throw Error("unknown cylinder " + std::to_string(v));
    tw[v] += d;
  }
  return build(s.skeleton, s.length, s.height, tw);
}

StandardPosition standard_position(const Surface& s, int port, bool transverse) {
  TreeIndex tix(s.skeleton);
  if (!tix.port_vertex.count(port)) throw Error("unknown port " + std::to_string(port));
  if (tix.is_half(port)) throw Error("port " + std::to_string(port) + " is a half-edge; no adjacent cylinder");
  int mate = tix.mate.at(port);
  StandardPosition r;
  r.c = s.skeleton.vertices[tix.vertex_of(port)].id;
  r.d = s.skeleton.vertices[tix.vertex_of(mate)].id;
  if (r.c == r.d) throw Error("cylinders are not distinct");
  RawIndex rix(s.raw);
  auto target = [&](int p) {
    const Segment& b = rix.bottom_seg(p);
    const auto& c = s.raw.cylinders[rix.bottom_at.at(p).first];
    return mod_pos(-(2 * b.start + b.length), c.circumference);
  };
  Q Cc = circumference(s, r.c), Cd = circumference(s, r.d);
  Q tc = s.twist.at(r.c), td = s.twist.at(r.d);
  r.transverse = transverse;
  r.slope = 0;
  if (!transverse) {
    r.delta[r.c] = mod_pos(target(port) - tc, Cc);
    r.delta[r.d] = mod_pos(target(mate) - td, Cd);
  } else {
    Q run = mod_pos(target(port) - tc, Cc);
    r.slope = run / s.height.at(r.c);
    r.delta[r.c] = 0;
    r.delta[r.d] = mod_pos(target(mate) - td - r.slope * s.height.at(r.d), Cd);
  }
  r.adjusted = shift_twists(s, r.delta);
  Surface probe = r.adjusted;
  if (transverse && r.slope != 0) {
    std::map<int, Q> shear;
    for (auto& [v, h] : s.height) shear[v] = r.slope * h;
    probe = shift_twists(r.adjusted, shear);
  }
  const Segment& b = rix.bottom_seg(port);
  r.cylinder = vertical_cylinder_through(probe.raw, r.c, b.start + b.length / 2);
  return r;
}

}  // namespace hs
