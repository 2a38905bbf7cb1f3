#include "hypsurf/deform.hpp"

#include <algorithm>
#include <set>

namespace hs {

Q FormalCochain::at(int cyl) const {
  auto it = coeff.find(cyl);
  return it == coeff.end() ? Q(0) : it->second;
}

bool FormalCochain::operator==(const FormalCochain& o) const {
  std::set<int> keys;
  for (auto& [k, v] : coeff) keys.insert(k);
  for (auto& [k, v] : o.coeff) keys.insert(k);
  for (int k : keys)
    if (at(k) != o.at(k)) return false;
  return true;
}

FormalCochain operator+(const FormalCochain& a, const FormalCochain& b) {
  FormalCochain r = a;
  for (auto& [k, v] : b.coeff) r.coeff[k] += v;
  return r;
}

Q evaluate_walk(const FormalCochain& c, const std::vector<int>& walk) {
  Q sum = 0;
  for (int v : walk) sum += c.at(v);
  return sum;
}

namespace {

void require_vertices(const Surface& s, const std::vector<int>& cls) {
  for (int v : cls)
    if (!s.height.count(v)) throw Error("class names unknown cylinder " + std::to_string(v));
}

}  // namespace

Surface shear_class(const Surface& s, const std::vector<int>& cls, const Q& t) {
  require_vertices(s, cls);
  std::map<int, Q> tw = s.twist;
  for (int v : std::set<int>(cls.begin(), cls.end())) tw[v] += t * s.height.at(v);
  return build(s.skeleton, s.length, s.height, tw);
}

Surface dilate_class(const Surface& s, const std::vector<int>& cls, const Q& factor) {
  if (factor <= 0) throw Error("dilation factor must be positive");
  require_vertices(s, cls);
  std::map<int, Q> h = s.height;
  for (int v : std::set<int>(cls.begin(), cls.end())) h[v] *= factor;
  return build(s.skeleton, s.length, h, s.twist);
}

Q rescaled_twist(const Surface& s, int vertex, const std::map<int, Q>& new_lengths) {
  TreeIndex ix(s.skeleton);
  const auto& v = s.skeleton.vertices.at(ix.vertex_index.at(vertex));
  Q C = 0, C2 = 0;
  for (int p : v.ports) {
    C += s.length.at(p);
    C2 += new_lengths.at(p);
  }
  const Q t = mod_pos(s.twist.at(vertex), C);
  // top of port i spans [C - a_i, C - a_{i-1})
  Q a = 0, a2 = 0;
  for (int p : v.ports) {
    Q l = s.length.at(p), l2 = new_lengths.at(p);
    a += l;
    a2 += l2;
    Q lo = C - a;
    if (t >= lo && t < lo + l) {
      Q u = t - lo;
      return C2 == 0 ? Q(0) : mod_pos(C2 - a2 + u * l2 / l, C2);
    }
  }
  throw Error("twist outside the top boundary");
}

Surface dilate_saddle_class(const Surface& s, const std::vector<int>& edges, const Q& factor) {
  if (factor <= 0) throw Error("dilation factor must be positive");
  TreeIndex ix(s.skeleton);
  std::set<int> cls(edges.begin(), edges.end());
  std::map<int, Q> l = s.length;
  bool have = false;
  Q common;
  for (auto& [p, v] : ix.port_vertex) {
    if (!cls.count(edge_id(ix, p))) continue;
    if (have && s.length.at(p) != common) throw Error("saddle class members have unequal lengths");
    common = s.length.at(p);
    have = true;
    l[p] *= factor;
  }
  for (int e : cls)
    if (!ix.port_vertex.count(e) || edge_id(ix, e) != e) throw Error("unknown edge id " + std::to_string(e));
  std::map<int, Q> tw;
  for (const auto& v : s.skeleton.vertices) tw[v.id] = rescaled_twist(s, v.id, l);
  return build(s.skeleton, l, s.height, tw);
}

FormalCochain standard_shear(const Surface& s, const std::vector<int>& cls) {
  if (cls.empty()) throw Error("empty class");
  require_vertices(s, cls);
  FormalCochain c;
  for (const auto& [v, h] : s.height) c.coeff[v] = 0;
  for (int v : cls) c.coeff[v] = s.height.at(v);
  return c;
}

int relative_deformation_root(const HalfTree& t) {
  auto c = canonical_form(t);
  for (auto& [orig, lab] : c.vertex_maps[0])
    if (lab == 0) return orig;
  return t.vertices.front().id;
}

FormalCochain relative_deformation(const Surface& s) {
  TreeIndex ix(s.skeleton);
  for (auto& [p, m] : ix.mate)
    if (p == m) throw Error("half-edge at port " + std::to_string(p) + ": no relative deformation in the twist space");
  int root = relative_deformation_root(s.skeleton);
  FormalCochain c;
  for (const auto& v : s.skeleton.vertices)
    c.coeff[v.id] = tree_distance(s.skeleton, root, v.id) % 2 == 0 ? 1 : -1;
  return c;
}

const CheckResult* CandidateReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

int primitive_period(const std::vector<int>& seq) {
  const int k = static_cast<int>(seq.size());
  for (int p = 1; p <= k; ++p) {
    if (k % p) continue;
    bool ok = true;
    for (int i = p; i < k && ok; ++i) ok = seq[i] == seq[i - p];
    if (ok) return p;
  }
  return k;
}

// Offset of the least rotation of seq[0, p).
int least_rotation(const std::vector<int>& seq, int p) {
  int best = 0;
  for (int r = 1; r < p; ++r)
    for (int i = 0; i < p; ++i) {
      int a = seq[(r + i) % p], b = seq[(best + i) % p];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  return best;
}

std::string ids(const std::vector<int>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

CylinderPartition singleton_cylinders(const HalfTree& t) {
  CylinderPartition cp;
  for (const auto& v : t.vertices) cp.classes.push_back({v.id});
  return cp;
}

SaddlePartition singleton_saddles(const HalfTree& t) {
  SaddlePartition sp;
  for (int e : edge_ids(t)) sp.classes.push_back({e});
  return sp;
}

CandidateReport check_candidate(const Surface& s, const CylinderPartition& cp, const SaddlePartition& sp) {
  CandidateReport r;
  TreeIndex ix(s.skeleton);
  CheckResult cov{"coverage", true, {}};
  std::map<int, int> vclass, eclass;
  for (int k = 0; k < static_cast<int>(cp.classes.size()); ++k) {
    if (cp.classes[k].empty()) cov.details.push_back("cylinder class " + std::to_string(k) + " is empty");
    for (int v : cp.classes[k]) {
      if (!ix.vertex_index.count(v)) cov.details.push_back("unknown cylinder " + std::to_string(v));
      else if (!vclass.emplace(v, k).second) cov.details.push_back("cylinder " + std::to_string(v) + " in two classes");
    }
  }
  for (const auto& v : s.skeleton.vertices)
    if (!vclass.count(v.id)) cov.details.push_back("cylinder " + std::to_string(v.id) + " unclassified");
  auto all_edges = edge_ids(s.skeleton);
  std::set<int> valid(all_edges.begin(), all_edges.end());
  for (int k = 0; k < static_cast<int>(sp.classes.size()); ++k) {
    if (sp.classes[k].empty()) cov.details.push_back("saddle class " + std::to_string(k) + " is empty");
    for (int e : sp.classes[k]) {
      if (!valid.count(e)) cov.details.push_back("unknown edge " + std::to_string(e));
      else if (!eclass.emplace(e, k).second) cov.details.push_back("edge " + std::to_string(e) + " in two classes");
    }
  }
  for (int e : all_edges)
    if (!eclass.count(e)) cov.details.push_back("edge " + std::to_string(e) + " unclassified");
  cov.ok = cov.details.empty();
  r.checks.push_back(cov);
  if (!cov.ok) return r;

  CheckResult ca{"heights", true, {}}, cb{"distances", true, {}}, cc{"lengths", true, {}};
  CheckResult cd{"periodic", true, {}}, ce{"common-order", true, {}}, cf{"isogeny", true, {}};
  for (const auto& cls : cp.classes)
    for (size_t i = 0; i < cls.size(); ++i)
      for (size_t j = i + 1; j < cls.size(); ++j) {
        int v = cls[i], w = cls[j];
        if (s.height.at(v) != s.height.at(w))
          ca.details.push_back("cylinders " + std::to_string(v) + "," + std::to_string(w) + " heights " +
                               to_string(s.height.at(v)) + " vs " + to_string(s.height.at(w)));
        int d = tree_distance(s.skeleton, v, w);
        if (d % 2)
          cb.details.push_back("cylinders " + std::to_string(v) + "," + std::to_string(w) + " at odd distance " +
                               std::to_string(d));
      }
  for (const auto& cls : sp.classes)
    for (int e : cls)
      if (s.length.at(e) != s.length.at(cls[0]))
        cc.details.push_back("edges " + std::to_string(cls[0]) + "," + std::to_string(e) + " lengths differ");

  // per vertex: class sequence, primitive period, least rotation of the period
  struct Pattern {
    std::vector<int> seq, block;
    int period = 0, rot = 0;
  };
  std::map<int, Pattern> pat;
  for (const auto& v : s.skeleton.vertices) {
    Pattern p;
    for (int port : v.ports) p.seq.push_back(eclass.at(edge_id(ix, port)));
    p.period = primitive_period(p.seq);
    p.rot = least_rotation(p.seq, p.period);
    for (int i = 0; i < p.period; ++i) p.block.push_back(p.seq[(p.rot + i) % p.period]);
    std::set<int> distinct(p.seq.begin(), p.seq.end());
    if (static_cast<int>(distinct.size()) != p.period)
      cd.details.push_back("cylinder " + std::to_string(v.id) + " edge classes " + ids(p.seq) +
                           " not periodic with period " + std::to_string(distinct.size()));
    pat[v.id] = p;
  }
  r.bases.resize(cp.classes.size());
  for (int k = 0; k < static_cast<int>(cp.classes.size()); ++k) {
    const auto& cls = cp.classes[k];
    const Pattern& p0 = pat.at(cls[0]);
    bool same = true;
    for (int v : cls)
      if (pat.at(v).block != p0.block) {
        same = false;
        ce.details.push_back("cylinders " + std::to_string(cls[0]) + "," + std::to_string(v) +
                             " carry cyclic orders " + ids(p0.block) + " and " + ids(pat.at(v).block));
      }
    if (!same) continue;
    IsogenyBase b;
    b.saddle_classes = p0.block;
    b.height = s.height.at(cls[0]);
    bool first = true;
    for (int v : cls) {
      const auto& vert = s.skeleton.vertices.at(ix.vertex_index.at(v));
      const Pattern& p = pat.at(v);
      const int k_ports = static_cast<int>(vert.ports.size());
      std::vector<int> aligned;
      for (int i = 0; i < k_ports; ++i) aligned.push_back(vert.ports[(p.rot + i) % k_ports]);
      std::vector<Q> lens;
      for (int i = 0; i < p.period; ++i) lens.push_back(s.length.at(aligned[i]));
      bool periodic_lengths = true;
      for (int i = p.period; i < k_ports; ++i)
        if (s.length.at(aligned[i]) != lens[i % p.period]) periodic_lengths = false;
      Q C0 = 0;
      for (const auto& l : lens) C0 += l;
      Q tau = mod_pos(twist_from_port(s, aligned[0]), C0);
      if (!periodic_lengths)
        cf.details.push_back("cylinder " + std::to_string(v) + " boundary lengths are not periodic");
      if (first) {
        b.lengths = lens;
        b.circumference = C0;
        b.twist = tau;
        first = false;
      } else {
        if (lens != b.lengths)
          cf.details.push_back("cylinder " + std::to_string(v) + " period lengths differ from cylinder " +
                               std::to_string(cls[0]));
        if (s.height.at(v) != b.height)
          cf.details.push_back("cylinder " + std::to_string(v) + " height differs from its class");
        if (tau != b.twist)
          cf.details.push_back("cylinder " + std::to_string(v) + " twist " + to_string(tau) + " mod " +
                               to_string(C0) + " differs from " + to_string(b.twist));
      }
      b.wrap[v] = k_ports / p.period;
      b.aligned_ports[v] = aligned;
    }
    r.bases[k] = std::move(b);
  }
  for (auto* c : {&ca, &cb, &cc, &cd, &ce, &cf}) {
    c->ok = c->details.empty();
    r.checks.push_back(*c);
  }
  r.ok = std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.ok; });
  return r;
}

}  // namespace hs
