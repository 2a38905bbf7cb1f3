#include "hypsurf/halftree.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace hs {

int HalfTree::port_count() const {
  int n = 0;
  for (const auto& v : vertices) n += static_cast<int>(v.ports.size());
  return n;
}

TreeIndex::TreeIndex(const HalfTree& t) : tree(&t) {
  for (int i = 0; i < static_cast<int>(t.vertices.size()); ++i) {
    const auto& v = t.vertices[i];
    if (!vertex_index.emplace(v.id, i).second)
      throw Error("duplicate vertex id " + std::to_string(v.id));
    for (int j = 0; j < static_cast<int>(v.ports.size()); ++j) {
      int p = v.ports[j];
      if (!port_vertex.emplace(p, i).second) throw Error("duplicate port id " + std::to_string(p));
      port_pos[p] = j;
      mate[p] = p;
    }
  }
  adj.assign(t.vertices.size(), {});
  for (auto [a, b] : t.pairs) {
    if (!port_vertex.count(a) || !port_vertex.count(b))
      throw Error("pair (" + std::to_string(a) + "," + std::to_string(b) + ") names an unknown port");
    if (a == b) throw Error("port " + std::to_string(a) + " paired with itself");
    if (mate[a] != a || mate[b] != b)
      throw Error("port paired twice in (" + std::to_string(a) + "," + std::to_string(b) + ")");
    mate[a] = b;
    mate[b] = a;
    adj[port_vertex[a]].push_back(port_vertex[b]);
    adj[port_vertex[b]].push_back(port_vertex[a]);
  }
}

int TreeIndex::next_port(int p) const {
  const auto& ports = tree->vertices[vertex_of(p)].ports;
  int j = port_pos.at(p);
  return ports[(j + 1) % ports.size()];
}

Diagnostics validate(const HalfTree& t) {
  auto fail = [](std::string m) { return Diagnostics{false, std::move(m)}; };
  if (t.vertices.empty()) return fail("no vertices");
  std::unique_ptr<TreeIndex> ix;
  try {
    ix = std::make_unique<TreeIndex>(t);
  } catch (const Error& e) {
    return fail(e.what());
  }
  for (const auto& v : t.vertices)
    if (v.ports.empty()) return fail("vertex " + std::to_string(v.id) + " has no ports");
  for (auto [a, b] : t.pairs)
    if (ix->vertex_of(a) == ix->vertex_of(b))
      return fail("pair (" + std::to_string(a) + "," + std::to_string(b) + ") joins a vertex to itself");
  // Connected and |E| = |V| - 1 means a tree; parallel edges show up as a cycle.
  const int nv = static_cast<int>(t.vertices.size());
  std::vector<int> seen(nv, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : ix->adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
  }
  if (reached != nv) return fail("full-edge graph is disconnected");
  if (static_cast<int>(t.pairs.size()) != nv - 1) return fail("full-edge graph contains a cycle");
  return {};
}

std::string stratum_name(int genus, int zeros) {
  if (zeros == 1) {
    if (genus == 1) return "H(0)";
    return "H^hyp(" + std::to_string(2 * genus - 2) + ")";
  }
  if (genus == 1) return "H(0,0)";
  return "H^hyp(" + std::to_string(genus - 1) + "," + std::to_string(genus - 1) + ")";
}

Stratum stratum_of(const HalfTree& t) {
  auto d = validate(t);
  if (!d.ok) throw Error("invalid half-tree: " + d.message);
  int n = t.port_count();
  Stratum s;
  if (n % 2 == 1) {
    s.genus = (n + 1) / 2;
    s.zeros = 1;
  } else {
    s.genus = n / 2;
    s.zeros = 2;
  }
  s.name = stratum_name(s.genus, s.zeros);
  return s;
}

namespace {

// Code of the subtree hanging at vertex vi, listing ports from position `first` for `count` steps.
void encode(const TreeIndex& ix, int vi, int first, int count, std::string& out) {
  const auto& ports = ix.tree->vertices[vi].ports;
  const int k = static_cast<int>(ports.size());
  for (int s = 0; s < count; ++s) {
    int p = ports[(first + s) % k];
    if (ix.is_half(p)) {
      out += 'h';
    } else {
      int m = ix.mate.at(p);
      int w = ix.vertex_of(m);
      out += '(';
      encode(ix, w, ix.port_pos.at(m) + 1, ix.degree(w) - 1, out);
      out += ')';
    }
  }
}

std::string root_code(const TreeIndex& ix, int vi, int start) {
  std::string out = "(";
  encode(ix, vi, start, ix.degree(vi), out);
  out += ')';
  return out;
}

// Relabel from root (vi, start) in the same order decode() assigns labels.
HalfTree relabel(const TreeIndex& ix, int vi, int start, std::map<int, int>& port_map,
                 std::map<int, int>& vertex_map) {
  HalfTree out;
  int next_vertex = 0, next_port = 0;
  std::function<void(int, int, int, int)> visit = [&](int v, int first, int count, int entry_label) {
    const auto& ports = ix.tree->vertices[v].ports;
    const int k = static_cast<int>(ports.size());
    vertex_map[ix.tree->vertices[v].id] = next_vertex;
    out.vertices.push_back({next_vertex++, {}});
    size_t my = out.vertices.size() - 1;
    if (entry_label >= 0) out.vertices[my].ports.push_back(entry_label);
    for (int s = 0; s < count; ++s) {
      int p = ports[(first + s) % k];
      int lab = next_port++;
      port_map[p] = lab;
      out.vertices[my].ports.push_back(lab);
      if (!ix.is_half(p)) {
        int m = ix.mate.at(p);
        int child = next_port++;
        port_map[m] = child;
        out.pairs.push_back({lab, child});
        int w = ix.vertex_of(m);
        visit(w, ix.port_pos.at(m) + 1, ix.degree(w) - 1, child);
      }
    }
  };
  visit(vi, start, ix.degree(vi), -1);
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

void parse_items(const std::string& code, size_t& i, HalfTree& out, int& next_vertex,
                        int& next_port, int entry_label) {
  // code[i] is just past an opening bracket
  int vid = next_vertex++;
  out.vertices.push_back({vid, {}});
  size_t my = out.vertices.size() - 1;
  if (entry_label >= 0) out.vertices[my].ports.push_back(entry_label);
  while (i < code.size() && code[i] != ')') {
    int lab = next_port++;
    out.vertices[my].ports.push_back(lab);
    if (code[i] == 'h') {
      ++i;
    } else if (code[i] == '(') {
      ++i;
      int child = next_port++;
      out.pairs.push_back({lab, child});
      parse_items(code, i, out, next_vertex, next_port, child);
    } else {
      throw Error("bad code character");
    }
  }
  if (i >= code.size()) throw Error("unterminated code");
  ++i;
}

}  // namespace

HalfTree decode(const std::string& code) {
  if (code.size() < 2 || code[0] != '(') throw Error("bad code");
  HalfTree out;
  size_t i = 1;
  int nv = 0, np = 0;
  parse_items(code, i, out, nv, np, -1);
  if (i != code.size()) throw Error("trailing characters in code");
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

Canonical canonical_form(const HalfTree& t) {
  auto d = validate(t);
  if (!d.ok) throw Error("invalid half-tree: " + d.message);
  TreeIndex ix(t);
  Canonical best;
  std::vector<std::pair<int, int>> roots;
  for (int vi = 0; vi < static_cast<int>(t.vertices.size()); ++vi) {
    for (int s = 0; s < ix.degree(vi); ++s) {
      std::string c = root_code(ix, vi, s);
      if (roots.empty() || c < best.code) {
        best.code = std::move(c);
        roots.assign(1, {vi, s});
      } else if (c == best.code) {
        roots.push_back({vi, s});
      }
    }
  }
  best.automorphisms = static_cast<int>(roots.size());
  for (auto [vi, s] : roots) {
    std::map<int, int> pm, vm;
    HalfTree r = relabel(ix, vi, s, pm, vm);
    if (best.port_maps.empty()) best.tree = std::move(r);
    best.port_maps.push_back(std::move(pm));
    best.vertex_maps.push_back(std::move(vm));
  }
  return best;
}

std::vector<HalfTree> enumerate(int n) {
  if (n < 1) throw Error("enumerate needs n >= 1");
  // items[b]: item sequences using b ports; an item is 'h' or a bracketed child.
  std::vector<std::vector<std::string>> items(n + 1);
  items[0] = {""};
  for (int b = 1; b <= n; ++b) {
    for (const auto& rest : items[b - 1]) items[b].push_back("h" + rest);
    for (int c = 0; c + 2 <= b; ++c)
      for (const auto& inner : items[c])
        for (const auto& rest : items[b - 2 - c]) items[b].push_back("(" + inner + ")" + rest);
  }
  std::map<std::string, HalfTree> classes;
  for (const auto& body : items[n]) {
    Canonical c = canonical_form(decode("(" + body + ")"));
    classes.emplace(c.code, std::move(c.tree));
  }
  std::vector<HalfTree> out;
  for (auto& [code, tree] : classes) out.push_back(std::move(tree));
  return out;
}

int tree_distance(const HalfTree& t, int v, int w) {
  TreeIndex ix(t);
  if (!ix.vertex_index.count(v) || !ix.vertex_index.count(w)) throw Error("unknown vertex");
  int a = ix.vertex_index.at(v), b = ix.vertex_index.at(w);
  std::vector<int> dist(t.vertices.size(), -1);
  std::queue<int> q;
  dist[a] = 0;
  q.push(a);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int x : ix.adj[u])
      if (dist[x] < 0) {
        dist[x] = dist[u] + 1;
        q.push(x);
      }
  }
  if (dist[b] < 0) throw Error("vertices are disconnected");
  return dist[b];
}

int edge_id(const TreeIndex& ix, int port) { return std::min(port, ix.mate.at(port)); }

std::vector<int> edge_ids(const HalfTree& t) {
  TreeIndex ix(t);
  std::set<int> ids;
  for (auto& [p, m] : ix.mate) ids.insert(std::min(p, m));
  return {ids.begin(), ids.end()};
}

std::string to_dot(const HalfTree& t) {
  TreeIndex ix(t);
  std::ostringstream os;
  os << "graph halftree {\n  node [shape=circle];\n";
  for (const auto& v : t.vertices) os << "  v" << v.id << " [label=\"" << v.id << "\"];\n";
  for (auto [a, b] : t.pairs)
    os << "  v" << t.vertices[ix.vertex_of(a)].id << " -- v" << t.vertices[ix.vertex_of(b)].id
       << " [label=\"" << a << "/" << b << "\"];\n";
  for (const auto& v : t.vertices)
    for (int p : v.ports)
      if (ix.is_half(p)) {
        os << "  h" << p << " [shape=point, width=0.02, label=\"\"];\n";
        os << "  v" << v.id << " -- h" << p << " [label=\"" << p << "\", arrowhead=none];\n";
      }
  os << "}\n";
  return os.str();
}

GraphCoverReport check_graph_cover(const GraphCoverDatum& c) {
  GraphCoverReport r;
  for (const auto* t : {&c.source, &c.target}) {
    auto d = validate(*t);
    if (!d.ok) {
      r.errors.push_back(std::string(t == &c.source ? "source" : "target") + " invalid: " + d.message);
      return r;
    }
  }
  if (c.degree < 1) {
    r.errors.push_back("degree must be positive");
    return r;
  }
  TreeIndex sx(c.source), tx(c.target);
  const int d = c.degree;
  for (const auto& v : c.source.vertices) {
    if (!c.vertex_map.count(v.id) || !tx.vertex_index.count(c.vertex_map.at(v.id))) {
      r.errors.push_back("vertex " + std::to_string(v.id) + " has no image");
      return r;
    }
  }
  // Simplicial check on full edges; edges inside one fibre fold onto a target half-edge.
  int kept = 0;
  for (auto [a, b] : c.source.pairs) {
    int u = c.source.vertices[sx.vertex_of(a)].id, w = c.source.vertices[sx.vertex_of(b)].id;
    int pu = c.vertex_map.at(u), pw = c.vertex_map.at(w);
    if (pu == pw) {
      ++r.folded_edges;
      continue;
    }
    int iu = tx.vertex_index.at(pu), iw = tx.vertex_index.at(pw);
    const auto& nb = tx.adj[iu];
    if (std::find(nb.begin(), nb.end(), iw) == nb.end()) {
      r.errors.push_back("edge " + std::to_string(u) + "-" + std::to_string(w) +
                         " maps to non-adjacent vertices (not simplicial)");
      continue;
    }
    ++kept;
  }
  const long long et = static_cast<long long>(c.target.pairs.size());
  if (kept != d * et)
    r.errors.push_back("edge count " + std::to_string(kept) + " != d*|E_target| = " + std::to_string(d * et));
  std::map<int, long long> fibre_e, fibre_e1;
  for (const auto& v : c.source.vertices) {
    int img = c.vertex_map.at(v.id);
    int dv = static_cast<int>(v.ports.size());
    int dw = tx.degree(tx.vertex_index.at(img));
    if (dv % dw != 0) {
      r.errors.push_back("fractional ramification at vertex " + std::to_string(v.id));
      continue;
    }
    int e = dv / dw;
    auto it = c.ramification.find(v.id);
    if (it != c.ramification.end() && it->second != e)
      r.errors.push_back("ramification at vertex " + std::to_string(v.id) + " stated " +
                         std::to_string(it->second) + ", computed " + std::to_string(e));
    fibre_e[img] += e;
    fibre_e1[img] += e - 1;
    r.branch_sum += e - 1;
  }
  for (const auto& w : c.target.vertices) {
    if (fibre_e[w.id] != d)
      r.errors.push_back("fibre over " + std::to_string(w.id) + " has total ramification " +
                         std::to_string(fibre_e[w.id]) + " != d");
    bool stated = fibre_e1[w.id] == d;
    r.stated_condition3[w.id] = stated;
    if (!stated)
      r.flags.push_back("stated condition sum(e_v - 1) = d fails over target vertex " + std::to_string(w.id));
  }
  r.chi_source = static_cast<long long>(c.source.vertices.size()) - kept;
  r.chi_target = static_cast<long long>(c.target.vertices.size()) - et;
  r.residual = r.chi_source - (d * r.chi_target - r.branch_sum);
  if (r.residual != 0) r.errors.push_back("Riemann-Hurwitz residual " + std::to_string(r.residual));
  r.ok = r.errors.empty();
  return r;
}

}  // namespace hs
