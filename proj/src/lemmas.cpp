#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "hypsurf/halftree.hpp"

namespace hs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string join(const std::vector<int>& v) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

// Cyclic run from a to b inclusive on Z/n, as a membership mask.
std::vector<char> arc(int a, int b, int n) {
  std::vector<char> m(n, 0);
  for (int x = a;; x = (x + 1) % n) {
    m[x] = 1;
    if (x == b) break;
  }
  return m;
}

}  // namespace

bool is_forest(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : edges) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

bool interval_system_graph(const std::vector<int>& k, std::vector<std::pair<int, int>>& edges) {
  const int n = static_cast<int>(k.size());
  edges.clear();
  std::vector<std::vector<char>> in(n);
  for (int i = 0; i < n; ++i) in[i] = arc(k[i], k[(i + n - 1) % n], n);
  if (n > 2) {
    for (int i = 0; i < n; ++i) {
      const auto& a = in[i];
      const auto& b = in[(i + 1) % n];
      for (int x = 0; x < n; ++x)
        if ((a[x] && b[x]) != (x == k[i])) return false;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (in[i][j] && in[j][i]) edges.push_back({i, j});
  return true;
}

int interval_winding(const std::vector<int>& k) {
  const int n = static_cast<int>(k.size());
  int total = 0;
  for (int i = 0; i < n; ++i) total += ((k[(i + n - 1) % n] - k[i]) % n + n) % n;
  return n ? total / n : 0;
}

LemmaReport verify_interval_lemma(int max_n, bool single_winding) {
  auto t0 = Clock::now();
  LemmaReport r;
  r.lemma = single_winding ? "interval-adjacency-single-winding" : "interval-adjacency";
  for (int n = 1; n <= max_n; ++n) {
    std::vector<int> k(n, 0);
    std::vector<std::pair<int, int>> edges;
    // Backtracking over starts; condition i needs k[i-1], k[i], k[i+1].
    std::function<void(int)> rec = [&](int pos) {
      if (pos == n) {
        if (single_winding && interval_winding(k) > 1) return;
        ++r.search_space;
        if (!interval_system_graph(k, edges)) return;
        if (!is_forest(n, edges)) r.counterexamples.push_back("n=" + std::to_string(n) + " k=" + join(k));
        return;
      }
      for (int v = 0; v < n; ++v) {
        k[pos] = v;
        if (n > 2 && pos >= 2) {
          // Condition at i = pos-1 involves I_{pos-1} = [k[pos-1]..k[pos-2]] and I_pos = [k[pos]..k[pos-1]].
          auto a = arc(k[pos - 1], k[pos - 2], n);
          auto b = arc(k[pos], k[pos - 1], n);
          bool good = true;
          for (int x = 0; x < n && good; ++x)
            if ((a[x] && b[x]) != (x == k[pos - 1])) good = false;
          if (!good) continue;
        }
        rec(pos + 1);
      }
    };
    rec(0);
  }
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

bool balls_hypothesis(const std::vector<int>& c) {
  const int n = static_cast<int>(c.size());
  std::map<int, std::vector<int>> where;
  for (int i = 0; i < n; ++i) where[c[i]].push_back(i);
  for (auto& [col, pos] : where) {
    if (pos.size() < 2) continue;
    std::vector<int> first;
    for (size_t j = 0; j < pos.size(); ++j) {
      int a = pos[j], b = pos[(j + 1) % pos.size()];
      std::map<int, int> ms;
      for (int x = (a + 1) % n; x != b; x = (x + 1) % n) ms[c[x]]++;
      std::vector<int> flat;
      for (auto& [k, v] : ms) {
        flat.push_back(k);
        flat.push_back(v);
      }
      if (j == 0)
        first = flat;
      else if (flat != first)
        return false;
    }
  }
  return true;
}

bool is_periodic_arrangement(const std::vector<int>& c) {
  std::set<int> distinct(c.begin(), c.end());
  const size_t m = distinct.size(), n = c.size();
  if (m == 0 || n % m != 0) return false;
  std::set<int> head(c.begin(), c.begin() + m);
  if (head.size() != m) return false;
  for (size_t i = m; i < n; ++i)
    if (c[i] != c[i - m]) return false;
  return true;
}

LemmaReport verify_balls_lemma(int max_n, int max_m) {
  auto t0 = Clock::now();
  LemmaReport r;
  r.lemma = "balls";
  for (int n = 1; n <= max_n; ++n) {
    for (int m = 1; m <= std::min(max_m, n); ++m) {
      std::vector<int> c(n, 0);
      // Fix ball 0 to colour 0; rotations and the colour relabelling make this harmless.
      std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
          std::vector<char> used(m, 0);
          for (int x : c) used[x] = 1;
          if (std::find(used.begin(), used.end(), 0) != used.end()) return;
          ++r.search_space;
          if (balls_hypothesis(c) && !is_periodic_arrangement(c))
            r.counterexamples.push_back("balls " + join(c));
          return;
        }
        for (int v = 0; v < m; ++v) {
          c[pos] = v;
          rec(pos + 1);
        }
      };
      rec(1);
    }
  }
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

namespace {

std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int w : adj[v])
    if (w != parent) kids.push_back(rooted_code(adj, w, v));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}

std::string free_code(const std::vector<std::vector<int>>& adj) {
  std::string best;
  for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
    std::string c = rooted_code(adj, v, -1);
    if (best.empty() || c < best) best = c;
  }
  return best;
}

std::vector<int> bfs_dist(const std::vector<std::vector<int>>& adj, int s) {
  std::vector<int> d(adj.size(), -1);
  std::queue<int> q;
  d[s] = 0;
  q.push(s);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj[u])
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        q.push(w);
      }
  }
  return d;
}

}  // namespace

std::vector<std::vector<std::vector<int>>> free_trees(int n) {
  if (n == 1) return {{{}}};
  if (n == 2) return {{{1}, {0}}};
  std::map<std::string, std::vector<std::vector<int>>> seen;
  std::vector<int> seq(n - 2, 0);
  // All Pruefer sequences; decode and keep one tree per isomorphism class.
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n - 2) {
      std::vector<int> deg(n, 1);
      for (int x : seq) deg[x]++;
      std::vector<std::vector<int>> adj(n);
      for (int x : seq) {
        int leaf = 0;
        while (deg[leaf] != 1) ++leaf;
        adj[leaf].push_back(x);
        adj[x].push_back(leaf);
        deg[leaf]--;
        deg[x]--;
      }
      int u = -1, w = -1;
      for (int i = 0; i < n; ++i)
        if (deg[i] == 1) (u < 0 ? u : w) = i;
      adj[u].push_back(w);
      adj[w].push_back(u);
      seen.emplace(free_code(adj), adj);
      return;
    }
    for (int v = 0; v < n; ++v) {
      seq[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  std::vector<std::vector<std::vector<int>>> out;
  for (auto& [c, a] : seen) out.push_back(a);
  return out;
}

bool colored_tree_hypothesis(const std::vector<std::vector<int>>& adj, const std::vector<int>& color) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::set<int>> around(n);
  for (int v = 0; v < n; ++v)
    for (int w : adj[v]) {
      if (color[v] == color[w]) return false;
      around[v].insert(color[w]);
    }
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w)
      if (color[v] == color[w] && around[v] != around[w]) return false;
  return true;
}

bool colored_tree_conclusion(const std::vector<std::vector<int>>& adj, const std::vector<int>& color) {
  const int n = static_cast<int>(adj.size());
  for (int v = 0; v < n; ++v) {
    auto d = bfs_dist(adj, v);
    for (int w = v + 1; w < n; ++w)
      if (color[v] == color[w] && d[w] % 2 != 0) return false;
  }
  return true;
}

LemmaReport verify_colored_tree_lemma(int max_vertices, int max_colors) {
  auto t0 = Clock::now();
  LemmaReport r;
  r.lemma = "colored-tree";
  for (int n = 1; n <= max_vertices; ++n) {
    for (const auto& adj : free_trees(n)) {
      std::vector<int> color(n, 0);
      std::function<void(int)> rec = [&](int pos) {
        if (pos == n) {
          ++r.search_space;
          if (colored_tree_hypothesis(adj, color) && !colored_tree_conclusion(adj, color)) {
            std::ostringstream os;
            os << "tree " << free_code(adj) << " colors " << join(color);
            r.counterexamples.push_back(os.str());
          }
          return;
        }
        for (int c = 0; c < max_colors; ++c) {
          color[pos] = c;
          rec(pos + 1);
        }
      };
      rec(0);
    }
  }
  r.elapsed_seconds = seconds_since(t0);
  return r;
}

}  // namespace hs
