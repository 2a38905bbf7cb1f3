#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypsurf/error.hpp"

namespace hs {

struct Vertex {
  int id = 0;
  std::vector<int> ports;  // clockwise cyclic order
  bool operator==(const Vertex& o) const = default;
};

// Planar tree with half-edges. Paired ports are full edges, unpaired ones half-edges.
struct HalfTree {
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> pairs;

  int port_count() const;
  bool operator==(const HalfTree& o) const = default;
};

struct Diagnostics {
  bool ok = true;
  std::string message;  // first violated invariant, empty when ok
};

Diagnostics validate(const HalfTree& t);

// Lookup tables over a structurally sound half-tree. Throws Error on duplicate ids
// or dangling pairs; does not require the tree property.
struct TreeIndex {
  explicit TreeIndex(const HalfTree& t);

  const HalfTree* tree;
  std::map<int, int> vertex_index;  // vertex id -> index into vertices
  std::map<int, int> port_vertex;   // port -> vertex index
  std::map<int, int> port_pos;      // port -> position in its cyclic list
  std::map<int, int> mate;          // port -> paired port, or itself for a half-edge
  std::vector<std::vector<int>> adj;  // vertex index -> neighbour indices over full edges

  bool is_half(int p) const { return mate.at(p) == p; }
  int vertex_of(int p) const { return port_vertex.at(p); }
  int degree(int vi) const { return static_cast<int>(tree->vertices[vi].ports.size()); }
  // Port following p clockwise at its vertex.
  int next_port(int p) const;
};

struct Stratum {
  int genus = 0;
  int zeros = 0;
  std::string name;
};

Stratum stratum_of(const HalfTree& t);
std::string stratum_name(int genus, int zeros);

struct Canonical {
  std::string code;
  int automorphisms = 0;
  HalfTree tree;  // relabelled representative, equal to decode(code)
  // One relabelling per minimal root (so per automorphism): original id -> canonical id.
  std::vector<std::map<int, int>> port_maps;
  std::vector<std::map<int, int>> vertex_maps;
};

// Lexicographically least planar DFS code over all (vertex, starting port) roots.
Canonical canonical_form(const HalfTree& t);
HalfTree decode(const std::string& code);

// One canonical representative per orientation-preserving isomorphism class, sorted by code.
std::vector<HalfTree> enumerate(int n);

int tree_distance(const HalfTree& t, int v, int w);

// Edge objects are named by the smaller port id of the pair (the port itself for a half-edge).
int edge_id(const TreeIndex& ix, int port);
std::vector<int> edge_ids(const HalfTree& t);

std::string to_dot(const HalfTree& t);

struct GraphCoverDatum {
  HalfTree source;
  HalfTree target;
  std::map<int, int> vertex_map;    // source vertex id -> target vertex id
  int degree = 1;
  std::map<int, int> ramification;  // source vertex id -> e_v
};

struct GraphCoverReport {
  bool ok = false;
  std::vector<std::string> errors;
  long long chi_source = 0;
  long long chi_target = 0;
  long long branch_sum = 0;  // sum of (e_v - 1)
  long long residual = 0;    // chi_source - (d * chi_target - branch_sum)
  int folded_edges = 0;      // source edges inside one fibre, excluded from the graph
  // Per target vertex: does sum over its fibre of (e_v - 1) equal d? Reported, not enforced.
  std::map<int, bool> stated_condition3;
  std::vector<std::string> flags;
};

GraphCoverReport check_graph_cover(const GraphCoverDatum& c);

struct LemmaReport {
  std::string lemma;
  long long search_space = 0;
  std::vector<std::string> counterexamples;
  double elapsed_seconds = 0;
};

// single_winding keeps only systems whose chain I_n, ..., I_1 goes once round the circle, as it
// does for the saddles of one cylinder.
LemmaReport verify_interval_lemma(int max_n, bool single_winding = false);
LemmaReport verify_balls_lemma(int max_n, int max_m);
LemmaReport verify_colored_tree_lemma(int max_vertices, int max_colors);

// Pieces of the lemma verifiers, exposed for tests.
bool balls_hypothesis(const std::vector<int>& colors);
bool is_periodic_arrangement(const std::vector<int>& colors);
// Number of times the chain of intervals goes round the circle.
int interval_winding(const std::vector<int>& k);
// For interval starts k (0-based, I_i = cyclic run from k[i] to k[i-1]): returns false if
// the system violates the consecutive-intersection rule, else fills the largest graph it admits.
bool interval_system_graph(const std::vector<int>& k, std::vector<std::pair<int, int>>& edges);
bool is_forest(int n, const std::vector<std::pair<int, int>>& edges);
// Colored-tree hypothesis and conclusion on a tree given by adjacency lists.
bool colored_tree_hypothesis(const std::vector<std::vector<int>>& adj, const std::vector<int>& color);
bool colored_tree_conclusion(const std::vector<std::vector<int>>& adj, const std::vector<int>& color);
// Unlabelled trees on n vertices, one per isomorphism class.
std::vector<std::vector<std::vector<int>>> free_trees(int n);

}  // namespace hs
