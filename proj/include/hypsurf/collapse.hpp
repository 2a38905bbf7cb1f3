#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypsurf/surface.hpp"

namespace hs {

struct Certification {
  bool ok = false;
  bool involution = false;
  bool tree = false;
  std::string message;
  std::string stratum;  // when ok
};

// Rotation by pi is an isometry of the tables and the recovered diagram is a Lindsey half-tree.
Certification certify_hyperelliptic(const RawSurface& s);

struct Component {
  RawSurface raw;
  Surface surface;  // ports named by bottom segment ids
  Certification certification;
};

struct DisjointSurface {
  std::vector<Component> components;
  Q collapsed_area;                 // area(source) - sum of component areas
  std::vector<std::string> notices;
};

// Shrink proportion per edge id (missing entries mean 0).
struct VerticalCollapseInput {
  std::map<int, Q> proportion;
};

VerticalCollapseInput proportions_by_class(const std::vector<std::vector<int>>& classes, const std::vector<Q>& p);

struct VerticalCollapseReport {
  DisjointSurface result;
  std::vector<int> deleted_edges;
  Q predicted_collapsed_area;  // sum over vertices of h_v * sum of p * length on its ports
  std::vector<HalfTree> predicted_skeletons;  // components of the skeleton minus deleted edges
};

VerticalCollapseReport vertical_collapse(const Surface& s, const VerticalCollapseInput& in);

struct HorizontalCollapseInput {
  std::vector<int> cylinders;  // vertex ids to delete
};

// New saddle produced by joining two boundary pieces through a deleted cylinder.
struct VerticalGlue {
  int deleted = 0;              // the cylinder the vertical line runs through
  int lower_cyl = 0, upper_cyl = 0;
  int top_segment = 0, bottom_segment = 0;  // new segment ids
  int top_source = 0, bottom_source = 0;    // segment ids they were cut from
  Q top_offset, bottom_offset, length;      // offsets inside the source segments
};

struct Mark {
  int cyl = 0;
  std::string side;     // "top" or "bottom"
  int source_segment = 0;
  Q offset;             // inside the source segment
  std::string reason;   // "zero" (order >= 1) or "marked" (order 0) for the endpoint it is joined to
  int order = 0;
};

struct RegluingGraph {
  int deleted = 0;
  std::vector<int> neighbours;                  // cylinder ids
  std::vector<std::pair<int, int>> edges;       // one per exchanged pair of new saddles, i != j
  int self_gluings = 0;                         // pieces joining a neighbour to itself
  bool forest = false;
};

struct HorizontalCollapseReport {
  DisjointSurface result;
  std::vector<int> deleted;
  std::vector<VerticalGlue> glues;
  std::vector<Mark> marks;
  std::vector<RegluingGraph> regluing;
};

HorizontalCollapseReport horizontal_collapse(const Surface& s, const HorizontalCollapseInput& in);

// s with cylinder v twisted so that its k-th bottom junction sits under its j-th top junction,
// which puts a vertical saddle connection inside v.
Surface align_junctions(const Surface& s, int v, int k, int j);

// Split a raw surface along its gluings into connected pieces.
std::vector<RawSurface> connected_components(const RawSurface& s);

}  // namespace hs
