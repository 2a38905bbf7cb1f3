#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypsurf/deform.hpp"
#include "hypsurf/flow.hpp"
#include "hypsurf/surface.hpp"

namespace hs {

struct Fiber {
  int id = 0;
  int base = 0;                 // base vertex id
  int wrap = 1;
  std::vector<int> ports;       // fibre port ids in cyclic order
  std::optional<Q> twist;       // default: the lift congruent to the base twist, in [0, C_base)
};

struct PortLift {
  int base_port = 0;
  int sheet = 0;
};

struct CoverBlueprint {
  std::string name;
  Surface base;
  int degree = 1;
  std::vector<Fiber> fibers;
  std::map<int, PortLift> lifts;            // fibre port -> base port and sheet
  std::vector<std::pair<int, int>> pairs;   // fibre edges
};

// Cylinder-by-cylinder description of a local isometry source -> base.
struct CoverMap {
  Surface base;
  int degree = 1;
  std::map<int, int> cylinder;   // source vertex -> base vertex
  std::map<int, int> port;       // source port -> base port
  std::map<int, Q> offset;       // source bottom x maps to base bottom x + offset (mod base circumference)
};

struct CoverCheck {
  std::string name;
  bool ok = true;
  std::vector<std::string> details;
};

struct Ramification {
  int source_zero = 0, base_zero = 0;
  int source_order = 0, base_order = 0;
  int local_degree = 0;
};

struct CoverVerdict {
  bool ok = false;
  std::vector<CoverCheck> checks;
  GraphCoverReport graph;
  std::vector<Ramification> ramification;
  const CoverCheck* find(const std::string& name) const;
};

struct Pullback {
  Surface surface;
  CoverMap map;
  CylinderPartition cylinders;  // fibres over each base vertex
  SaddlePartition saddles;      // fibre edges over each base edge
};

// Validates the blueprint (throws Error naming the violated invariant) and builds the cover.
Pullback pullback(const CoverBlueprint& b);

struct QuotientResult {
  CoverMap map;
  CandidateReport candidate;
  CoverVerdict verdict;
  std::string base_stratum;
  bool has_half_edge_class = false;
  int half_edge_classes = 0;
  bool stratum_law = false;      // one base zero iff the source has a half-edge saddle class
  bool stratum_parity = false;   // one base zero iff the number of half-edge classes is odd
};

// Throws Error if the candidate check fails or the base diagram is not a half-tree.
QuotientResult quotient(const Surface& s, const CylinderPartition& cp, const SaddlePartition& sp);

// Independent recheck of a covering claim.
CoverVerdict certify_cover(const Surface& source, const CoverMap& map);

// Source vertical cylinders lying over the listed base vertical cylinders.
std::vector<int> pullback_vertical_set(const Surface& source, const CoverMap& map, const VerticalDecomposition& src,
                                       const VerticalDecomposition& base, const std::vector<int>& base_set);

// The shipped fixture library; `base` overrides the base metric when given a surface on the same skeleton.
std::vector<CoverBlueprint> cover_fixtures();
CoverBlueprint with_base_metric(const CoverBlueprint& b, const Surface& base);

}  // namespace hs
