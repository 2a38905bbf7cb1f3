#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypsurf/surface.hpp"

namespace hs {

struct CylinderPartition {
  std::vector<std::vector<int>> classes;  // vertex ids
};

struct SaddlePartition {
  std::vector<std::vector<int>> classes;  // edge ids (smaller port of a pair, or the half-edge port)
};

// Rational coefficient per cylinder on the duals of the core curves.
struct FormalCochain {
  std::map<int, Q> coeff;
  Q at(int cyl) const;
  bool operator==(const FormalCochain& o) const;
};

FormalCochain operator+(const FormalCochain& a, const FormalCochain& b);
// Sum of coefficients over the cylinders a walk passes through.
Q evaluate_walk(const FormalCochain& c, const std::vector<int>& walk);

Surface shear_class(const Surface& s, const std::vector<int>& cls, const Q& t);
Surface dilate_class(const Surface& s, const std::vector<int>& cls, const Q& factor);
Surface dilate_saddle_class(const Surface& s, const std::vector<int>& edges, const Q& factor);

// New twist of `vertex` when its port lengths change: the top point above the bottom origin is
// carried along by the piecewise-linear rescaling of the top boundary. Zero lengths allowed.
Q rescaled_twist(const Surface& s, int vertex, const std::map<int, Q>& new_lengths);

FormalCochain standard_shear(const Surface& s, const std::vector<int>& cls);
// (-1)^distance from the root; the root is the vertex with canonical label 0.
FormalCochain relative_deformation(const Surface& s);
int relative_deformation_root(const HalfTree& t);

struct CheckResult {
  std::string name;
  bool ok = true;
  std::vector<std::string> details;
};

// Minimal cylinder a class is isogenous to: one period of the boundary pattern.
struct IsogenyBase {
  std::vector<int> saddle_classes;  // indices into the saddle partition, in clockwise order
  std::vector<Q> lengths;
  Q height;
  Q twist;                          // measured from the first port of the period
  Q circumference;
  std::map<int, int> wrap;          // member vertex id -> multiplicity
  std::map<int, std::vector<int>> aligned_ports;  // member -> ports starting at the period start
};

struct CandidateReport {
  bool ok = false;
  std::vector<CheckResult> checks;  // coverage, (a) heights ... (f) isogeny
  std::vector<IsogenyBase> bases;   // per cylinder class, filled when (d)-(f) pass for it
  const CheckResult* find(const std::string& name) const;
};

CandidateReport check_candidate(const Surface& s, const CylinderPartition& cp, const SaddlePartition& sp);

CylinderPartition singleton_cylinders(const HalfTree& t);
SaddlePartition singleton_saddles(const HalfTree& t);

}  // namespace hs
