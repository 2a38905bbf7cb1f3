#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hypsurf/cover.hpp"
#include "hypsurf/halftree.hpp"

namespace hs {

// Outcome of one batch property run. Failures name the instance: skeleton code, seed, object.
struct SuiteReport {
  std::string name;
  long long checked = 0;
  long long failed = 0;
  std::vector<std::string> failures;  // first few, in discovery order
  std::vector<LemmaReport> lemmas;    // filled by the lemma suite
  double seconds = 0;                 // wall time; not part of the JSON output
  bool ok() const { return failed == 0; }
  void fail(const std::string& what);
};

// lindsey_tree after build is the identity on canonical forms; singularity profile;
// Weierstrass count 2g+2 with exact formula residual 0.
SuiteReport suite_roundtrip(int ports_max, int metrics, std::uint64_t seed);

// Vertical decomposition area identity and standard position width/core.
SuiteReport suite_flow(int ports_max, int metrics, std::uint64_t seed);

// Vertical collapse over every edge subset and horizontal collapse over every independent
// vertex set: certified components, regluing forests, exact area accounting.
SuiteReport suite_collapse(int ports_max, int trials, std::uint64_t seed);

struct LemmaBounds {
  int interval_n = 8;
  bool interval_literal = true;  // also run the statement's hypotheses, without the winding condition
  int balls_n = 10, balls_m = 4;
  int tree_vertices = 8, tree_colors = 4;
};
SuiteReport suite_lemmas(const LemmaBounds& b);

// quotient after pullback recovers the base on every blueprint, with random base metrics on
// top of the shipped one; area, Riemann-Hurwitz, stratum law and cone-angle divisibility.
SuiteReport suite_cover(const std::vector<CoverBlueprint>& blueprints, int trials, std::uint64_t seed);

// Involution-invariant vertical sets pulled back from the base meet every fibre over a base
// cylinder in the same proportion as the base cylinder itself.
SuiteReport suite_proportion(const std::vector<CoverBlueprint>& blueprints, int trials, std::uint64_t seed);

// The relative deformation exists iff there are no half-edges, alternates in sign along edges,
// and vanishes on the core of every standard-position vertical cylinder.
SuiteReport suite_eta(int ports_max);

}  // namespace hs
