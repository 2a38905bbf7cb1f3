#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "hypsurf/halftree.hpp"
#include "hypsurf/rational.hpp"

namespace hs {

// A horizontal boundary piece. Positions are in that boundary's own coordinate on [0, C).
struct Segment {
  int id = 0;
  Q start;
  Q length;
};

// Cylinder [0, C) x [0, h]. Bottom point x meets top coordinate x + twist (mod C).
struct RawCylinder {
  int id = 0;
  Q circumference;
  Q height;
  Q twist;
  std::vector<Segment> bottom;  // sorted by start, tiling the circle from 0
  std::vector<Segment> top;     // sorted by start, tiling the circle
};

// Top segment `top` is glued to bottom segment `bottom` by translation (offset u to u).
struct Glue {
  int top = 0;
  int bottom = 0;
  bool operator==(const Glue& o) const = default;
};

// Horizontally periodic translation surface as cylinders plus gluing tables.
struct RawSurface {
  std::vector<RawCylinder> cylinders;
  std::vector<Glue> glue;  // one entry per horizontal saddle connection
};

struct RawIndex {
  explicit RawIndex(const RawSurface& s);
  const RawSurface* surf;
  std::map<int, int> cyl_index;                     // cylinder id -> index
  std::map<int, std::pair<int, int>> bottom_at;     // bottom seg id -> (cyl idx, seg idx)
  std::map<int, std::pair<int, int>> top_at;        // top seg id -> (cyl idx, seg idx)
  std::map<int, int> glue_of_top, glue_of_bottom;   // seg id -> glue index
  const Segment& bottom_seg(int id) const;
  const Segment& top_seg(int id) const;
};

// A metrized half-tree with its gluing tables. Lengths are per port; the two ports of an
// edge share a value. Heights and twists are per vertex id.
struct Surface {
  HalfTree skeleton;
  std::map<int, Q> length;
  std::map<int, Q> height;
  std::map<int, Q> twist;  // reduced into [0, circumference)
  RawSurface raw;
};

Surface build(const HalfTree& skeleton, const std::map<int, Q>& lengths,
              const std::map<int, Q>& heights, const std::map<int, Q>& twists);
// Uniform unit metric: every length, height 1, twist 0.
Surface build_unit(const HalfTree& skeleton);
// Random small positive rationals; twists random in [0, C).
Surface random_surface(const HalfTree& skeleton, std::mt19937_64& rng);

Q circumference(const Surface& s, int vertex_id);
Q area(const Surface& s);
Q area(const RawSurface& s);

struct ZeroClass {
  int order = 0;              // cone angle 2 pi (order + 1); 0 means a regular marked point
  std::vector<int> symbols;   // endpoint symbols 2g (left end of saddle g) and 2g+1 (right end)
};

// Corner walk over saddle endpoints. Throws Error if a class has an odd corner count.
std::vector<ZeroClass> zero_classes(const RawSurface& s);

struct SingularityProfile {
  std::vector<int> orders;  // sorted descending
  bool operator==(const SingularityProfile& o) const = default;
};

SingularityProfile singularity_profile(const RawSurface& s, bool forget_marked = false);
SingularityProfile singularity_profile(const Surface& s, bool forget_marked = false);

struct FixedPoint {
  std::string kind;  // "interior", "saddle" or "zero"
  int where = 0;     // cylinder id, glue index, or zero-class index
  Q x, y;            // interior coordinates; for "saddle", x is the offset along it
};

// Rotation by pi on every cylinder, reconstructed from the tables.
struct InvolutionReport {
  bool ok = false;
  std::string failure;                  // names the offending saddle pair or cylinder
  std::map<int, Q> centre;              // cylinder id -> c with top X mapped to bottom c - X
  std::map<int, int> top_to_bottom;     // per cylinder: top seg id -> bottom seg id
  std::vector<int> glue_image;          // J on saddles (glue indices)
  std::vector<FixedPoint> fixed_points;
};

InvolutionReport involution_check(const RawSurface& s);
InvolutionReport involution_check(const Surface& s);

// Interior point of a cylinder.
struct Point {
  int cyl = 0;  // cylinder id
  Q x, y;
};
Point apply_involution(const RawSurface& s, const InvolutionReport& j, const Point& p);

struct WeierstrassReport {
  std::vector<FixedPoint> points;
  int expected = 0;         // 2g + 2
  long long formula = 0;    // sum_v (d_v + 2) - 2|E| + fixed zeros
  long long residual = 0;   // formula - |points|
  int fixed_zeros = 0;
};

WeierstrassReport weierstrass_points(const Surface& s);

// Reads the cylinder diagram back off the gluing tables. Throws Error when the tables do not
// carry a consistent involution.
HalfTree lindsey_tree(const RawSurface& s);
HalfTree lindsey_tree(const Surface& s);

// Surface assembled from a certified raw surface, with ports named by bottom segment ids.
Surface surface_from_raw(const RawSurface& s);

// Skeleton canonical form plus metric comparison after canonical relabelling.
bool isomorphic(const Surface& a, const Surface& b);

// Twist measured from the start of `port` on its vertex instead of from the vertex's first port.
Q twist_from_port(const Surface& s, int port);

}  // namespace hs
