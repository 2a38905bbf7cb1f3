#pragma once

#include <map>
#include <string>
#include <vector>

#include "hypsurf/surface.hpp"

namespace hs {

// One pass through a cylinder: enters at a bottom offset, leaves at a top coordinate.
struct Crossing {
  int cyl = 0;
  Q entry;  // upward: bottom offset; downward: top coordinate
  Q exit;   // upward: top coordinate; downward: bottom offset
};

struct Trajectory {
  int start_cyl = 0;
  Q start;                         // bottom offset (upward) or top coordinate (downward)
  std::vector<Crossing> crossings;
  bool closed = false;             // false: stopped on a zero or marked point
  Q length;                        // total vertical length travelled
};

// Upward trace from the bottom point (cyl, x). Throws Error if the start is a junction.
// If max_crossings > 0 the trace also stops after that many crossings (closed stays false).
Trajectory trace_vertical(const RawSurface& s, int cyl, const Q& x, int max_crossings = 0);
// Downward trace from the top point (cyl, X).
Trajectory trace_downward(const RawSurface& s, int cyl, const Q& X, int max_crossings = 0);

// Piece of a vertical cylinder resting on one horizontal cylinder's bottom.
struct BottomInterval {
  int cyl = 0;
  Q start, length;
};

struct VerticalCylinder {
  Q width;
  Q core;                           // sum of crossed heights with multiplicity
  std::map<int, Q> crossings;       // horizontal cylinder id -> width times multiplicity
  std::vector<BottomInterval> intervals;  // in flow order
};

struct VerticalDecomposition {
  std::vector<VerticalCylinder> cylinders;
  std::map<int, std::vector<Q>> breakpoints;  // per cylinder id, sorted bottom offsets
  std::map<int, Q> circumference;
};

VerticalDecomposition vertical_decomposition(const RawSurface& s);
VerticalDecomposition vertical_decomposition(const Surface& s);

// Index of the vertical cylinder whose bottom interval contains the regular bottom point.
int vertical_cylinder_at(const VerticalDecomposition& d, int cyl, const Q& x);

// The vertical cylinder through the regular bottom point (cyl, x), traced locally. Intervals start
// at the strip's left edge in each crossed cylinder. Throws Error if the leaf is not closed.
VerticalCylinder vertical_cylinder_through(const RawSurface& s, int cyl, const Q& x);

// Image of each vertical cylinder under rotation by pi (same indexing as d.cylinders).
std::vector<int> vertical_involution(const RawSurface& s, const VerticalDecomposition& d);

// |C cap V| / |C| for the union V of the listed vertical cylinders.
Q cylinder_proportion(const RawSurface& s, const VerticalDecomposition& d, const std::vector<int>& members,
                      int cyl);

struct StandardPosition {
  int c = 0, d = 0;                   // the two horizontal cylinders
  std::map<int, Q> delta;             // twist change per cylinder, in [0, circumference)
  bool transverse = false;
  Q slope;                            // transverse: horizontal run per unit height (0 otherwise)
  Surface adjusted;                   // s with the deltas applied
  VerticalCylinder cylinder;          // traced on `adjusted`, sheared by -slope when transverse
};

// `port` is a full-edge port on C whose mate lies on D.
StandardPosition standard_position(const Surface& s, int port, bool transverse = false);

// s with each listed twist shifted by the given amount.
Surface shift_twists(const Surface& s, const std::map<int, Q>& delta);

}  // namespace hs
