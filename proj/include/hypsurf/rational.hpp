#pragma once

#include <gmpxx.h>

#include <string>

namespace hs {

using Q = mpq_class;

// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on bad input or zero denominator.
Q parse_q(const std::string& s);
std::string to_string(const Q& q);

// Reduces x into [0, m). Requires m > 0.
Q mod_pos(const Q& x, const Q& m);

// Canonical a/b; mpq_class(a, b) alone does not reduce.
inline Q frac(long a, long b) {
  Q q(a, b);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

}  // namespace hs
