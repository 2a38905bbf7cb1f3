#include "hypsurf/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hs {

Q parse_q(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw std::invalid_argument("bad rational: " + s);
  }
  Q q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

Q mod_pos(const Q& x, const Q& m) {
  Q k = x / m;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), k.get_num_mpz_t(), k.get_den_mpz_t());
  Q r = x - Q(f) * m;
  return r;
}

}  // namespace hs
