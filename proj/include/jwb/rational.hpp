#ifndef JWB_RATIONAL_HPP
#define JWB_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace jwb {

// Exact rational scalar. All arithmetic in the workbench bottoms out here.
using Rat = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses "p", "-p" or "p/q" (q > 0 after canonicalization).
inline Rat rat_parse(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error("bad rational literal: '" + s + "'");
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// Canonical form, "/1" omitted.
inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

inline Rat rat_int(long v) { return Rat(v); }

}  // namespace jwb

#endif
