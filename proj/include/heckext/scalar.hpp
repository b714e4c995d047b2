#pragma once

// Exact rational scalars and the library's exception types.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace heckext {

/// The base field. Every coordinate, parameter and matrix entry lives here.
using Scalar = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "p/q" in lowest terms, or "p" when q == 1.
inline std::string to_string(const Scalar& x) { return x.get_str(); }

inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digits_before = false, digits_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash || !digits_before) throw bad();
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digits_after : digits_before) = true;
    } else {
      throw bad();
    }
  }
  if (!digits_before || (seen_slash && !digits_after)) throw bad();
  if (s[0] == '+') s.erase(0, 1);
  Scalar q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline bool is_integer(const Scalar& x) { return x.get_den() == 1; }

}  // namespace heckext
