#pragma once

#include <doctest.h>

#include "ramseyforge/error.hpp"
#include "ramseyforge/structure.hpp"

namespace th {

using namespace ramseyforge;

inline Signature arrow_sig() { return Signature({{"arrow", 2}}); }

inline Structure arcs(int n, std::vector<Tuple> ts) { return Structure(arrow_sig(), n, {ts}); }
inline Structure cycle3() { return arcs(3, {{0, 1}, {1, 2}, {2, 0}}); }
inline Structure transitive3() { return arcs(3, {{0, 1}, {0, 2}, {1, 2}}); }
inline Structure arc() { return arcs(2, {{0, 1}}); }
inline Structure pure_set(int n) { return arcs(n, {}); }

template <class F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an exception");
  return ErrorKind::ParseError;
}

}  // namespace th
