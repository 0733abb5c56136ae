#pragma once

#include "onecut/numeric.hpp"

#include <doctest.h>

#include <string>

namespace onecut::testing {

inline bool close(const Real& x, const Real& y, const Real& tol) { return abs(x - y) <= tol; }

inline bool rel_close(const Real& x, const Real& y, const Real& tol) {
  return abs(x - y) <= tol * max(abs(x), abs(y));
}

inline std::string show(const Real& x) { return to_string(x, 25); }

}  // namespace onecut::testing

#define CHECK_CLOSE(x, y, tol)                                                                  \
  CHECK_MESSAGE(::onecut::testing::close((x), (y), (tol)),                                     \
                ::onecut::testing::show(x) << " vs " << ::onecut::testing::show(y))
#define CHECK_REL(x, y, tol)                                                                    \
  CHECK_MESSAGE(::onecut::testing::rel_close((x), (y), (tol)),                                 \
                ::onecut::testing::show(x) << " vs " << ::onecut::testing::show(y))
