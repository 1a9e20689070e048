#pragma once
// Hurwitz class numbers by enumeration of reduced binary forms.

#include "tqf/arith.hpp"

namespace tqf {

// H(D) for D >= 1; zero when D = 1, 2 mod 4. D = 0 is a DomainError.
// Values are memoized in a process-wide cache that is safe to share
// between threads.
Rational hurwitz(i64 D);

// Same count without the cache.
Rational hurwitz_uncached(i64 D);

}  // namespace tqf
