#include <doctest.h>

#include "tqf/hurwitz.hpp"
#include "tqf/parallel.hpp"

using namespace tqf;

namespace {

Rational sigma(i64 n) {
    i64 s = 0;
    for (i64 d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return Rational(s);
}

Rational lambda(i64 n) {
    i64 s = 0;
    for (i64 d = 1; d <= n; ++d)
        if (n % d == 0) s += std::min(d, n / d);
    return Rational(s);
}

Rational h0(i64 D) { return D == 0 ? Rational(-1, 12) : hurwitz(D); }

}  // namespace

TEST_CASE("hurwitz examples") {
    CHECK(hurwitz(3) == Rational(1, 3));
    CHECK(hurwitz(4) == Rational(1, 2));
    CHECK(hurwitz(23) == Rational(3));
    CHECK(hurwitz(5) == Rational(0));
    CHECK(hurwitz(6) == Rational(0));
    CHECK(hurwitz(12) == Rational(4, 3));  // (1,0,3), (2,2,2) weight 1/3
    CHECK(hurwitz(16) == Rational(3, 2));
    CHECK_THROWS_AS(hurwitz(0), DomainError);
}

TEST_CASE("hurwitz lower bound and cache consistency") {
    for (i64 D = 3; D <= 1500; ++D) {
        if (D % 4 == 1 || D % 4 == 2) continue;
        CHECK(hurwitz(D) >= Rational(1, 3));
        CHECK(hurwitz(D) == hurwitz_uncached(D));
    }
}

TEST_CASE("Kronecker-Hurwitz class number relation") {
    // sum_{r^2 <= 4n} H(4n - r^2) = 2 sigma(n) - sum_{d|n} min(d, n/d), H(0) = -1/12.
    for (i64 n = 1; n <= 400; ++n) {
        Rational lhs(0);
        for (i64 r = -2 * isqrt(n) - 1; r <= 2 * isqrt(n) + 1; ++r)
            if (r * r <= 4 * n) lhs += h0(4 * n - r * r);
        CHECK(lhs == Rational(2) * sigma(n) - lambda(n));
    }
}

TEST_CASE("hurwitz cache under concurrent use") {
    std::vector<Rational> seq;
    for (i64 D = 3000; D < 3400; ++D) seq.push_back(hurwitz_uncached(D));
    auto par = parallel_map<Rational>(400, 4, [](std::size_t i) { return hurwitz(3000 + static_cast<i64>(i)); });
    CHECK(par == seq);
}
