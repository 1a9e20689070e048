#include "tqf/hurwitz.hpp"

#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace tqf {

Rational hurwitz_uncached(i64 D) {
    if (D <= 0) throw DomainError("hurwitz: D must be positive");
    i64 r4 = D % 4;
    if (r4 == 1 || r4 == 2) return Rational(0);
    // Reduced forms (a, b, c): |b| <= a <= c, b^2 - 4ac = -D,
    // with b >= 0 when |b| = a or a = c. Weighted by 1/2 for (a,0,a)
    // and 1/3 for (a,a,a).
    i64 sixes = 0;  // count in units of 1/6
    i64 amax = isqrt(D / 3);
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            if (((b % 2) + 2) % 2 != D % 2) continue;
            i64 num = b * b + D;
            if (num % (4 * a) != 0) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;
            if (b == 0 && a == c)
                sixes += 3;
            else if (b == a && a == c)
                sixes += 2;
            else
                sixes += 6;
        }
    }
    return Rational(sixes, 6);
}

namespace {

struct Cache {
    std::shared_mutex mu;
    std::unordered_map<i64, Rational> values;
};

Cache& cache() {
    static Cache c;
    return c;
}

}  // namespace

Rational hurwitz(i64 D) {
    Cache& c = cache();
    {
        std::shared_lock lock(c.mu);
        auto it = c.values.find(D);
        if (it != c.values.end()) return it->second;
    }
    Rational h = hurwitz_uncached(D);
    std::unique_lock lock(c.mu);
    c.values.emplace(D, h);
    return h;
}

}  // namespace tqf
