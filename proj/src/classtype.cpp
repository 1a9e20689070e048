#include "tqf/classtype.hpp"

#include <sstream>

namespace tqf {

std::string TypeNumberBreakdown::dump() const {
    std::ostringstream os;
    os << "type number breakdown for level " << level.str() << "\n";
    for (const auto& t : terms)
        os << "  n=" << t.n << " r=" << t.r << " H=" << t.h_value << " factor=" << t.factor << "\n";
    os << "  total=" << total << "\n";
    return os.str();
}

i64 b_factor(i64 n, i64 p) {
    if (n % p != 0) throw DomainError("b_factor: p does not divide n");
    int v = valuation(n, p);
    if (v % 2 == 0) return (p + 1) * ipow(p, v / 2 - 1);
    return ipow(p, (v - 1) / 2);
}

i64 c_factor(i64 n, i64 p) {
    if (n % p != 0) throw DomainError("c_factor: p does not divide n");
    if (p != 2 || n % 4 != 0) return 1;
    i64 delta = -fundamental_part(n).first;
    return mod(delta, 8) == 5 ? 2 : 1;
}

Rational local_factor(i64 n) {
    i64 delta = -fundamental_part(n).first;
    Rational f(1);
    for (i64 p : prime_divisors(n)) {
        Rational num = Rational(1) - Rational(kronecker(delta, p), p);
        f *= num / Rational(b_factor(n, p) * c_factor(n, p));
    }
    return f;
}

Rational class_number_rational(const Level& level) {
    return h_level(4, level) / Rational(2) + h_level(3, level) + h_level(0, level);
}

i64 class_number(const Level& level) {
    Rational h = class_number_rational(level);
    if (!h.is_integer())
        throw IntegralityError("class number of level " + level.str() + " is non-integral: " + h.str());
    return h.to_int();
}

TypeNumberBreakdown type_number_breakdown(const Level& level, RRange range) {
    TypeNumberBreakdown b;
    b.level = level;
    Rational sum(0);
    for (i64 n : unitary_divisors(level.product())) {
        Rational factor = local_factor(n);
        std::vector<i64> rs;
        if (range == RRange::TraceZero && n >= 4) {
            rs.push_back(0);
        } else {
            for (i64 r = 0; r * r <= 4 * n; r += n) {
                rs.push_back(r);
                if (r != 0) rs.push_back(-r);
            }
        }
        for (i64 r : rs) {
            Rational h = h_level(4 * n - r * r, level);
            b.terms.push_back({n, r, h, factor});
            sum += h * factor;
        }
    }
    b.total = sum / Rational(ipow(2, level.omega() + 1));
    return b;
}

i64 type_number(const Level& level, RRange range) {
    TypeNumberBreakdown b = type_number_breakdown(level, range);
    if (!b.total.is_integer())
        throw IntegralityError("type number of level " + level.str() + " is non-integral\n" + b.dump());
    return b.total.to_int();
}

}  // namespace tqf
