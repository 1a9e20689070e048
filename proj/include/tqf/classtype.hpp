#pragma once
// Class numbers and type numbers of orders of level (N1, N2).

#include <stdexcept>
#include <string>
#include <vector>

#include "tqf/eisenstein_h.hpp"

namespace tqf {

// A class or type number that came out non-integral.
struct IntegralityError : std::logic_error {
    using std::logic_error::logic_error;
};

// Which r values enter the inner sum for the unitary divisor n = 4.
enum class RRange {
    Display,    // all multiples r of n with r^2 <= 4n, so r = -4, 0, 4 at n = 4
    TraceZero,  // r = 0 only once n >= 4
};

// The variant pinned against the level-(N1,4) rows of the published table.
constexpr RRange kPinnedRRange = RRange::TraceZero;

struct TypeTerm {
    i64 n;
    i64 r;
    Rational h_value;
    Rational factor;
};

struct TypeNumberBreakdown {
    Level level;
    std::vector<TypeTerm> terms;
    Rational total;
    std::string dump() const;
};

i64 b_factor(i64 n, i64 p);
i64 c_factor(i64 n, i64 p);

// prod_{p | n} (1 - (Delta(-4n)/p)/p) / (B_p(n) C_p(n)).
Rational local_factor(i64 n);

i64 class_number(const Level& level);
Rational class_number_rational(const Level& level);

TypeNumberBreakdown type_number_breakdown(const Level& level, RRange range = kPinnedRRange);
i64 type_number(const Level& level, RRange range = kPinnedRRange);

}  // namespace tqf
