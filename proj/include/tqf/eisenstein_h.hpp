#pragma once
// Modified class numbers H^(N1,N2)(D) attached to a level (N1, N2).

#include <string>
#include <vector>

#include "tqf/arith.hpp"

namespace tqf {

struct Level {
    i64 n1 = 1;
    i64 n2 = 1;
    Factorization f1;
    Factorization f2;

    i64 product() const { return n1 * n2; }
    // Distinct primes of N1*N2, ascending.
    std::vector<i64> primes() const;
    // N1' = product of the primes of N1.
    i64 n1_radical() const;
    int omega() const { return static_cast<int>(f1.size() + f2.size()); }
    bool in_n1(i64 p) const;
    int v1(i64 p) const;
    int v2(i64 p) const;
    std::string str() const;  // "(N1,N2)"
};

// Validates gcd(N1,N2) = 1, odd exponents in N1 and an odd number of
// primes in N1. Throws DomainError naming the violated condition.
Level admissible_level(i64 n1, i64 n2);

struct SquarePart {
    i64 f = 1;
    // (p, p-power dividing f) for every p | N1*N2, including trivial ones.
    std::vector<std::pair<i64, i64>> per_prime;
    i64 f_p(i64 p) const;
};

SquarePart square_part(i64 D, const Level& level);

// A_{N1N2,p}(D), A_{N1N2,p,1}(D) or A_{N1N2,p,2}(D) depending on where p sits.
Rational a_factor(i64 D, i64 p, const Level& level);

// H^(N1,N2)(D) for D >= 0.
Rational h_level(i64 D, const Level& level);

// Closed form valid for squarefree N1*N2, evaluated independently of
// a_factor.
Rational h_level_squarefree(i64 D, const Level& level);

}  // namespace tqf
