#include <doctest.h>

#include <numeric>

#include "tqf/arith.hpp"

using namespace tqf;

namespace {

// Euler's criterion, p odd prime.
int euler(i64 a, i64 p) {
    i64 r = 1, b = mod(a, p);
    for (i64 e = (p - 1) / 2; e > 0; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

}  // namespace

TEST_CASE("kronecker examples") {
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(5, 1) == 1);
    CHECK(kronecker(2, 7) == 1);
    // dyadic table: m = +-1 mod 8 -> 1, m = +-3 mod 8 -> -1
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-11, 2) == -1);
    CHECK(kronecker(-15, 2) == 1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(2, 0) == 0);
}

TEST_CASE("kronecker agrees with Euler's criterion") {
    for (i64 p : {3, 5, 7, 11, 13, 97})
        for (i64 a = -60; a <= 60; ++a) CHECK(kronecker(a, p) == euler(a, p));
}

TEST_CASE("kronecker is multiplicative") {
    for (i64 a = -30; a <= 30; ++a)
        for (i64 b = -30; b <= 30; ++b)
            for (i64 n : {1, 2, 3, 8, 15, 21, 40}) CHECK(kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n));
    for (i64 a = -30; a <= 30; ++a)
        for (i64 m = 1; m <= 20; ++m)
            for (i64 n = 1; n <= 20; ++n) CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
}

TEST_CASE("valuation") {
    CHECK(valuation(12, 2) == 2);
    CHECK(valuation(12, 3) == 1);
    CHECK(valuation(7, 5) == 0);
    CHECK(valuation(-81, 3) == 4);
    CHECK_THROWS_AS(valuation(0, 2), DomainError);
}

TEST_CASE("factorize") {
    CHECK(factorize(1).empty());
    CHECK(factorize(35152) == Factorization{{2, 4}, {13, 3}});
    CHECK(factorize(60) == Factorization{{2, 2}, {3, 1}, {5, 1}});
    CHECK(factorize(823543) == Factorization{{7, 7}});
    for (i64 n = 1; n <= 3000; ++n) {
        i64 prod = 1, last = 1;
        for (auto [p, e] : factorize(n)) {
            CHECK(p > last);
            CHECK(is_prime(p));
            CHECK(e >= 1);
            last = p;
            prod *= ipow(p, e);
        }
        CHECK(prod == n);
    }
}

TEST_CASE("unitary divisors") {
    CHECK(unitary_divisors(12) == std::vector<i64>{1, 3, 4, 12});
    CHECK(unitary_divisors(8) == std::vector<i64>{1, 8});
    CHECK(unitary_divisors(30) == std::vector<i64>{1, 2, 3, 5, 6, 10, 15, 30});
    for (i64 n = 1; n <= 2000; ++n) {
        std::vector<i64> brute;
        for (i64 d = 1; d <= n; ++d)
            if (n % d == 0 && std::gcd(d, n / d) == 1) brute.push_back(d);
        CHECK(unitary_divisors(n) == brute);
        CHECK(brute.size() == (std::size_t(1) << factorize(n).size()));
    }
}

TEST_CASE("fundamental part") {
    CHECK(fundamental_part(1) == std::pair<i64, i64>{4, 1});
    CHECK(fundamental_part(9) == std::pair<i64, i64>{4, 3});
    CHECK(fundamental_part(2) == std::pair<i64, i64>{8, 1});
    CHECK(fundamental_part(44) == std::pair<i64, i64>{11, 4});
    for (i64 n = 1; n <= 3000; ++n) {
        auto [n0, n1] = fundamental_part(n);
        CHECK(n0 * n1 * n1 == 4 * n);
        CHECK(is_fundamental_discriminant(-n0));
        // maximality: no larger square leaves a discriminant
        for (i64 k = 2; k * k <= n0; ++k)
            if (n0 % (k * k) == 0) CHECK_FALSE(is_fundamental_discriminant(-n0 / (k * k)));
    }
}

TEST_CASE("rational arithmetic") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK(Rational(-2, 3).den() == 3);
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(7, 2).str() == "7/2");
    CHECK(Rational(-4).str() == "-4");
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(rpow(3, -2) == Rational(1, 9));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), DomainError);
    CHECK_THROWS_AS(Rational(1, 2).to_int(), DomainError);
}

TEST_CASE("checked arithmetic overflows loudly") {
    CHECK_THROWS_AS(checked_mul(i64(1) << 40, i64(1) << 40), OverflowError);
    CHECK_THROWS_AS(ipow(10, 19), OverflowError);
    CHECK(ipow(7, 7) == 823543);
    CHECK(isqrt(999999999999) == 999999);
    CHECK(is_square(1'000'000'000'000));
}

TEST_CASE("hilbert symbol") {
    CHECK(hilbert_symbol(-1, -1, 2) == -1);
    CHECK(hilbert_symbol(-1, -1, 3) == 1);
    CHECK(hilbert_symbol(3, 3, 3) == -1);  // (3,3)_3 = (3,-1)_3 = (-1/3)
    CHECK(hilbert_symbol(2, 3, 2) == -1);
    // product formula with (a,b)_inf = -1 iff both negative
    for (i64 a : {-7, -3, -1, 2, 5, 6, -10})
        for (i64 b : {-5, -2, 3, 7, -6, 11}) {
            int prod = (a < 0 && b < 0) ? -1 : 1;
            for (i64 p : prime_divisors(2 * std::abs(a) * std::abs(b))) prod *= hilbert_symbol(a, b, p);
            CHECK(prod == 1);
        }
}
