#pragma once
// Exact integer and rational primitives.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tqf {

using i64 = std::int64_t;
using i128 = __int128;

// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Arithmetic result does not fit the fixed-width representation.
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

i128 gcd128(i128 a, i128 b);
i64 gcd64(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i128 checked_mul(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);
i64 ipow(i64 b, int e);
i64 isqrt(i64 n);
bool is_square(i64 n);
i64 mod(i64 a, i64 m);          // result in [0, m)
i64 inv_mod(i64 a, i64 m);      // requires gcd(a, m) = 1
std::string to_string(i128 v);
i64 narrow(i128 v);             // throws OverflowError if v does not fit

class Rational {
public:
    Rational() = default;
    Rational(i64 n) : num_(n), den_(1) {}  // NOLINT(implicit)
    Rational(i128 n, i128 d);

    static Rational from_int(i128 n) { Rational r; r.num_ = n; return r; }

    i128 num() const { return num_; }
    i128 den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    i64 to_int() const;  // throws DomainError when not integral

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // "p/q", or "p" when the denominator is 1.
    std::string str() const;
    static Rational parse(const std::string& s);

private:
    i128 num_ = 0;
    i128 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// p^e for integer e of either sign.
Rational rpow(i64 p, int e);

// Kronecker symbol (a/n).
int kronecker(i64 a, i64 n);

// Largest e with p^e | n. n = 0 is a DomainError.
int valuation(i64 n, i64 p);

struct PrimePower {
    i64 p;
    int e;
    bool operator==(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

Factorization factorize(i64 n);
std::vector<i64> prime_divisors(i64 n);
bool is_prime(i64 n);

// Divisors d of n with gcd(d, n/d) = 1, ascending.
std::vector<i64> unitary_divisors(i64 n);

// 4n = n0 * n1^2 with -n0 a fundamental discriminant.
std::pair<i64, i64> fundamental_part(i64 n);

bool is_fundamental_discriminant(i64 D);

// Hilbert symbol (a, b)_p over Q_p for nonzero integers, p prime.
int hilbert_symbol(i64 a, i64 b, i64 p);

}  // namespace tqf
