#include "tqf/arith.hpp"

#include <algorithm>
#include <ostream>

namespace tqf {

namespace {

i128 abs128(i128 v) { return v < 0 ? -v : v; }

}  // namespace

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 gcd64(i64 a, i64 b) { return static_cast<i64>(gcd128(a, b)); }

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("64-bit multiplication overflow");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
    return r;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
    return r;
}

i64 ipow(i64 b, int e) {
    if (e < 0) throw DomainError("ipow: negative exponent");
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

i64 isqrt(i64 n) {
    if (n < 0) throw DomainError("isqrt: negative argument");
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

i64 inv_mod(i64 a, i64 m) {
    i128 old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        i128 q = old_r / r;
        i128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw DomainError("inv_mod: not invertible");
    return mod(static_cast<i64>(old_s % m), m);
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    // Work with negative values so the minimum is representable.
    i128 x = neg ? v : -v;
    while (x != 0) {
        int d = static_cast<int>(-(x % 10));
        s.push_back(static_cast<char>('0' + d));
        x /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

i64 narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("value exceeds 64 bits: " + to_string(v));
    return static_cast<i64>(v);
}

Rational::Rational(i128 n, i128 d) {
    if (d == 0) throw DomainError("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = n;
    den_ = d;
}

i64 Rational::to_int() const {
    if (den_ != 1) throw DomainError("Rational::to_int: " + str() + " is not an integer");
    return narrow(num_);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return Rational(checked_add(a.num_, b.num_), a.den_);
    i128 g = gcd128(a.den_, b.den_);
    i128 da = a.den_ / g, db = b.den_ / g;
    i128 n = checked_add(checked_mul(a.num_, db), checked_mul(b.num_, da));
    return Rational(n, checked_mul(a.den_, db));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    i128 g1 = gcd128(a.num_, b.den_);
    i128 g2 = gcd128(b.num_, a.den_);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    i128 n = checked_mul(a.num_ / g1, b.num_ / g2);
    i128 d = checked_mul(a.den_ / g2, b.den_ / g1);
    return Rational(n, d);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("Rational: division by zero");
    Rational inv;
    inv.num_ = b.num_ < 0 ? -b.den_ : b.den_;
    inv.den_ = b.num_ < 0 ? -b.num_ : b.num_;
    return a * inv;
}

bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
}

std::string Rational::str() const {
    if (den_ == 1) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
}

Rational Rational::parse(const std::string& s) {
    auto parse_int = [](const std::string& t) -> i128 {
        if (t.empty()) throw DomainError("Rational::parse: empty component");
        size_t i = 0;
        bool neg = false;
        if (t[0] == '-' || t[0] == '+') {
            neg = t[0] == '-';
            i = 1;
        }
        if (i == t.size()) throw DomainError("Rational::parse: bad integer '" + t + "'");
        i128 v = 0;
        for (; i < t.size(); ++i) {
            if (t[i] < '0' || t[i] > '9') throw DomainError("Rational::parse: bad integer '" + t + "'");
            v = checked_add(checked_mul(v, i128(10)), i128(t[i] - '0'));
        }
        return neg ? -v : v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return from_int(parse_int(s));
    return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational rpow(i64 p, int e) {
    if (e >= 0) return Rational::from_int(ipow(p, e));
    return Rational(1, ipow(p, -e));
}

int kronecker(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        i64 r = mod(a, 8);
        if ((v & 1) && (r == 3 || r == 5)) result = -result;
    }
    // Jacobi symbol (a/n) for odd n > 0.
    i64 x = mod(a, n), m = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            i64 r = m % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3) result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw DomainError("valuation: undefined for 0");
    if (p < 2) throw DomainError("valuation: p must be prime");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

Factorization factorize(i64 n) {
    if (n < 1) throw DomainError("factorize: n must be positive");
    Factorization f;
    auto take = [&](i64 p) {
        if (n % p != 0) return;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.push_back({p, e});
    };
    take(2);
    take(3);
    // 6k +- 1 wheel.
    for (i64 p = 5; p * p <= n; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) f.push_back({n, 1});
    return f;
}

std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> ps;
    for (auto [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].e == 1;
}

std::vector<i64> unitary_divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto [p, e] : factorize(n)) {
        i64 q = ipow(p, e);
        size_t k = ds.size();
        for (size_t i = 0; i < k; ++i) ds.push_back(ds[i] * q);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

bool is_fundamental_discriminant(i64 D) {
    if (D == 1 || D == 0) return false;
    auto squarefree = [](i64 m) {
        for (auto [p, e] : factorize(m < 0 ? -m : m))
            if (e > 1) return false;
        return true;
    };
    if (mod(D, 4) == 1) return squarefree(D);
    if (mod(D, 4) != 0) return false;
    i64 m = D / 4;
    return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(m);
}

std::pair<i64, i64> fundamental_part(i64 n) {
    if (n < 1) throw DomainError("fundamental_part: n must be positive");
    // n = m k^2 with m squarefree.
    i64 m = 1, k = 1;
    for (auto [p, e] : factorize(n)) {
        if (e % 2) m *= p;
        k *= ipow(p, e / 2);
    }
    if (m % 4 == 3) return {m, 2 * k};
    return {4 * m, k};
}

int hilbert_symbol(i64 a, i64 b, i64 p) {
    if (a == 0 || b == 0) throw DomainError("hilbert_symbol: zero argument");
    int va = valuation(a, p), vb = valuation(b, p);
    i64 u = a, w = b;
    for (int i = 0; i < va; ++i) u /= p;
    for (int i = 0; i < vb; ++i) w /= p;
    if (p == 2) {
        auto eps = [](i64 x) { return mod((mod(x, 8) - 1) / 2, 2); };
        auto omega = [](i64 x) {
            i64 r = mod(x, 8);
            return ((r * r - 1) / 8) % 2;
        };
        i64 ex = eps(u) * eps(w) + va * omega(w) + vb * omega(u);
        return (ex % 2 == 0) ? 1 : -1;
    }
    int s = ((static_cast<i64>(va) * vb) % 2 == 1 && (p % 4 == 3)) ? -1 : 1;
    if (vb % 2) s *= kronecker(u, p);
    if (va % 2) s *= kronecker(w, p);
    return s;
}

}  // namespace tqf
