#include "tqf/eisenstein_h.hpp"

#include <algorithm>

#include "tqf/hurwitz.hpp"

namespace tqf {

std::vector<i64> Level::primes() const {
    std::vector<i64> ps;
    for (auto [p, e] : f1) ps.push_back(p);
    for (auto [p, e] : f2) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    return ps;
}

i64 Level::n1_radical() const {
    i64 r = 1;
    for (auto [p, e] : f1) r *= p;
    return r;
}

bool Level::in_n1(i64 p) const { return n1 % p == 0; }

int Level::v1(i64 p) const { return valuation(n1, p); }

int Level::v2(i64 p) const { return valuation(n2, p); }

std::string Level::str() const { return "(" + std::to_string(n1) + "," + std::to_string(n2) + ")"; }

Level admissible_level(i64 n1, i64 n2) {
    if (n1 < 1 || n2 < 1) throw DomainError("level: N1 and N2 must be positive");
    if (gcd64(n1, n2) != 1) throw DomainError("level: gcd(N1,N2) must be 1");
    Level L;
    L.n1 = n1;
    L.n2 = n2;
    L.f1 = factorize(n1);
    L.f2 = factorize(n2);
    for (auto [p, e] : L.f1)
        if (e % 2 == 0)
            throw DomainError("level: exponent of " + std::to_string(p) + " in N1 is even");
    if (L.f1.size() % 2 == 0) throw DomainError("level: N1 must have an odd number of prime factors");
    checked_mul(n1, n2);
    return L;
}

i64 SquarePart::f_p(i64 p) const {
    for (auto [q, fp] : per_prime)
        if (q == p) return fp;
    return 1;
}

SquarePart square_part(i64 D, const Level& level) {
    if (D <= 0 || D % 4 == 1 || D % 4 == 2)
        throw DomainError("square_part: D must be a positive integer = 0,3 mod 4");
    SquarePart sp;
    for (i64 p : level.primes()) {
        i64 fp = 1;
        i64 rest = D / (sp.f * sp.f);
        while (rest % (p * p) == 0) {
            i64 q = rest / (p * p);
            if (q % 4 == 1 || q % 4 == 2) break;
            rest = q;
            fp *= p;
        }
        sp.f *= fp;
        sp.per_prime.push_back({p, fp});
    }
    return sp;
}

Rational a_factor(i64 D, i64 p, const Level& level) {
    i64 N = level.product();
    if (N % p != 0) throw DomainError("a_factor: p does not divide N1*N2");
    SquarePart sp = square_part(D, level);
    i64 fp = sp.f_p(p);
    i64 Dq = D / (sp.f * sp.f);
    int chi = kronecker(-Dq, p);
    int v = valuation(N, p);
    int vpf = 1 + 2 * valuation(fp, p);
    bool n1side = level.in_n1(p);
    if (vpf < v) {
        if (Dq % p == 0) return Rational(0);
        i64 f2 = fp * fp;
        return Rational(n1side ? f2 * (1 - chi) : f2 * (1 + chi));
    }
    if (n1side) return Rational(ipow(p, level.v1(p) - 1) * (1 - chi));
    int w = level.v2(p);
    i64 pw1 = ipow(p, w - 1);
    i64 num;
    if (w % 2 == 1) {
        num = 2 * ipow(p, (w + 1) / 2) * fp - pw1 * (p + 1) -
              chi * (2 * ipow(p, (w - 1) / 2) * fp - pw1 * (p + 1));
    } else {
        num = (ipow(p, w / 2) * fp - pw1) * (p + 1) - chi * (ipow(p, w / 2 - 1) * fp - pw1) * (p + 1);
    }
    return Rational(num, p - 1);
}

Rational h_level(i64 D, const Level& level) {
    if (D < 0) throw DomainError("h_level: D must be nonnegative");
    if (D == 0) {
        Rational h(level.product(), 12);
        for (auto [p, e] : level.f1) h *= Rational(p - 1, p);
        for (auto [p, e] : level.f2) h *= Rational(p + 1, p);
        return h;
    }
    if (D % 4 == 1 || D % 4 == 2) return Rational(0);
    SquarePart sp = square_part(D, level);
    Rational prod(1);
    for (i64 p : level.primes()) {
        prod *= a_factor(D, p, level);
        if (prod == Rational(0)) return prod;
    }
    return hurwitz(D / (sp.f * sp.f)) * prod;
}

Rational h_level_squarefree(i64 D, const Level& level) {
    for (auto [p, e] : level.f1)
        if (e != 1) throw DomainError("h_level_squarefree: N1 not squarefree");
    for (auto [p, e] : level.f2)
        if (e != 1) throw DomainError("h_level_squarefree: N2 not squarefree");
    if (D % 4 == 1 || D % 4 == 2) return Rational(0);
    SquarePart sp = square_part(D, level);
    i64 Dq = D / (sp.f * sp.f);
    Rational h = hurwitz(Dq);
    for (auto [p, e] : level.f1) h *= Rational(1 - kronecker(-Dq, p));
    for (auto [p, e] : level.f2) {
        i64 fp = sp.f_p(p);
        int chi = kronecker(-Dq, p);
        h *= Rational(2 * p * fp - p - 1 - chi * (2 * fp - p - 1), p - 1);
    }
    return h;
}

}  // namespace tqf
