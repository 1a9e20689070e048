#include "tqf/densities.hpp"

#include <algorithm>
#include <vector>

namespace tqf {

namespace {

int vp128(i128 x, i64 p, int cap) {
    if (x == 0) return cap;
    int e = 0;
    while (x % p == 0 && e < cap) {
        x /= p;
        ++e;
    }
    return e;
}

i128 pow128(i64 p, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, i128(p));
    return r;
}

struct Split {
    int e;
    i64 m;
};

Split split_p(i64 n, i64 p) {
    if (n < 1) throw DomainError("density: n must be positive");
    Split s{0, n};
    while (s.m % p == 0) {
        s.m /= p;
        ++s.e;
    }
    return s;
}

// n = 4^l m with 4 not dividing m.
Split split_4(i64 n) {
    if (n < 1) throw DomainError("density: n must be positive");
    Split s{0, n};
    while (s.m % 4 == 0) {
        s.m /= 4;
        ++s.e;
    }
    return s;
}

void require_odd_prime(i64 p) {
    if (p < 3 || !is_prime(p)) throw DomainError("density: p must be an odd prime");
}

Rational pw(i64 p, int e) { return rpow(p, e); }

}  // namespace

Rational density_count(const DensityQuery& q) {
    const i64 p = q.p;
    if (!is_prime(p)) throw DomainError("density_count: p must be prime");
    if (q.n < 1) throw DomainError("density_count: n must be positive");
    if (q.form.disc() == 0) throw DomainError("density_count: degenerate form");
    const Mat3 M = q.form.gram();
    const int vn = valuation(q.n, p);
    constexpr int kMaxDepth = 60;
    constexpr int kInf = 1 << 20;

    struct Cell {
        Vec3 v;
        int k;
    };
    Rational total;
    std::vector<Cell> stack{{{0, 0, 0}, 0}};
    while (!stack.empty()) {
        Cell c = stack.back();
        stack.pop_back();
        const int k = c.k;
        if (k > kMaxDepth) throw OverflowError("density_count: cell depth cap exceeded");
        int j = kInf;
        for (i64 x : c.v) j = std::min(j, vp128(x, p, kInf));
        // Every point of the cell has valuation >= min(j, k), so f takes
        // values of valuation >= 2 min(j, k) there.
        if (2 * std::min(j, k) > vn) continue;
        i128 g[3];
        int gamma = kInf;
        for (int i = 0; i < 3; ++i) {
            g[i] = 0;
            for (int l = 0; l < 3; ++l) g[i] = checked_add(g[i], checked_mul(i128(M[i][l]), i128(c.v[l])));
            gamma = std::min(gamma, vp128(g[i], p, kInf));
        }
        i128 fv = 0;
        {
            const auto& f = q.form;
            const i128 x = c.v[0], y = c.v[1], z = c.v[2];
            fv = checked_add(fv, checked_mul(i128(f.a), checked_mul(x, x)));
            fv = checked_add(fv, checked_mul(i128(f.b), checked_mul(y, y)));
            fv = checked_add(fv, checked_mul(i128(f.c), checked_mul(z, z)));
            fv = checked_add(fv, checked_mul(i128(f.r), checked_mul(y, z)));
            fv = checked_add(fv, checked_mul(i128(f.s), checked_mul(x, z)));
            fv = checked_add(fv, checked_mul(i128(f.t), checked_mul(x, y)));
        }
        const i128 diff = fv - q.n;
        if (gamma < k) {
            if (diff % pow128(p, k + gamma) == 0) total += pw(p, gamma - 2 * k);
            continue;
        }
        // f is constant mod p^{2k} on the cell.
        if (k > 0 && diff % pow128(p, 2 * k) != 0) continue;
        const i64 step = narrow(pow128(p, k));
        for (i64 a = 0; a < p; ++a)
            for (i64 b = 0; b < p; ++b)
                for (i64 d = 0; d < p; ++d)
                    stack.push_back({{c.v[0] + a * step, c.v[1] + b * step, c.v[2] + d * step}, k + 1});
    }
    return total;
}

Rational density_count_mod(const DensityQuery& q, int t) {
    const i64 p = q.p;
    const i64 P = ipow(p, t);
    const auto& f = q.form;
    auto md = [P](i128 x) { return static_cast<i64>(((x % P) + P) % P); };
    // Reduce the coefficients once; every product below stays under P^2.
    const i64 a = md(f.a), b = md(f.b), c = md(f.c), r = md(f.r), s = md(f.s), tt = md(f.t);
    const i64 target = md(q.n);
    i64 count = 0;
    for (i64 z = 0; z < P; ++z) {
        for (i64 y = 0; y < P; ++y) {
            const i64 C = md(i128(b) * y % P * y + i128(c) * z % P * z + i128(r) * y % P * z + P - target);
            const i64 L = md(i128(tt) * y + i128(s) * z);
            i64 val = C;  // a x^2 + L x + C at x = 0
            for (i64 x = 0; x < P; ++x) {
                if (val == 0) ++count;
                // step x -> x + 1 adds a(2x + 1) + L
                val = md(i128(val) + i128(a) * ((2 * x + 1) % P) + L);
            }
        }
    }
    return Rational(i128(count), i128(P) * P);
}

Rational density_count_stabilized(const DensityQuery& q, i64 max_work) {
    const i64 p = q.p;
    const i64 d = q.form.disc();
    if (d == 0) throw DomainError("density_count: degenerate form");
    int t = valuation(d < 0 ? -d : d, p) + valuation(q.n, p) + 2 + (p == 2 ? 1 : 0);
    auto work = [&](int tt) {
        i128 P = pow128(p, tt);
        return P * P * P;
    };
    if (work(t + 1) > max_work) throw BudgetExceeded("density_count_stabilized: p^{3t} over budget");
    Rational prev = density_count_mod(q, t);
    for (;;) {
        ++t;
        if (t > 20 || work(t) > max_work) throw BudgetExceeded("density_count_stabilized: no stabilization within budget");
        Rational cur = density_count_mod(q, t);
        if (cur == prev) return cur;
        prev = cur;
    }
}

i64 least_nonresidue(i64 p) {
    require_odd_prime(p);
    for (i64 e = 2;; ++e)
        if (kronecker(e, p) == -1) return e;
}

TernaryForm siegel_form() { return {-1, 0, 0, -1, 0, 0}; }

TernaryForm aniso_odd_form(i64 p, int u) {
    const i64 e = least_nonresidue(p);
    const i64 q = ipow(p, 2 * u + 1);
    return {-e, q, checked_mul(-e, q), 0, 0, 0};
}

TernaryForm iso_odd_form(i64 p, int v) {
    require_odd_prime(p);
    return {-1, 0, 0, -ipow(p, v), 0, 0};
}

TernaryForm aniso_two_form(int u) {
    const i64 q = ipow(2, 2 * u + 3);
    return {3, -q, -q, -q, 0, 0};
}

TernaryForm iso_two_form(int v) { return {-1, 0, 0, -ipow(2, v + 2), 0, 0}; }

Rational density_siegel_unramified(i64 p, i64 n) {
    require_odd_prime(p);
    auto [e, l] = split_p(n, p);
    const int k = e / 2;
    const Rational one_plus = Rational(1) + Rational(1, p);
    if (e % 2 == 0) return one_plus + pw(p, -(k + 1)) * Rational(kronecker(-l, p) - 1);
    return one_plus * (Rational(1) - pw(p, -(k + 1)));
}

Rational density_aniso_odd(i64 p, int u, i64 n) {
    require_odd_prime(p);
    if (u < 0) throw DomainError("density_aniso_odd: u must be nonnegative");
    auto [e, m] = split_p(n, p);
    const int k = e / 2;
    if (e % 2 == 1) {
        if (k < u) return Rational(0);
        return pw(p, 2 * u - k) * (Rational(1) + Rational(1, p));
    }
    const Rational chi(1 - kronecker(-m, p));
    if (k <= u) return pw(p, k) * chi;
    return pw(p, 2 * u - k) * chi;
}

Rational density_iso_odd(i64 p, int v, i64 n) {
    require_odd_prime(p);
    if (v < 0) throw DomainError("density_iso_odd: v must be nonnegative");
    auto [e, m] = split_p(n, p);
    const int k = e / 2;
    const Rational chi(kronecker(-m, p));
    if (v % 2 == 0) {
        if (e % 2 == 1) {
            if (e < v) return Rational(0);
            return pw(p, v / 2 - 1) + pw(p, v / 2) - pw(p, v - k - 2) - pw(p, v - k - 1);
        }
        if (e < v) return pw(p, k) * (Rational(1) + chi);
        return pw(p, v / 2) + pw(p, v / 2 - 1) + chi * pw(p, v - k - 1) - pw(p, v - k - 1);
    }
    if (e % 2 == 1) {
        if (e < v) return Rational(0);
        return Rational(2) * pw(p, (v - 1) / 2) - pw(p, v - k - 2) - pw(p, v - k - 1);
    }
    if (e < v) return pw(p, k) * (Rational(1) + chi);
    return Rational(2) * pw(p, (v - 1) / 2) - pw(p, v - k - 1) + chi * pw(p, v - k - 1);
}

Rational density_aniso_two(int u, i64 n) {
    if (u < 0) throw DomainError("density_aniso_two: u must be nonnegative");
    auto [l, m] = split_4(n);
    const i64 m8 = m % 8;
    if (2 * l <= 2 * u) return m8 == 3 ? pw(2, l + 2) : Rational(0);
    if (m8 == 3) return pw(2, 2 * u + 2 - l);
    if (m8 == 7) return Rational(0);
    return Rational(3) * pw(2, 2 * u + 1 - l);
}

Rational density_iso_two(int v, i64 n) {
    if (v < 0) throw DomainError("density_iso_two: v must be nonnegative");
    auto [l, m] = split_4(n);
    const i64 m8 = m % 8;
    if (v % 2 == 0) {
        if (2 * l <= v - 2) return m8 == 7 ? pw(2, l + 2) : Rational(0);
        if (2 * l == v) {
            if (m8 == 7) return Rational(3) * pw(2, l);
            if (m8 == 3) return pw(2, l);
            return Rational(0);
        }
        if (m8 == 7) return Rational(3) * pw(2, v / 2);
        if (m8 == 3) return Rational(3) * pw(2, v / 2) - pw(2, v + 1 - l);
        return Rational(3) * (pw(2, v / 2) - pw(2, v - l));
    }
    if (2 * l < v + 1) return m8 == 7 ? pw(2, l + 2) : Rational(0);
    if (m8 == 7) return pw(2, (v + 3) / 2);
    if (m8 == 3) return pw(2, (v + 3) / 2) - pw(2, v + 1 - l);
    return pw(2, (v + 3) / 2) - Rational(3) * pw(2, v - l);
}

TernaryForm dyadic_base_form(DyadicBase kind) {
    switch (kind) {
        case DyadicBase::XYZ: return {-1, 0, 0, -1, 0, 0};
        case DyadicBase::X2YZ: return {-1, 0, 0, -2, 0, 0};
        case DyadicBase::X4YZ: return {-1, 0, 0, -4, 0, 0};
        case DyadicBase::Aniso: return {3, -2, -2, -2, 0, 0};
    }
    throw DomainError("dyadic_base_form: unknown kind");
}

Rational density_dyadic_base(DyadicBase kind, i64 n) {
    auto [a, m] = split_4(n);
    const i64 m8 = m % 8;
    switch (kind) {
        case DyadicBase::XYZ:
            if (m8 == 7) return Rational(3, 2);
            if (m8 == 3) return Rational(3, 2) - pw(2, -(a + 1));
            return Rational(3, 2) - Rational(3) * pw(2, -(a + 2));
        case DyadicBase::X2YZ:
            if (m8 == 7) return Rational(2);
            if (m8 == 3) return Rational(2) - pw(2, -a);
            return Rational(2) - Rational(3) * pw(2, -(a + 1));
        case DyadicBase::X4YZ:
            if (m8 == 7) return Rational(3);
            if (m8 == 3) return Rational(3) - pw(2, 1 - a);
            return Rational(3) - Rational(3) * pw(2, -a);
        case DyadicBase::Aniso:
            if (m8 == 3) return pw(2, -a);
            if (m8 == 7) return Rational(0);
            return Rational(3) * pw(2, -(a + 1));
    }
    throw DomainError("density_dyadic_base: unknown kind");
}

TernaryForm special_form(SpecialKind kind, i64 p, int exponent) {
    if (exponent < 0) throw DomainError("special_form: exponent must be nonnegative");
    switch (kind) {
        case SpecialKind::AnisoOdd: {
            const i64 e = least_nonresidue(p);
            return {checked_mul(-e, ipow(p, 2 * exponent + 1)), 1, -e, 0, 0, 0};
        }
        case SpecialKind::IsoOdd:
            require_odd_prime(p);
            return {-ipow(p, exponent), 0, 0, -1, 0, 0};
        case SpecialKind::AnisoTwo: return {3 * ipow(2, 2 * exponent + 3), -1, -1, -1, 0, 0};
        case SpecialKind::IsoTwo: return {-ipow(2, exponent + 2), 0, 0, -1, 0, 0};
    }
    throw DomainError("special_form: unknown kind");
}

Rational density_special_values(SpecialKind kind, i64 p, int exponent, i64 n) {
    if (exponent < 0) throw DomainError("density_special_values: exponent must be nonnegative");
    switch (kind) {
        case SpecialKind::AnisoOdd:
        case SpecialKind::IsoOdd:
            require_odd_prime(p);
            if (n != 1 && n != 4) throw DomainError("density_special_values: n must be 1 or 4 for odd p");
            return kind == SpecialKind::AnisoOdd ? Rational(1) + Rational(1, p) : Rational(1) - Rational(1, p);
        case SpecialKind::AnisoTwo:
        case SpecialKind::IsoTwo:
            if (p != 2) throw DomainError("density_special_values: dyadic kinds need p = 2");
            if (n != 1) throw DomainError("density_special_values: n must be 1 at p = 2");
            return kind == SpecialKind::AnisoTwo ? Rational(3, 2) : Rational(1, 2);
    }
    throw DomainError("density_special_values: unknown kind");
}

namespace {

// n = 4^k m with -m a fundamental discriminant at 2: m = 3 mod 4, or
// m = 4 m0 with m0 = 1, 2 mod 4. Returns false when n = 1, 2 mod 4.
bool split_disc(i64 n, int& k, i64& m) {
    if (n < 1) throw DomainError("density: n must be positive");
    if (n % 4 == 1 || n % 4 == 2) return false;
    k = 0;
    m = n;
    while (m % 4 == 0 && (m / 4) % 4 != 1 && (m / 4) % 4 != 2) {
        m /= 4;
        ++k;
    }
    return true;
}

int kron2(i64 D) {
    // (D/2) for odd D
    const i64 r = mod(D, 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace

Rational density_aniso_two_disc(int u, i64 n) {
    int k;
    i64 m;
    if (!split_disc(n, k, m)) return Rational(0);
    if (m % 4 == 3) {
        const Rational chi(1 - kron2(-m));
        if (2 * k < 2 * u) return pw(2, k + 1) * chi;
        return pw(2, 2 * u + 1 - k) * chi;
    }
    if (2 * k < 2 * u) return Rational(0);
    return Rational(3) * pw(2, 2 * u - k);
}

Rational density_iso_two_disc(int v, i64 n) {
    int k;
    i64 m;
    if (!split_disc(n, k, m)) throw DomainError("density_iso_two_disc: n is not a negative discriminant");
    const bool odd_m = m % 4 == 3;
    const i64 m8 = m % 8;
    if (v % 2 == 0) {
        if (2 * k <= v - 2) return odd_m ? pw(2, k + 1) * Rational(1 + kron2(-m)) : Rational(0);
        if (m8 == 7) return Rational(3) * pw(2, v / 2);
        if (m8 == 3) return Rational(3) * pw(2, v / 2) - pw(2, v + 1 - k);
        return Rational(3) * (pw(2, v / 2) - pw(2, v + 1 - k));
    }
    if (2 * k < v - 1) return odd_m ? pw(2, k + 1) * Rational(1 + kron2(-m)) : Rational(0);
    if (2 * k >= v + 1) {
        if (m8 == 7) return pw(2, (v + 3) / 2);
        if (m8 == 3) return pw(2, (v + 3) / 2) - pw(2, v + 1 - k);
        return pw(2, (v + 3) / 2) - Rational(3) * pw(2, v + 1 - k);
    }
    throw DomainError("density_iso_two_disc: no case covers 2k = v - 1");
}

std::optional<ClosedDensity> density_closed(const DensityQuery& q) {
    const TernaryForm& f = q.form;
    const i64 p = q.p, n = q.n;
    if (!is_prime(p)) throw DomainError("density: p must be prime");
    if (n < 1) throw DomainError("density: n must be positive");
    int emax = 0;
    for (i64 x : {f.a, f.b, f.c, f.r, f.s, f.t})
        if (x != 0) emax = std::max(emax, valuation(x, p));
    // Model constructors overflow for large exponents; such forms cannot match.
    auto is = [&](auto make) {
        try {
            return make() == f;
        } catch (const OverflowError&) {
            return false;
        }
    };
    auto hit = [](std::string model, Rational v) { return std::optional<ClosedDensity>({std::move(model), v}); };
    auto tag = [](const char* name, const char* var, int e) {
        return std::string(name) + "(" + var + "=" + std::to_string(e) + ")";
    };
    if (p == 2) {
        static const std::pair<DyadicBase, const char*> kBases[] = {
            {DyadicBase::XYZ, "dyadic_base(-x^2-yz)"},
            {DyadicBase::X2YZ, "dyadic_base(-x^2-2yz)"},
            {DyadicBase::X4YZ, "dyadic_base(-x^2-4yz)"},
            {DyadicBase::Aniso, "dyadic_base(3x^2-2(y^2+z^2+yz))"},
        };
        for (auto [kind, name] : kBases)
            if (dyadic_base_form(kind) == f) return hit(name, density_dyadic_base(kind, n));
        for (int e = 0; e <= emax; ++e) {
            if (is([&] { return aniso_two_form(e); })) return hit(tag("aniso_two", "u", e), density_aniso_two(e, n));
            if (is([&] { return iso_two_form(e); })) return hit(tag("iso_two", "v", e), density_iso_two(e, n));
            if (n == 1 && is([&] { return special_form(SpecialKind::AnisoTwo, 2, e); }))
                return hit(tag("special_aniso_two", "u", e), density_special_values(SpecialKind::AnisoTwo, 2, e, n));
            if (n == 1 && is([&] { return special_form(SpecialKind::IsoTwo, 2, e); }))
                return hit(tag("special_iso_two", "v", e), density_special_values(SpecialKind::IsoTwo, 2, e, n));
        }
        return std::nullopt;
    }
    if (f == siegel_form()) return hit("siegel", density_siegel_unramified(p, n));
    for (int e = 0; e <= emax; ++e) {
        if (is([&] { return aniso_odd_form(p, e); })) return hit(tag("aniso_odd", "u", e), density_aniso_odd(p, e, n));
        if (is([&] { return iso_odd_form(p, e); })) return hit(tag("iso_odd", "v", e), density_iso_odd(p, e, n));
        if (n != 1 && n != 4) continue;
        if (is([&] { return special_form(SpecialKind::AnisoOdd, p, e); }))
            return hit(tag("special_aniso_odd", "u", e), density_special_values(SpecialKind::AnisoOdd, p, e, n));
        if (is([&] { return special_form(SpecialKind::IsoOdd, p, e); }))
            return hit(tag("special_iso_odd", "v", e), density_special_values(SpecialKind::IsoOdd, p, e, n));
    }
    return std::nullopt;
}

}  // namespace tqf
