#include "tqf/ternary.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace tqf {

// ---------------------------------------------------------------------------
// 3x3 integer matrices

Mat3 identity3() { return Mat3{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 mul(const Mat3& A, const Mat3& B) {
    Mat3 C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 acc = 0;
            for (int k = 0; k < 3; ++k) acc += static_cast<i128>(A[i][k]) * B[k][j];
            C[i][j] = narrow(acc);
        }
    return C;
}

Mat3 transpose(const Mat3& A) {
    Mat3 T{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T[i][j] = A[j][i];
    return T;
}

namespace {

i128 det128(const Mat3& A) {
    return static_cast<i128>(A[0][0]) * (static_cast<i128>(A[1][1]) * A[2][2] - static_cast<i128>(A[1][2]) * A[2][1]) -
           static_cast<i128>(A[0][1]) * (static_cast<i128>(A[1][0]) * A[2][2] - static_cast<i128>(A[1][2]) * A[2][0]) +
           static_cast<i128>(A[0][2]) * (static_cast<i128>(A[1][0]) * A[2][1] - static_cast<i128>(A[1][1]) * A[2][0]);
}

// Adjugate: A * adj(A) = det(A) I.
std::array<std::array<i128, 3>, 3> adjugate(const std::array<std::array<i128, 3>, 3>& A) {
    std::array<std::array<i128, 3>, 3> C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            C[i][j] = A[r0][c0] * A[r1][c1] - A[r0][c1] * A[r1][c0];
        }
    return C;
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 isqrt128(i128 n) {
    if (n < 0) throw DomainError("isqrt128: negative");
    if (n < (static_cast<i128>(1) << 62)) return isqrt(static_cast<i64>(n));
    i128 r = static_cast<i128>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Integer range containing all u with alpha u^2 + beta u + gamma <= 0, alpha > 0.
// The range may overshoot by one on each side.
bool quad_range(i128 alpha, i128 beta, i128 gamma, i128& lo, i128& hi) {
    i128 disc = beta * beta - 4 * alpha * gamma;
    if (disc < 0) return false;
    i128 s = isqrt128(disc);
    lo = floor_div(-beta - s - 1, 2 * alpha);
    hi = floor_div(-beta + s + 1, 2 * alpha) + 1;
    return true;
}

}  // namespace

i64 det(const Mat3& A) { return narrow(det128(A)); }

Mat3 inverse_unimodular(const Mat3& A) {
    i64 d = det(A);
    if (d != 1 && d != -1) throw DomainError("inverse_unimodular: determinant is not +-1");
    std::array<std::array<i128, 3>, 3> W{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) W[i][j] = A[i][j];
    auto adj = adjugate(W);
    Mat3 inv{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv[i][j] = narrow(adj[i][j] * d);
    return inv;
}

// ---------------------------------------------------------------------------
// Forms

Mat3 TernaryForm::gram() const { return Mat3{{{2 * a, t, s}, {t, 2 * b, r}, {s, r, 2 * c}}}; }

TernaryForm TernaryForm::from_gram(const Mat3& M) {
    if (M[0][0] % 2 || M[1][1] % 2 || M[2][2] % 2) throw DomainError("from_gram: odd diagonal");
    if (M[0][1] != M[1][0] || M[0][2] != M[2][0] || M[1][2] != M[2][1])
        throw DomainError("from_gram: matrix is not symmetric");
    return TernaryForm{M[0][0] / 2, M[1][1] / 2, M[2][2] / 2, M[1][2], M[0][2], M[0][1]};
}

i64 TernaryForm::value(const Vec3& v) const {
    i128 x = v[0], y = v[1], z = v[2];
    return narrow(a * x * x + b * y * y + c * z * z + r * y * z + s * x * z + t * x * y);
}

i64 TernaryForm::bilinear(const Vec3& u, const Vec3& v) const {
    Mat3 M = gram();
    i128 acc = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += static_cast<i128>(u[i]) * M[i][j] * v[j];
    return narrow(acc);
}

TernaryForm TernaryForm::transform(const Mat3& U) const {
    Mat3 M = gram();
    Mat3 G{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 acc = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) acc += static_cast<i128>(U[k][i]) * M[k][l] * U[l][j];
            G[i][j] = narrow(acc);
        }
    return from_gram(G);
}

i64 TernaryForm::disc() const {
    i128 A = a, B = b, C = c, R = r, S = s, T = t;
    return narrow(4 * A * B * C + R * S * T - A * R * R - B * S * S - C * T * T);
}

i64 TernaryForm::content() const {
    i64 g = 0;
    for (i64 v : {a, b, c, r, s, t}) g = gcd64(g, v);
    return g;
}

bool TernaryForm::positive_definite() const {
    return a > 0 && 4 * static_cast<i128>(a) * b - static_cast<i128>(t) * t > 0 && disc() > 0;
}

std::string TernaryForm::str() const {
    std::ostringstream os;
    os << a << "," << b << "," << c << "," << r << "," << s << "," << t;
    return os.str();
}

TernaryForm TernaryForm::parse(const std::string& text) {
    std::vector<i64> v;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw DomainError("form literal: empty coefficient in '" + text + "'");
        size_t pos = 0;
        i64 x = 0;
        try {
            x = std::stoll(cur, &pos);
        } catch (const std::exception&) {
            throw DomainError("form literal: bad coefficient '" + cur + "'");
        }
        if (pos != cur.size()) throw DomainError("form literal: bad coefficient '" + cur + "'");
        v.push_back(x);
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',')
            flush();
        else if (ch != ' ')
            cur.push_back(ch);
    }
    flush();
    if (v.size() != 6) throw DomainError("form literal: expected six integers a,b,c,r,s,t");
    return TernaryForm{v[0], v[1], v[2], v[3], v[4], v[5]};
}

// ---------------------------------------------------------------------------
// Invariants

i64 form_divisor(const TernaryForm& f) {
    i128 a = f.a, b = f.b, c = f.c, r = f.r, s = f.s, t = f.t;
    i128 g = 0;
    for (i128 v : {4 * b * c - r * r, 4 * a * c - s * s, 4 * a * b - t * t, 2 * (s * t - 2 * a * r),
                   2 * (r * t - 2 * b * s), 2 * (r * s - 2 * c * t)})
        g = gcd128(g, v);
    return narrow(g);
}

i64 form_level(const TernaryForm& f) {
    i64 m = form_divisor(f);
    i128 n4 = 4 * static_cast<i128>(f.disc());
    if (m == 0 || n4 % m != 0) throw DomainError("form_level: divisor does not divide 4d");
    return narrow(n4 / m);
}

i64 level_from_inverse(const TernaryForm& f) {
    Mat3 M = f.gram();
    std::array<std::array<i128, 3>, 3> W{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) W[i][j] = M[i][j];
    auto adj = adjugate(W);
    i128 D = det128(M);
    if (D < 0) D = -D;
    // N adj_ij / D integral, and N adj_ii / D even.
    i128 N = 1;
    auto need = [&](i128 num, i128 den) {
        i128 g = gcd128(num, den);
        i128 q = den / g;
        N = N / gcd128(N, q) * q;
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j)
                need(adj[i][j], 2 * D);
            else
                need(adj[i][j], D);
        }
    return narrow(N);
}

int hasse_symbol(const TernaryForm& f, i64 p) {
    // Rational diagonalization by leading minors of the Gram matrix of f:
    // coefficients a, a(4ab - t^2), (4ab - t^2) d up to squares.
    i128 m1 = f.a;
    i128 m2 = 4 * static_cast<i128>(f.a) * f.b - static_cast<i128>(f.t) * f.t;
    i128 m3 = f.disc();
    if (m1 == 0 || m2 == 0 || m3 == 0) throw DomainError("hasse_symbol: degenerate form");
    // Squarefree representative of the square class of x y.
    auto sqfree = [](i128 x, i128 y) -> i64 {
        i64 sign = ((x < 0) != (y < 0)) ? -1 : 1;
        std::map<i64, int> ex;
        for (i128 v : {x, y})
            for (auto [q, e] : factorize(narrow(v < 0 ? -v : v))) ex[q] += e;
        i64 out = 1;
        for (auto [q, e] : ex)
            if (e % 2) out = checked_mul(out, q);
        return sign * out;
    };
    i64 d1 = sqfree(m1, 1), d2 = sqfree(m1, m2), d3 = sqfree(m2, m3);
    int s = hilbert_symbol(d1, -1, p) * hilbert_symbol(d2, -1, p) * hilbert_symbol(d3, -1, p);
    s *= hilbert_symbol(d1, d2, p) * hilbert_symbol(d2, d3, p) * hilbert_symbol(d3, d1, p);
    return s;
}

std::set<i64> anisotropic_primes(const TernaryForm& f) {
    std::set<i64> out;
    for (i64 p : prime_divisors(2 * f.disc())) {
        int s = hasse_symbol(f, p);
        if (p == 2) s = -s;
        if (s == -1) out.insert(p);
    }
    return out;
}

FormInvariants invariants(const TernaryForm& f) {
    if (!f.positive_definite()) throw DomainError("invariants: form is not positive definite");
    if (!f.primitive()) throw DomainError("invariants: form is not primitive");
    FormInvariants inv;
    inv.disc = f.disc();
    inv.divisor = form_divisor(f);
    inv.level = form_level(f);
    for (i64 p : prime_divisors(2 * inv.disc)) {
        int s = hasse_symbol(f, p);
        inv.hasse[p] = s;
        if ((p == 2 ? -s : s) == -1) inv.aniso.insert(p);
    }
    return inv;
}

bool level_disc_constraints_hold(i64 N, i64 d) {
    int n0 = valuation(N, 2), d0 = valuation(d, 2);
    if (n0 < 2) return false;
    if (!(d0 == n0 - 2 || d0 == 2 * n0 || (n0 <= d0 && d0 <= 2 * n0 - 2))) return false;
    bool all_even = n0 % 2 == 0;
    bool some_odd_d = false;
    std::set<i64> ps;
    for (i64 p : prime_divisors(N)) ps.insert(p);
    for (i64 p : prime_divisors(d)) ps.insert(p);
    for (i64 p : ps) {
        if (p == 2) continue;
        int ni = N % p == 0 ? valuation(N, p) : 0;
        int di = valuation(d, p);
        if (di < ni || di > 2 * ni) return false;
        if (ni % 2) all_even = false;
        if (di % 2) some_odd_d = true;
    }
    if (all_even && !(n0 <= d0 && d0 <= 2 * n0 - 2) && !some_odd_d) return false;
    return true;
}

std::string GenusKey::str() const {
    std::ostringstream os;
    os << "G_{" << level << "," << disc << ",{";
    bool first = true;
    for (i64 p : aniso) {
        if (!first) os << ",";
        os << p;
        first = false;
    }
    os << "}}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Enumeration of vectors with f(v) <= X

namespace {

// Calls visit(x, y, z, value) for every v with f(v) <= X, zero included.
// z is bounded by z^2 <= X (4ab - t^2) / d; y and x by the quadratics left
// after minimizing over the remaining variables.
template <class Visit>
void for_each_vector(const TernaryForm& f, i64 X, Visit&& visit) {
    if (!f.positive_definite()) throw DomainError("form is not positive definite: " + f.str());
    if (X < 0) return;
    const i128 a = f.a, b = f.b, c = f.c, r = f.r, s = f.s, t = f.t;
    const i128 A2 = 4 * a * b - t * t, d = f.disc();
    const i128 zmax = isqrt128(checked_mul(static_cast<i128>(X), A2) / d) + 1;
    for (i128 z = -zmax; z <= zmax; ++z) {
        i128 ylo, yhi;
        if (!quad_range(A2, (4 * a * r - 2 * t * s) * z, (4 * a * c - s * s) * z * z - 4 * a * X, ylo, yhi))
            continue;
        for (i128 y = ylo; y <= yhi; ++y) {
            const i128 beta = t * y + s * z;
            const i128 gamma = b * y * y + r * y * z + c * z * z;
            i128 xlo, xhi;
            if (!quad_range(a, beta, gamma - X, xlo, xhi)) continue;
            for (i128 x = xlo; x <= xhi; ++x) {
                i128 val = a * x * x + beta * x + gamma;
                if (val <= X) visit(static_cast<i64>(x), static_cast<i64>(y), static_cast<i64>(z), static_cast<i64>(val));
            }
        }
    }
}

// Solutions of f(v) = n with zdiv | z, solving for x exactly per (y, z).
i64 count_solutions(const TernaryForm& f, i64 n, i64 zdiv) {
    if (!f.positive_definite()) throw DomainError("form is not positive definite: " + f.str());
    if (zdiv < 1) throw DomainError("z divisor must be positive");
    if (n < 0) return 0;
    if (n == 0) return 1;
    const i128 a = f.a, b = f.b, c = f.c, r = f.r, s = f.s, t = f.t;
    const i128 A2 = 4 * a * b - t * t, d = f.disc();
    const i128 zmax = isqrt128(checked_mul(static_cast<i128>(n), A2) / d) + 1;
    i64 count = 0;
    for (i128 z = -(zmax / zdiv) * zdiv; z <= zmax; z += zdiv) {
        i128 ylo, yhi;
        if (!quad_range(A2, (4 * a * r - 2 * t * s) * z, (4 * a * c - s * s) * z * z - 4 * a * n, ylo, yhi))
            continue;
        for (i128 y = ylo; y <= yhi; ++y) {
            const i128 beta = t * y + s * z;
            const i128 gamma = b * y * y + r * y * z + c * z * z - n;
            const i128 disc = beta * beta - 4 * a * gamma;
            if (disc < 0) continue;
            const i128 root = isqrt128(disc);
            if (root * root != disc) continue;
            if ((-beta + root) % (2 * a) == 0) ++count;
            if (root != 0 && (-beta - root) % (2 * a) == 0) ++count;
        }
    }
    return count;
}

}  // namespace

std::vector<ShortVector> short_vectors(const TernaryForm& f, i64 bound) {
    std::vector<ShortVector> out;
    for_each_vector(f, bound, [&](i64 x, i64 y, i64 z, i64 val) {
        if (x || y || z) out.push_back({Vec3{x, y, z}, val});
    });
    std::sort(out.begin(), out.end(), [](const ShortVector& u, const ShortVector& v) {
        return u.value != v.value ? u.value < v.value : u.v < v.v;
    });
    return out;
}

i64 rep_number(const TernaryForm& f, i64 n) { return count_solutions(f, n, 1); }

i64 restricted_rep_number(const TernaryForm& f, i64 n, i64 z_divisor) { return count_solutions(f, n, z_divisor); }

std::vector<i64> theta_series(const TernaryForm& f, i64 nmax) {
    if (nmax < 0) throw DomainError("theta_series: negative bound");
    std::vector<i64> out(static_cast<size_t>(nmax) + 1, 0);
    for_each_vector(f, nmax, [&](i64, i64, i64, i64 val) { ++out[static_cast<size_t>(val)]; });
    return out;
}

// ---------------------------------------------------------------------------
// Reduction

namespace {

struct Basis {
    std::array<std::array<i128, 3>, 3> G{};  // Gram matrix in the current basis
    Mat3 U = identity3();                     // current basis as columns
    bool track = true;                        // maintain U

    // e_j <- e_j + k e_i
    void shear(int j, int i, i128 k) {
        if (k == 0) return;
        if (track)
            for (int row = 0; row < 3; ++row) U[row][j] = narrow(U[row][j] + k * U[row][i]);
        i128 gjj = checked_add(checked_add(G[j][j], checked_mul(checked_mul(i128(2), k), G[i][j])),
                               checked_mul(checked_mul(k, k), G[i][i]));
        for (int l = 0; l < 3; ++l) {
            if (l == j) continue;
            G[j][l] = checked_add(G[j][l], checked_mul(k, G[i][l]));
            G[l][j] = G[j][l];
        }
        G[j][j] = gjj;
        if (modulus) {
            for (auto& row : G)
                for (auto& x : row) x = reduce_entry(x);
        }
    }
    // Working modulo a power of p only preserves the p-adic class.
    i128 modulus = 0;
    i128 reduce_entry(i128 x) const {
        i128 r = x % modulus;
        if (r < 0) r += modulus;
        if (2 * r > modulus) r -= modulus;
        return r;
    }
    void swap(int i, int j) {
        if (i == j) return;
        for (int row = 0; row < 3; ++row) std::swap(U[row][i], U[row][j]);
        std::swap(G[i], G[j]);
        for (int row = 0; row < 3; ++row) std::swap(G[row][i], G[row][j]);
    }
};

Basis basis_of(const TernaryForm& f) {
    Basis B;
    Mat3 M = f.gram();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B.G[i][j] = M[i][j];
    return B;
}

// Pairwise size reduction until no step lowers a norm. Only keeps numbers
// small; the canonical choice happens afterwards.
void prereduce(Basis& B) {
    for (int guard = 0; guard < 100000; ++guard) {
        bool changed = false;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (B.G[j][j] < B.G[i][i]) B.swap(i, j);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                i128 k = floor_div(2 * B.G[i][j] + B.G[i][i], 2 * B.G[i][i]);
                if (k == 0) continue;
                i128 nn = B.G[j][j] - 2 * k * B.G[i][j] + k * k * B.G[i][i];
                if (nn < B.G[j][j]) {
                    B.shear(j, i, -k);
                    changed = true;
                }
            }
        for (int k = 0; k < 3; ++k) {
            int i = (k + 1) % 3, j = (k + 2) % 3;
            for (int si : {-1, 1})
                for (int sj : {-1, 1}) {
                    i128 nn = B.G[k][k] + B.G[i][i] + B.G[j][j] + 2 * si * B.G[k][i] + 2 * sj * B.G[k][j] +
                              2 * si * sj * B.G[i][j];
                    if (nn < B.G[k][k]) {
                        B.shear(k, i, si);
                        B.shear(k, j, sj);
                        changed = true;
                    }
                }
        }
        if (!changed) return;
    }
    throw std::logic_error("prereduce did not terminate");
}

TernaryForm form_of(const Basis& B) {
    Mat3 M{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = narrow(B.G[i][j]);
    return TernaryForm::from_gram(M);
}

Vec3 cross(const Vec3& u, const Vec3& v) {
    return Vec3{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

i64 dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

bool is_zero(const Vec3& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

// Gram-vector products B(u, v) = u^T M v for small vectors.
struct GramView {
    Mat3 M;
    i64 B(const Vec3& u, const Vec3& v) const {
        i64 acc = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += u[i] * M[i][j] * v[j];
        return acc;
    }
};

// Successive minima of a prereduced form and the vectors attaining them.
struct Minima {
    i64 lambda[3];
    std::vector<Vec3> at[3];
};

Minima successive_minima(const TernaryForm& f) {
    i64 X = std::max({f.a, f.b, f.c});
    auto vecs = short_vectors(f, X);
    Minima m{};
    std::vector<Vec3> chosen;
    for (const auto& sv : vecs) {
        bool indep = false;
        if (chosen.empty())
            indep = true;
        else if (chosen.size() == 1)
            indep = !is_zero(cross(chosen[0], sv.v));
        else
            indep = dot(cross(chosen[0], chosen[1]), sv.v) != 0;
        if (indep) {
            m.lambda[chosen.size()] = sv.value;
            chosen.push_back(sv.v);
            if (chosen.size() == 3) break;
        }
    }
    if (chosen.size() != 3) throw std::logic_error("successive minima: rank deficiency for " + f.str());
    for (const auto& sv : vecs)
        for (int k = 0; k < 3; ++k)
            if (sv.value == m.lambda[k]) m.at[k].push_back(sv.v);
    return m;
}

}  // namespace

Reduced reduce_with_witness(const TernaryForm& f) {
    if (!f.positive_definite()) throw DomainError("reduce: form is not positive definite: " + f.str());
    Basis B = basis_of(f);
    prereduce(B);
    TernaryForm f0 = form_of(B);
    Minima m = successive_minima(f0);
    GramView gv{f0.gram()};
    bool found = false;
    std::array<i64, 3> best{};
    Mat3 bestV{};
    for (const Vec3& v1 : m.at[0])
        for (const Vec3& v2 : m.at[1]) {
            Vec3 n12 = cross(v1, v2);
            if (is_zero(n12)) continue;
            i64 t = gv.B(v1, v2);
            for (const Vec3& v3 : m.at[2]) {
                if (dot(n12, v3) != 1) continue;
                std::array<i64, 3> key{gv.B(v2, v3), gv.B(v1, v3), t};
                if (!found || key < best) {
                    found = true;
                    best = key;
                    for (int i = 0; i < 3; ++i) {
                        bestV[i][0] = v1[i];
                        bestV[i][1] = v2[i];
                        bestV[i][2] = v3[i];
                    }
                }
            }
        }
    if (!found) throw std::logic_error("reduce: no basis of successive minima for " + f.str());
    Reduced out;
    out.witness = mul(B.U, bestV);
    out.form = f.transform(out.witness);
    TernaryForm expect{m.lambda[0], m.lambda[1], m.lambda[2], best[0], best[1], best[2]};
    if (out.form != expect) throw std::logic_error("reduce: witness mismatch for " + f.str());
    return out;
}

TernaryForm reduce(const TernaryForm& f) { return reduce_with_witness(f).form; }

i64 aut_count(const TernaryForm& f) {
    TernaryForm g = reduce(f);
    auto vecs = short_vectors(g, g.c);
    std::vector<Vec3> va, vb, vc;
    for (const auto& sv : vecs) {
        if (sv.value == g.a) va.push_back(sv.v);
        if (sv.value == g.b) vb.push_back(sv.v);
        if (sv.value == g.c) vc.push_back(sv.v);
    }
    GramView gv{g.gram()};
    i64 count = 0;
    for (const Vec3& v1 : va)
        for (const Vec3& v2 : vb) {
            if (gv.B(v1, v2) != g.t) continue;
            for (const Vec3& v3 : vc)
                if (gv.B(v1, v3) == g.s && gv.B(v2, v3) == g.r) ++count;
        }
    return count;
}

std::optional<Mat3> equivalent(const TernaryForm& f, const TernaryForm& g, i64 theta_bound) {
    if (f.disc() != g.disc()) return std::nullopt;
    if (form_level(f) != form_level(g)) return std::nullopt;
    if (anisotropic_primes(f) != anisotropic_primes(g)) return std::nullopt;
    if (theta_series(f, theta_bound) != theta_series(g, theta_bound)) return std::nullopt;
    Reduced rf = reduce_with_witness(f), rg = reduce_with_witness(g);
    if (rf.form != rg.form) return std::nullopt;
    Mat3 W = mul(rf.witness, inverse_unimodular(rg.witness));
    if (f.transform(W) != g) throw std::logic_error("equivalent: witness check failed");
    return W;
}

// ---------------------------------------------------------------------------
// Genus enumeration

i64 default_budget() {
    if (const char* env = std::getenv("TQF_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw DomainError(std::string("TQF_BUDGET must be a positive integer, got '") + env + "'");
    }
    return 20000;
}

namespace {

// Classes of primitive positive definite forms of discriminant d that pass
// keep(f), as canonical representatives.
template <class Keep>
std::vector<TernaryForm> classes_of_disc(i64 d, Keep&& keep) {
    std::set<TernaryForm> classes;
    // Reduced forms satisfy a <= b <= c, |t|, |s| <= a, |r| <= b and abc <= d/2.
    for (i64 a = 1; 2 * a * a * a <= d; ++a)
        for (i64 b = a; 2 * a * b * b <= d; ++b)
            for (i64 t = -a; t <= a; ++t) {
                const i64 den = 4 * a * b - t * t;
                for (i64 s = -a; s <= a; ++s)
                    for (i64 r = -b; r <= b; ++r) {
                        const i64 num = d - r * s * t + a * r * r + b * s * s;
                        if (num <= 0 || num % den) continue;
                        const i64 c = num / den;
                        if (c < b) continue;
                        if (a + b + r + s + t < 0 || a + b - r + s - t < 0 || a + b + r - s - t < 0 ||
                            a + b - r - s + t < 0)
                            continue;
                        TernaryForm f{a, b, c, r, s, t};
                        if (!f.primitive()) continue;
                        if (keep(f)) classes.insert(reduce(f));
                    }
            }
    return {classes.begin(), classes.end()};
}

void check_budget(const std::string& what, i64 d, i64& budget) {
    if (budget <= 0) budget = default_budget();
    if (d > budget)
        throw BudgetExceeded(what + ": disc " + std::to_string(d) + " exceeds budget " + std::to_string(budget));
}

}  // namespace

std::vector<TernaryForm> genus_enumerate(const GenusKey& key, i64 budget) {
    if (key.disc <= 0 || key.level <= 0) throw DomainError("genus_enumerate: level and disc must be positive");
    check_budget("genus " + key.str(), key.disc, budget);
    return classes_of_disc(key.disc, [&](const TernaryForm& f) {
        if (form_level(f) != key.level) return false;
        if (anisotropic_primes(f) != key.aniso) return false;
        for (const auto& [p, sym] : key.local)
            if (local_symbol(f, p) != sym) return false;
        return true;
    });
}

std::vector<TernaryForm> forms_of_discriminant(i64 d, i64 budget) {
    if (d <= 0) throw DomainError("forms_of_discriminant: d must be positive");
    check_budget("forms_of_discriminant", d, budget);
    return classes_of_disc(d, [](const TernaryForm&) { return true; });
}

// ---------------------------------------------------------------------------
// Local shapes at p and Lehman's maps

namespace {

constexpr int kInf = 1 << 20;

int vp128(i128 x, i64 p) {
    if (x == 0) return kInf;
    int e = 0;
    while (x % p == 0) {
        x /= p;
        ++e;
    }
    return e;
}

bool divides(i64 q, i64 x) { return x % q == 0; }

// Exact power: p^e | x and p^{e+1} does not.
bool exact(i64 p, int e, i64 x) { return x != 0 && vp128(x, p) == e; }

i64 mod_inverse128(i128 u, i128 m) {
    i128 r = u % m;
    if (r < 0) r += m;
    return inv_mod(narrow(r), narrow(m));
}

// Symmetric residue of x mod m.
i128 sym_mod(i128 x, i128 m) {
    i128 r = x % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

struct LocalData {
    int g, h;
};

LocalData local_data(const TernaryForm& f, i64 p) {
    return {valuation(form_level(f), p), valuation(f.disc(), p)};
}

enum class DyadicCase { A, B, C, None };

DyadicCase dyadic_case(int g, int h) {
    if (g >= 2 && h == g - 2) return DyadicCase::A;
    if (g >= 2 && g <= h && h <= 2 * g - 2) return DyadicCase::B;
    if (g >= 2 && h == 2 * g) return DyadicCase::C;
    return DyadicCase::None;
}

// Block splitting of the Gram matrix modulo p^K: 1x1 blocks, and at p = 2
// also 2x2 blocks whose off-diagonal entry has smaller valuation than both
// diagonal entries.
struct Splitting {
    std::vector<int> singles;
    std::vector<std::array<int, 2>> pairs;
};

Splitting split(Basis& B, i64 p, int K) {
    const i128 pK = ipow(p, K);
    Splitting out;
    std::vector<int> I{0, 1, 2};
    auto erase = [&](int i) { I.erase(std::find(I.begin(), I.end(), i)); };
    for (int guard = 0; !I.empty(); ++guard) {
        if (guard > 16) throw std::logic_error("local splitting did not terminate");
        if (I.size() == 1) {
            out.singles.push_back(I[0]);
            break;
        }
        int vd = kInf, id = -1, vo = kInf, io = -1, jo = -1;
        for (int i : I) {
            int v = vp128(B.G[i][i], p);
            if (v < vd) vd = v, id = i;
        }
        for (size_t x = 0; x < I.size(); ++x)
            for (size_t y = x + 1; y < I.size(); ++y) {
                int v = vp128(B.G[I[x]][I[y]], p);
                if (v < vo) vo = v, io = I[x], jo = I[y];
            }
        if (vd <= vo) {
            i128 pv = ipow(p, vd);
            i128 inv = mod_inverse128(B.G[id][id] / pv, pK);
            for (int j : I) {
                if (j == id || B.G[id][j] == 0) continue;
                B.shear(j, id, sym_mod(-(B.G[id][j] / pv) % pK * inv, pK));
            }
            out.singles.push_back(id);
            erase(id);
        } else if (p != 2) {
            B.shear(io, jo, 1);  // the diagonal now has valuation vo
        } else {
            const i128 a11 = B.G[io][io], a12 = B.G[io][jo], a22 = B.G[jo][jo];
            const i128 p2v = ipow(2, 2 * vo);
            const i128 dt = a11 * a22 - a12 * a12;
            const i128 inv = mod_inverse128(dt / p2v, pK);
            for (int l : I) {
                if (l == io || l == jo) continue;
                i128 al = sym_mod((a22 * B.G[io][l] - a12 * B.G[jo][l]) / p2v % pK * inv, pK);
                i128 be = sym_mod((a11 * B.G[jo][l] - a12 * B.G[io][l]) / p2v % pK * inv, pK);
                B.shear(l, io, -al);
                B.shear(l, jo, -be);
            }
            out.pairs.push_back({io, jo});
            erase(io);
            erase(jo);
        }
    }
    return out;
}

void permute_to(Basis& B, const std::array<int, 3>& order) {
    // Bring the basis vectors listed in order to positions 0, 1, 2.
    std::array<int, 3> pos{0, 1, 2};  // pos[k]: current slot of original index k
    std::array<int, 3> at{0, 1, 2};   // at[slot]: original index in slot
    for (int target = 0; target < 3; ++target) {
        int from = pos[order[target]];
        if (from == target) continue;
        B.swap(target, from);
        int x = at[target], y = at[from];
        std::swap(at[target], at[from]);
        pos[x] = from;
        pos[y] = target;
    }
}

}  // namespace

std::string local_symbol(const TernaryForm& f, i64 p) {
    if (!is_prime(p)) throw DomainError("local_symbol: p must be prime");
    if (f.disc() == 0) throw DomainError("local_symbol: degenerate form");
    Basis B = basis_of(f);
    B.track = false;
    const int K = vp128(det128(f.gram()), p) + (p == 2 ? 3 : 1);
    B.modulus = ipow(p, K + 1);
    Splitting sp;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 10) throw std::logic_error("local_symbol: splitting did not settle for " + f.str());
        sp = split(B, p, K);
        bool folded = false;
        for (const auto& pr : sp.pairs)
            for (int i : sp.singles)
                if (!folded && vp128(B.G[i][i], p) == vp128(B.G[pr[0]][pr[1]], p)) {
                    B.shear(pr[0], i, 1);
                    folded = true;
                }
        if (!folded) break;
    }
    struct Comp {
        int scale;
        int dim = 0;
        i64 det = 1;  // unit part, mod 8 at p = 2, Legendre class otherwise
        bool odd = false;
        i64 oddity = 0;
    };
    std::map<int, Comp> comps;
    auto unit = [&](i128 x, int k) {
        i128 u = x;
        for (int i = 0; i < k; ++i) u /= p;
        return u;
    };
    for (int i : sp.singles) {
        int k = vp128(B.G[i][i], p);
        i128 u = unit(B.G[i][i], k);
        Comp& c = comps.try_emplace(k, Comp{k}).first->second;
        c.dim += 1;
        if (p == 2) {
            c.det = mod(c.det * narrow(u % 8), 8);
            c.odd = true;
            c.oddity = mod(c.oddity + narrow(u % 8), 8);
        } else {
            c.det *= kronecker(narrow(u % p), p);
        }
    }
    for (const auto& pr : sp.pairs) {
        int k = vp128(B.G[pr[0]][pr[1]], p);
        i128 dt = B.G[pr[0]][pr[0]] * B.G[pr[1]][pr[1]] - B.G[pr[0]][pr[1]] * B.G[pr[0]][pr[1]];
        i128 u = unit(dt, 2 * k);
        Comp& c = comps.try_emplace(k, Comp{k}).first->second;
        c.dim += 2;
        c.det = mod(c.det * narrow(u % 8), 8);
    }
    std::vector<Comp> sym;
    for (auto& [k, c] : comps) sym.push_back(c);
    std::ostringstream os;
    if (p != 2) {
        for (const auto& c : sym) os << c.scale << ":" << c.dim << (c.det > 0 ? "+" : "-") << " ";
        return os.str();
    }
    const size_t n = sym.size();
    std::vector<int> eps(n);
    for (size_t i = 0; i < n; ++i) eps[i] = (sym[i].det == 1 || sym[i].det == 7) ? 1 : -1;
    // Compartments: runs of odd constituents with consecutive scales.
    std::vector<std::vector<size_t>> compartments;
    for (size_t i = 0; i < n;) {
        if (!sym[i].odd) {
            ++i;
            continue;
        }
        std::vector<size_t> cpt;
        int v = sym[i].scale;
        while (i < n && sym[i].odd && sym[i].scale == v) {
            cpt.push_back(i);
            ++i;
            ++v;
        }
        compartments.push_back(cpt);
    }
    std::vector<i64> odd(n, 0);
    for (const auto& cpt : compartments) {
        i64 total = 0;
        for (size_t i : cpt) total += sym[i].oddity;
        odd[cpt[0]] = mod(total, 8);
    }
    // Trains: broken by two adjacent even constituents, where missing
    // scales count as even constituents of dimension 0.
    std::vector<std::vector<size_t>> trains{{0}};
    for (size_t i = 1; i < n; ++i) {
        const Comp &prev = sym[i - 1], &cur = sym[i];
        int gap = cur.scale - prev.scale;
        bool brk = gap > 2 || (gap == 2 && !(prev.odd && cur.odd)) || (!prev.odd && !cur.odd);
        if (brk)
            trains.push_back({i});
        else
            trains.back().push_back(i);
    }
    // Sign walking pushes every minus sign of a train onto its first constituent.
    for (const auto& tr : trains)
        for (size_t j = tr.size(); j-- > 1;) {
            size_t t1 = tr[j];
            if (eps[t1] == -1) {
                eps[t1] = 1;
                eps[t1 - 1] *= -1;
                for (const auto& cpt : compartments)
                    if (std::find(cpt.begin(), cpt.end(), t1 - 1) != cpt.end() ||
                        std::find(cpt.begin(), cpt.end(), t1) != cpt.end())
                        odd[cpt[0]] = mod(odd[cpt[0]] + 4, 8);
            }
        }
    for (size_t i = 0; i < n; ++i)
        os << sym[i].scale << ":" << sym[i].dim << (eps[i] > 0 ? "+" : "-") << (sym[i].odd ? "I" : "II") << odd[i]
           << " ";
    return os.str();
}

bool has_phi_shape(const TernaryForm& f, i64 p) {
    if (!f.positive_definite() || !f.primitive()) return false;
    auto [g, h] = local_data(f, p);
    if (p != 2) {
        if (g < 1) return false;
        i64 pg = ipow(p, g), ph = ipow(p, h - g);
        return exact(p, g, f.a) && divides(ph, f.b) && divides(ph, f.r) && !divides(p, f.c) && divides(pg, f.s) &&
               divides(pg, f.t);
    }
    switch (dyadic_case(g, h)) {
        case DyadicCase::A:
            return exact(2, g - 2, f.a) && divides(ipow(2, g - 1), f.s) && divides(ipow(2, g - 1), f.t) && f.c % 2;
        case DyadicCase::B:
            return exact(2, g - 2, f.a) && divides(ipow(2, h - g), f.b) && f.c % 2 &&
                   divides(ipow(2, h - g + 1), f.r) && divides(ipow(2, g - 1), f.s) && divides(ipow(2, g - 1), f.t);
        case DyadicCase::C: {
            i64 pg = ipow(2, g);
            return exact(2, g, f.a) && divides(pg, f.b) && f.c % 2 && divides(pg, f.r) && divides(pg, f.s) &&
                   divides(pg, f.t);
        }
        case DyadicCase::None:
            return false;
    }
    return false;
}

// A p-adic splitting of the Gram matrix computed to precision p^K with
// K = g + 3, then arranged by valuation into the required shape.
Normalized normalize_at_p(const TernaryForm& f, i64 p) {
    if (!is_prime(p)) throw DomainError("normalize_at_p: p must be prime");
    if (!f.positive_definite() || !f.primitive())
        throw DomainError("normalize_at_p: form must be primitive positive definite");
    if (has_phi_shape(f, p)) return {f, identity3()};
    auto [g, h] = local_data(f, p);
    if (p != 2 && g < 1) throw DomainError("normalize_at_p: p does not divide the level");
    DyadicCase dc = p == 2 ? dyadic_case(g, h) : DyadicCase::None;
    if (p == 2 && dc == DyadicCase::None) throw DomainError("normalize_at_p: 2-adic exponents admit no shape");

    Reduced start = reduce_with_witness(f);
    Basis B = basis_of(start.form);
    const int K = p == 2 ? g + 3 : g + 1;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Splitting sp = split(B, p, K);
        auto val = [&](int i) { return vp128(B.G[i][i], p); };
        if (p != 2) {
            std::array<int, 3> order{sp.singles[0], sp.singles[1], sp.singles[2]};
            std::sort(order.begin(), order.end(), [&](int x, int y) { return val(x) > val(y); });
            permute_to(B, order);
        } else if (dc == DyadicCase::A) {
            if (sp.pairs.size() != 1) throw std::logic_error("normalize_at_p: unexpected 2-adic splitting");
            permute_to(B, {sp.singles[0], sp.pairs[0][0], sp.pairs[0][1]});
            if (vp128(B.G[2][2], 2) != 1) {
                if (vp128(B.G[1][1], 2) == 1)
                    B.swap(1, 2);
                else
                    B.shear(2, 1, 1);
            }
        } else {
            // Both remaining cases need a single block with odd c.
            int ci = -1;
            for (int i : sp.singles)
                if (val(i) == 1) ci = i;
            if (ci < 0) throw std::logic_error("normalize_at_p: no odd 2-adic component");
            if (dc == DyadicCase::B) {
                if (!sp.pairs.empty()) {
                    // An even block beside an odd block of the same scale:
                    // fold them so the next splitting is diagonal.
                    B.shear(sp.pairs[0][0], ci, 1);
                    continue;
                }
                std::array<int, 3> order{-1, -1, ci};
                for (int i : sp.singles)
                    if (i != ci && order[0] < 0 && val(i) == g - 1) order[0] = i;
                for (int i : sp.singles)
                    if (i != ci && i != order[0]) order[1] = i;
                if (order[0] < 0 || order[1] < 0) throw std::logic_error("normalize_at_p: no 2-adic component of scale g-1");
                permute_to(B, order);
            } else {
                if (sp.pairs.size() != 1) throw std::logic_error("normalize_at_p: unexpected 2-adic splitting");
                permute_to(B, {sp.pairs[0][0], sp.pairs[0][1], ci});
                if (vp128(B.G[0][0], 2) != g + 1) {
                    if (vp128(B.G[1][1], 2) == g + 1)
                        B.swap(0, 1);
                    else
                        B.shear(0, 1, 1);
                }
            }
        }
        Normalized out;
        out.witness = mul(start.witness, B.U);
        out.form = f.transform(out.witness);
        if (!has_phi_shape(out.form, p))
            throw std::logic_error("normalize_at_p: arranged form " + out.form.str() + " misses the shape at " +
                                   std::to_string(p));
        return out;
    }
    throw std::logic_error("normalize_at_p: splitting did not settle for " + f.str());
}

TernaryForm phi_p(const TernaryForm& f, i64 p) {
    TernaryForm F = normalize_at_p(f, p).form;
    auto [g, h] = local_data(F, p);
    TernaryForm out;
    auto q = [&](int e) { return ipow(p, e); };
    if (p != 2) {
        out = {F.a / q(g), q(2 * g - h) * (F.b / q(h - g)), q(g) * F.c,
               q(g) * (F.r / q(h - g)), F.s, q(2 * g - h) * (F.t / q(g))};
    } else {
        switch (dyadic_case(g, h)) {
            case DyadicCase::A:
                out = {F.a / q(g - 2), q(g) * F.b, q(g) * F.c, q(g) * F.r, 2 * F.s, 2 * F.t};
                break;
            case DyadicCase::B:
                out = {F.a / q(g - 2), q(2 * g - h - 2) * (F.b / q(h - g)), q(g - 2) * F.c,
                       q(g - 1) * (F.r / q(h - g + 1)), F.s, q(2 * g - h - 1) * (F.t / q(g - 1))};
                break;
            case DyadicCase::C:
                out = {F.a / q(g), F.b / q(g), q(g - 2) * F.c, F.r / 2, F.s / 2, F.t / q(g)};
                break;
            case DyadicCase::None:
                throw DomainError("phi_p: 2-adic exponents admit no shape");
        }
    }
    int h_new = p == 2 ? 3 * g - h - 2 : 3 * g - h;
    if (!out.positive_definite() || valuation(out.disc(), p) != h_new || form_level(out) != form_level(f) ||
        out.disc() / ipow(p, h_new) != f.disc() / ipow(p, h))
        throw std::logic_error("phi_p: image " + out.str() + " violates the discriminant exchange");
    return reduce(out);
}

// Relabelling x <-> z carries the output shape of phi_p back to its input
// shape with h replaced by 3g - h (3g - h - 2 at p = 2), so phi_p is its own
// inverse on classes.
TernaryForm phi_p_inv(const TernaryForm& f, i64 p) { return phi_p(f, p); }

// ---------------------------------------------------------------------------
// Watson's lambda_4

namespace {

// Row-style Hermite reduction of generators spanning a full-rank lattice.
Mat3 lattice_basis(std::vector<Vec3> rows) {
    size_t top = 0;
    for (int col = 0; col < 3; ++col) {
        for (;;) {
            size_t piv = rows.size();
            for (size_t i = top; i < rows.size(); ++i)
                if (rows[i][col] != 0 && (piv == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[piv][col])))
                    piv = i;
            if (piv == rows.size()) throw std::logic_error("lattice_basis: rank deficiency");
            std::swap(rows[top], rows[piv]);
            bool done = true;
            for (size_t i = top + 1; i < rows.size(); ++i) {
                i64 q = rows[i][col] / rows[top][col];
                for (int k = 0; k < 3; ++k) rows[i][k] -= q * rows[top][k];
                if (rows[i][col] != 0) done = false;
            }
            if (done) break;
        }
        ++top;
    }
    Mat3 Bm{};
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) Bm[i][j] = rows[static_cast<size_t>(j)][i];
    return Bm;
}

}  // namespace

TernaryForm watson_lambda4(const TernaryForm& f) {
    if (!f.positive_definite() || !f.primitive()) throw DomainError("watson_lambda4: form must be primitive positive definite");
    const i64 N = form_level(f), d = f.disc();
    const int n0 = valuation(N, 2), d0 = valuation(d, 2);
    if (!((n0 == 2 && d0 == 4) || (n0 == 3 && d0 == 6)))
        throw DomainError("watson_lambda4: needs 4||N with 16||d or 8||N with 64||d, got N=" + std::to_string(N) +
                          " d=" + std::to_string(d));
    const Mat3 M = f.gram();
    std::vector<Vec3> gens{{4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
    for (i64 x = 0; x < 4; ++x)
        for (i64 y = 0; y < 4; ++y)
            for (i64 z = 0; z < 4; ++z) {
                Vec3 v{x, y, z};
                bool ok = mod(f.value(v), 4) == 0;
                for (int i = 0; i < 3 && ok; ++i) ok = mod(M[i][0] * x + M[i][1] * y + M[i][2] * z, 4) == 0;
                if (ok && (x || y || z)) gens.push_back(v);
            }
    Mat3 Bm = lattice_basis(gens);
    Mat3 G{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 acc = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) acc += static_cast<i128>(Bm[k][i]) * M[k][l] * Bm[l][j];
            if (acc % 4) throw std::logic_error("watson_lambda4: Gram not divisible by 4");
            G[i][j] = narrow(acc / 4);
        }
    TernaryForm out = TernaryForm::from_gram(G);
    if (out.disc() * 16 != d) throw std::logic_error("watson_lambda4: discriminant did not drop by 16");
    return reduce(out);
}

}  // namespace tqf
