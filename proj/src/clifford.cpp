#include "tqf/clifford.hpp"

#include <functional>
#include <optional>

namespace tqf {

namespace {

using Mat4 = std::array<std::array<i128, 4>, 4>;

i128 det3(const Mat4& A, int skip_row, int skip_col) {
    int rows[3], cols[3];
    for (int i = 0, k = 0; i < 4; ++i)
        if (i != skip_row) rows[k++] = i;
    for (int j = 0, k = 0; j < 4; ++j)
        if (j != skip_col) cols[k++] = j;
    auto e = [&](int i, int j) { return A[rows[i]][cols[j]]; };
    return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
           e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

// Cofactor matrix transposed, and the determinant.
std::pair<Mat4, i128> adjugate4(const Mat4& A) {
    Mat4 adj{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) adj[j][i] = ((i + j) % 2 ? -1 : 1) * det3(A, i, j);
    i128 d = 0;
    for (int j = 0; j < 4; ++j) d += A[0][j] * adj[j][0];
    return {adj, d};
}

Vec4 basis_vec(int i) {
    Vec4 v{0, 0, 0, 0};
    v[i] = 1;
    return v;
}

TernaryForm norm_form_on(const OrderBasis& o, const Vec4& u, const Vec4& v, const Vec4& w) {
    auto pair = [&](const Vec4& x, const Vec4& y) { return o.tr(o.mul(x, o.conj(y))); };
    return {o.norm(u), o.norm(v), o.norm(w), pair(v, w), pair(u, w), pair(u, v)};
}

}  // namespace

Vec4 OrderBasis::mul(const Vec4& x, const Vec4& y) const {
    i128 acc[4] = {0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < 4; ++j) {
            if (y[j] == 0) continue;
            const i128 xy = checked_mul(i128(x[i]), i128(y[j]));
            for (int k = 0; k < 4; ++k) acc[k] = checked_add(acc[k], checked_mul(xy, i128(table[i][j][k])));
        }
    }
    return {narrow(acc[0]), narrow(acc[1]), narrow(acc[2]), narrow(acc[3])};
}

i64 OrderBasis::tr(const Vec4& x) const {
    i128 s = 0;
    for (int i = 0; i < 4; ++i) s = checked_add(s, checked_mul(i128(trace[i]), i128(x[i])));
    return narrow(s);
}

Vec4 OrderBasis::conj(const Vec4& x) const { return {tr(x) - x[0], -x[1], -x[2], -x[3]}; }

i64 OrderBasis::norm(const Vec4& x) const {
    Vec4 p = mul(x, conj(x));
    if (p[1] != 0 || p[2] != 0 || p[3] != 0) throw std::logic_error("OrderBasis::norm: x conj(x) is not scalar");
    return p[0];
}

std::array<std::array<i64, 4>, 4> OrderBasis::norm_gram() const {
    std::array<std::array<i64, 4>, 4> N{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) N[i][j] = tr(mul(basis_vec(i), conj(basis_vec(j))));
    return N;
}

i64 OrderBasis::reduced_discriminant() const {
    Mat4 T{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) T[i][j] = tr(table[i][j]);
    i128 d = adjugate4(T).second;
    if (d < 0) d = -d;
    const i64 r = isqrt(narrow(d));
    if (i128(r) * r != d) throw std::logic_error("reduced_discriminant: |det tr(b_i b_j)| is not a square");
    return r;
}

OrderBasis clifford_order(const TernaryForm& f) {
    if (f.disc() == 0) throw DomainError("clifford_order: degenerate form");
    OrderBasis o;
    o.seed = f;
    o.trace = {2, f.r, f.s, f.t};
    const i64 a = f.a, b = f.b, c = f.c, r = f.r, s = f.s, t = f.t;
    auto& T = o.table;
    for (int i = 0; i < 4; ++i) {
        T[0][i] = basis_vec(i);
        T[i][0] = basis_vec(i);
    }
    T[1][1] = {-checked_mul(b, c), r, 0, 0};
    T[2][2] = {-checked_mul(a, c), 0, s, 0};
    T[3][3] = {-checked_mul(a, b), 0, 0, t};
    T[2][3] = {checked_mul(a, r), -a, 0, 0};  // a conj(e1)
    T[3][1] = {checked_mul(b, s), 0, -b, 0};  // b conj(e2)
    T[1][2] = {checked_mul(c, t), 0, 0, -c};  // c conj(e3)
    auto reverse = [&](int i, int j) {
        const i64 ti = o.trace[i], tj = o.trace[j];
        Vec4 v = o.conj(T[i][j]);
        v[0] -= checked_mul(ti, tj);
        v[j] += ti;
        v[i] += tj;
        T[j][i] = v;
    };
    reverse(2, 3);
    reverse(3, 1);
    reverse(1, 2);

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                Vec4 x = basis_vec(i), y = basis_vec(j), z = basis_vec(k);
                if (o.mul(o.mul(x, y), z) != o.mul(x, o.mul(y, z)))
                    throw std::logic_error("clifford_order: multiplication table is not associative");
            }
    return o;
}

DualBasis dual_basis(const OrderBasis& o) {
    Mat4 T{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) T[i][j] = o.tr(o.table[i][j]);
    auto [adj, det] = adjugate4(T);
    const i64 d = o.reduced_discriminant();
    // e_j' = sum_k (T^{-1})_{kj} b_k and T^{-1} = adj / det with det = +-d^2.
    const i128 scale = det / d;
    DualBasis db;
    db.den = d;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            if (adj[k][j] % scale != 0) throw std::logic_error("dual_basis: denominator exceeds discrd");
            db.num[j][k] = narrow(adj[k][j] / scale);
        }
    return db;
}

TernaryForm associated_form(const OrderBasis& o) {
    const DualBasis db = dual_basis(o);
    const TernaryForm g = norm_form_on(o, db.num[1], db.num[2], db.num[3]);
    const i64 d = db.den;
    for (i64 x : {g.a, g.b, g.c, g.r, g.s, g.t})
        if (x % d != 0) throw std::logic_error("associated_form: non-integral coefficient");
    return {g.a / d, g.b / d, g.c / d, g.r / d, g.s / d, g.t / d};
}

TernaryForm trace_zero_form(const OrderBasis& o) {
    // Column operations on the trace row (2, r, s, t) until one entry is
    // left; the other columns of U span the kernel.
    std::array<i64, 4> w = o.trace;
    std::array<Vec4, 4> U{basis_vec(0), basis_vec(1), basis_vec(2), basis_vec(3)};  // U[col]
    for (;;) {
        int piv = -1;
        for (int i = 0; i < 4; ++i)
            if (w[i] != 0 && (piv < 0 || std::llabs(w[i]) < std::llabs(w[piv]))) piv = i;
        bool done = true;
        for (int i = 0; i < 4; ++i) {
            if (i == piv || w[i] == 0) continue;
            done = false;
            const i64 q = w[i] / w[piv];
            w[i] -= q * w[piv];
            for (int k = 0; k < 4; ++k) U[i][k] = narrow(i128(U[i][k]) - i128(q) * U[piv][k]);
        }
        if (done) {
            std::array<Vec4, 3> ker;
            for (int i = 0, m = 0; i < 4; ++i)
                if (i != piv) ker[m++] = U[i];
            const TernaryForm g = norm_form_on(o, ker[0], ker[1], ker[2]);
            if (!g.positive_definite()) throw std::logic_error("trace_zero_form: order is not definite");
            return reduce(g);
        }
    }
}

TernaryForm half_integral_form(const OrderBasis& o) {
    std::array<Vec4, 3> v;
    for (int i = 1; i <= 3; ++i) {
        v[i - 1] = basis_vec(i);
        v[i - 1][i] = 2;
        v[i - 1][0] = -o.trace[i];
    }
    return norm_form_on(o, v[0], v[1], v[2]);
}

namespace {

// Calls visit(x, n(x)) for every x in O with n(x) <= bound.
void for_each_element(const OrderBasis& o, i64 bound, const std::function<void(const Vec4&, i64)>& visit) {
    const auto N = o.norm_gram();
    // n(x) = x^T A x with A = N / 2, written as sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
    Rational q[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) q[i][j] = Rational(i128(N[i][j]), i128(2));
    for (int i = 0; i < 4; ++i) {
        if (!(q[i][i] > Rational(0))) throw DomainError("rho: norm form is not positive definite");
        for (int j = i + 1; j < 4; ++j) {
            q[j][i] = q[i][j];
            q[i][j] = q[i][j] / q[i][i];
        }
        for (int k = i + 1; k < 4; ++k)
            for (int l = k; l < 4; ++l) q[k][l] -= q[k][i] * q[i][l];
    }
    Vec4 x{0, 0, 0, 0};
    std::function<void(int, Rational)> rec = [&](int i, Rational rest) {
        Rational c(0);
        for (int j = i + 1; j < 4; ++j) c -= q[i][j] * Rational(x[j]);
        // Integers y with q_ii (y - c)^2 <= rest, scanned outward from floor(c).
        i128 fl = c.num() / c.den();
        if (c.num() < 0 && c.num() % c.den() != 0) --fl;
        auto fits = [&](i128 y) {
            Rational u = Rational::from_int(y) - c;
            Rational used = q[i][i] * u * u;
            return used <= rest ? std::optional<Rational>(rest - used) : std::nullopt;
        };
        for (int dir = 0; dir < 2; ++dir) {
            for (i128 y = dir == 0 ? fl : fl + 1;; y += dir == 0 ? -1 : 1) {
                auto left = fits(y);
                if (!left) break;
                x[i] = narrow(y);
                if (i == 0) {
                    visit(x, o.norm(x));
                } else {
                    rec(i - 1, *left);
                }
            }
        }
        x[i] = 0;
    };
    rec(3, Rational(bound));
}

}  // namespace

i64 rho(const OrderBasis& o, i64 n, i64 r) {
    if (4 * n - r * r < 0) throw DomainError("rho: requires 4n - r^2 >= 0");
    i64 count = 0;
    for_each_element(o, n, [&](const Vec4& x, i64 nx) {
        if (nx == n && o.tr(x) == r) ++count;
    });
    return count;
}

std::map<std::pair<i64, i64>, i64> rho_table(const OrderBasis& o, i64 nmax) {
    std::map<std::pair<i64, i64>, i64> out;
    for_each_element(o, nmax, [&](const Vec4& x, i64 nx) { ++out[{nx, o.tr(x)}]; });
    return out;
}

}  // namespace tqf
