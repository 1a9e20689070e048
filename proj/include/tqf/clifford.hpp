#pragma once
// Even Clifford algebra of a ternary form as a quaternion order, and the
// ternary forms attached back to an order.

#include <array>
#include <map>
#include <utility>

#include "tqf/ternary.hpp"

namespace tqf {

// Coordinates over the basis (1, e1, e2, e3).
using Vec4 = std::array<i64, 4>;

struct OrderBasis {
    TernaryForm seed;
    // table[i][j] = coordinates of b_i b_j with b = (1, e1, e2, e3).
    std::array<std::array<Vec4, 4>, 4> table{};
    Vec4 trace{};  // (2, r, s, t)

    Vec4 mul(const Vec4& x, const Vec4& y) const;
    Vec4 conj(const Vec4& x) const;  // tr(x) - x
    i64 tr(const Vec4& x) const;
    i64 norm(const Vec4& x) const;   // x conj(x), checked to be scalar
    // Gram matrix tr(b_i conj(b_j)) of the quaternary norm form.
    std::array<std::array<i64, 4>, 4> norm_gram() const;
    // sqrt |det tr(b_i b_j)|.
    i64 reduced_discriminant() const;
};

// C_0(f). The six defining relations are
//   e1^2 = r e1 - bc   e2 e3 = a conj(e1)
//   e2^2 = s e2 - ac   e3 e1 = b conj(e2)
//   e3^2 = t e3 - ab   e1 e2 = c conj(e3)
// and the reversed products follow from conj(xy) = conj(y) conj(x):
//   e_j e_i = conj(e_i e_j) - tr(e_i) tr(e_j) + tr(e_i) e_j + tr(e_j) e_i.
// Associativity is verified on all basis triples; DomainError on a
// degenerate form.
OrderBasis clifford_order(const TernaryForm& f);

// Dual basis for the pairing tr(x y): e_i' = num[i] / den, den = discrd.
struct DualBasis {
    std::array<Vec4, 4> num{};
    i64 den = 1;
};
DualBasis dual_basis(const OrderBasis& o);

// f_O = discrd(O) n(x e1' + y e2' + z e3').
TernaryForm associated_form(const OrderBasis& o);

// Norm form on a basis of O intersected with the trace zero space, reduced.
TernaryForm trace_zero_form(const OrderBasis& o);

// Norm form on the basis 2 e_i - tr(e_i) of (Z + 2O) intersected with the
// trace zero space, unreduced.
TernaryForm half_integral_form(const OrderBasis& o);

// #{x in O : tr(x) = r, n(x) = n}, by enumeration with the quaternary norm form.
i64 rho(const OrderBasis& o, i64 n, i64 r);

// rho(o, n, r) for all n <= nmax, keyed by (n, r).
std::map<std::pair<i64, i64>, i64> rho_table(const OrderBasis& o, i64 nmax);

}  // namespace tqf
