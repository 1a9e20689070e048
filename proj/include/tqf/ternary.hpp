#pragma once
// Positive definite integral ternary quadratic forms
//   f = a x^2 + b y^2 + c z^2 + r yz + s xz + t xy
// with Gram matrix M = [[2a, t, s], [t, 2b, r], [s, r, 2c]].

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tqf/arith.hpp"

namespace tqf {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vec3 = std::array<i64, 3>;
// Row-major 3x3 integer matrix. As a change of basis its columns are the
// new basis vectors written in old coordinates.
using Mat3 = std::array<std::array<i64, 3>, 3>;

Mat3 identity3();
Mat3 mul(const Mat3& A, const Mat3& B);
Mat3 transpose(const Mat3& A);
i64 det(const Mat3& A);
// Inverse of a matrix with determinant +-1.
Mat3 inverse_unimodular(const Mat3& A);

struct TernaryForm {
    i64 a = 0, b = 0, c = 0, r = 0, s = 0, t = 0;

    auto operator<=>(const TernaryForm&) const = default;

    Mat3 gram() const;
    static TernaryForm from_gram(const Mat3& M);
    i64 value(const Vec3& v) const;
    // Bilinear form B(u, v) = u^T M v, so B(v, v) = 2 f(v).
    i64 bilinear(const Vec3& u, const Vec3& v) const;
    // The form f(U y): Gram U^T M U.
    TernaryForm transform(const Mat3& U) const;

    i64 disc() const;  // 4abc + rst - ar^2 - bs^2 - ct^2
    i64 content() const;
    bool primitive() const { return content() == 1; }
    bool positive_definite() const;

    std::string str() const;  // "a,b,c,r,s,t"
    static TernaryForm parse(const std::string& s);
};

struct FormInvariants {
    i64 disc = 0;
    i64 divisor = 0;
    i64 level = 0;
    std::map<i64, int> hasse;  // S_p for p | 2d
    std::set<i64> aniso;       // primes with S*_p = -1
};

i64 form_divisor(const TernaryForm& f);
i64 form_level(const TernaryForm& f);
// Smallest N with N M^{-1} integral with even diagonal, from the adjugate.
i64 level_from_inverse(const TernaryForm& f);
int hasse_symbol(const TernaryForm& f, i64 p);
std::set<i64> anisotropic_primes(const TernaryForm& f);
FormInvariants invariants(const TernaryForm& f);
// Exponent restrictions between level and discriminant of a primitive
// positive definite form.
bool level_disc_constraints_hold(i64 N, i64 d);

// Canonical p-adic genus symbol of the Gram matrix: Jordan constituents
// with dimension and determinant class, and at p = 2 the Conway-Sloane
// canonical form (oddity fusion, sign walking). Also defined for
// indefinite forms, which serve as local models.
std::string local_symbol(const TernaryForm& f, i64 p);

struct GenusKey {
    i64 level = 0;
    i64 disc = 0;
    std::set<i64> aniso;
    // Optional refinement: required local_symbol at the listed primes. The
    // triple alone can cover several genera when p^2 | N for some p.
    std::map<i64, std::string> local;
    std::string str() const;
};

// Vectors v != 0 with f(v) <= bound, both v and -v, sorted by value.
struct ShortVector {
    Vec3 v;
    i64 value;
};
std::vector<ShortVector> short_vectors(const TernaryForm& f, i64 bound);

i64 rep_number(const TernaryForm& f, i64 n);
// R_f(0..nmax).
std::vector<i64> theta_series(const TernaryForm& f, i64 nmax);
// #{v : f(v) = n, z_divisor | v_z}.
i64 restricted_rep_number(const TernaryForm& f, i64 n, i64 z_divisor);

i64 aut_count(const TernaryForm& f);

struct Reduced {
    TernaryForm form;
    Mat3 witness;  // form = f.transform(witness)
};
// Canonical representative: diagonal equal to the successive minima and
// (r, s, t) lexicographically smallest among all such bases.
Reduced reduce_with_witness(const TernaryForm& f);
TernaryForm reduce(const TernaryForm& f);

// Witness W with g = f.transform(W) when f and g are equivalent.
std::optional<Mat3> equivalent(const TernaryForm& f, const TernaryForm& g, i64 theta_bound = 30);

// Default enumeration budget on the discriminant, overridable by TQF_BUDGET.
i64 default_budget();

// One canonical representative per class in the genus, ascending.
std::vector<TernaryForm> genus_enumerate(const GenusKey& key, i64 budget = 0);

// One canonical representative per class of primitive positive definite
// forms of discriminant d, ascending.
std::vector<TernaryForm> forms_of_discriminant(i64 d, i64 budget = 0);

struct Normalized {
    TernaryForm form;
    Mat3 witness;  // form = f.transform(witness)
};
// An equivalent form in the local shape at p required by phi_p.
Normalized normalize_at_p(const TernaryForm& f, i64 p);
// The shape test used by normalize_at_p and phi_p.
bool has_phi_shape(const TernaryForm& f, i64 p);

TernaryForm phi_p(const TernaryForm& f, i64 p);
TernaryForm phi_p_inv(const TernaryForm& f, i64 p);

TernaryForm watson_lambda4(const TernaryForm& f);

}  // namespace tqf
