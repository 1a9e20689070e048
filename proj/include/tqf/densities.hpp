#pragma once
// p-adic local representation densities of ternary forms
//   d_{f,p}(n) = lim p^{-2t} #{v mod p^t : f(v) = n mod p^t}
// and the closed forms for the local models that occur at primes of the level.

#include <optional>
#include <string>

#include "tqf/arith.hpp"
#include "tqf/ternary.hpp"

namespace tqf {

struct DensityQuery {
    TernaryForm form;  // any nondegenerate integral form, definite or not
    i64 p = 2;
    i64 n = 1;
};

// Exact value by splitting Z_p^3 into cells v0 + p^k Z_p^3. A cell on which
// the gradient M v0 has valuation below k contributes p^{val - 2k} when
// f(v0) = n mod p^{k + val} and nothing otherwise; the remaining cells are
// subdivided. Throws OverflowError past a depth that valid inputs never reach.
Rational density_count(const DensityQuery& q);

// p^{-2t} #{v mod p^t : f(v) = n mod p^t} at a fixed t.
Rational density_count_mod(const DensityQuery& q, int t);

// density_count_mod evaluated from t0 = v_p(d) + v_p(n) + 2 (+1 at p = 2)
// until two consecutive values agree. Throws BudgetExceeded once p^{3t}
// exceeds max_work.
Rational density_count_stabilized(const DensityQuery& q, i64 max_work = 50'000'000);

// Least positive quadratic nonresidue mod an odd prime.
i64 least_nonresidue(i64 p);

// Local model forms.
TernaryForm siegel_form();                   // -x^2 - yz
TernaryForm aniso_odd_form(i64 p, int u);    // -e x^2 + p^{2u+1} y^2 - e p^{2u+1} z^2
TernaryForm iso_odd_form(i64 p, int v);      // -x^2 - p^v yz
TernaryForm aniso_two_form(int u);           // 3x^2 - 2^{2u+3}(y^2 + z^2 + yz)
TernaryForm iso_two_form(int v);             // -x^2 - 2^{v+2} yz

Rational density_siegel_unramified(i64 p, i64 n);
Rational density_aniso_odd(i64 p, int u, i64 n);
Rational density_iso_odd(i64 p, int v, i64 n);
Rational density_aniso_two(int u, i64 n);
Rational density_iso_two(int v, i64 n);

// The four dyadic base cases, n = 4^a m with 4 not dividing m.
enum class DyadicBase {
    XYZ,    // -x^2 - yz
    X2YZ,   // -x^2 - 2yz
    X4YZ,   // -x^2 - 4yz
    Aniso,  // 3x^2 - 2(y^2 + z^2 + yz)
};
TernaryForm dyadic_base_form(DyadicBase kind);
Rational density_dyadic_base(DyadicBase kind, i64 n);

// Values at n = 1 (and n = 4 for odd p) of the forms whose scaled part sits
// on x instead of y, z.
enum class SpecialKind { AnisoOdd, IsoOdd, AnisoTwo, IsoTwo };
TernaryForm special_form(SpecialKind kind, i64 p, int exponent);
Rational density_special_values(SpecialKind kind, i64 p, int exponent, i64 n);

// Closed form for a query whose form is literally one of the model forms
// above at the query prime; nullopt for any other form. `model` names the
// matched family, e.g. "iso_odd(v=2)".
struct ClosedDensity {
    std::string model;
    Rational value;
};
std::optional<ClosedDensity> density_closed(const DensityQuery& q);

// The same dyadic densities rewritten for n = 4^k m with -m a fundamental
// discriminant. Kept for regression tests: they disagree with the counter on
// some rows, see tests/test_densities.cpp.
Rational density_aniso_two_disc(int u, i64 n);
Rational density_iso_two_disc(int v, i64 n);

}  // namespace tqf
