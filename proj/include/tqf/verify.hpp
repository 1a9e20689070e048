#pragma once
// Verification suites tying the class and type number formulas to the
// ternary form side: genus counts, masses, representation sums, orders.

#include <string>
#include <vector>

#include "tqf/clifford.hpp"
#include "tqf/eisenstein_h.hpp"
#include "tqf/ternary.hpp"

namespace tqf {

struct Check {
    std::string description;
    Rational expected;
    Rational actual;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::string subject;
    std::vector<Check> checks;
    i64 elapsed_ms = 0;

    void add(std::string description, const Rational& expected, const Rational& actual);
    // A failed check that carries no numeric comparison, e.g. an exception.
    void fail(std::string description);
    bool passed() const;
    std::size_t failures() const;
    // One line per failed check, then "suite subject: k/n checks passed".
    std::string summary() const;
};

// Admissible (N1, N2) with N1 N2 <= max_product, ordered by N1 N2 then N1.
std::vector<Level> admissible_levels(i64 max_product);

// Levels whose type number is 1, as listed with the exact representation
// number formulas.
std::vector<Level> class_one_levels();

// 2^{-e-1} (N1N2/12) prod_{p|N1} (1 - 1/p) prod_{p|N2} (1 + 1/p), e = #primes.
Rational mass(const Level& level);

// Genus of f_{S^0} for orders of the level: level 4N1N2, discriminant
// 16(N1N2)^2, anisotropic at the primes of N1, with the local symbols of
// the diagonal models at every p | 2N1N2 (needed when p^2 | N1N2).
GenusKey level_genus_key(const Level& level);

// (level 4N1N2, discriminant N1N2, primes of N1): the forms f_O.
GenusKey order_genus_key(const Level& level);

std::vector<TernaryForm> level_genus(const Level& level, i64 budget = 0);

struct OrderType {
    TernaryForm f_o;   // canonical seed
    OrderBasis order;  // C_0(f_o)
    TernaryForm f_o0;  // reduced
    TernaryForm f_s0;  // reduced
};

// One order per type: classes of the f_O triple whose f_{S^0} lies in
// level_genus_key. Cheap, since the f_O discriminant is only N1N2.
std::vector<OrderType> order_types(const Level& level, i64 budget = 0);

VerificationReport verify_mass(const Level& level, i64 budget = 0);
VerificationReport verify_type_count(const Level& level, i64 budget = 0);
// sum_f R_f(D)/|Aut f| = 2^{-e-1} H^(N1,N2)(D) for 0 <= D <= Dmax.
VerificationReport verify_theta_identity(const Level& level, i64 Dmax, i64 budget = 0);
// R_f(D) = 2^{-e-1} H^(N1,N2)(D) |Aut f| for the single class f.
VerificationReport verify_class_one(const std::vector<Level>& levels, i64 Dmax, int jobs = 0);
// rho_O(n, r) = R_{f_{S^0}}(4n - r^2) for every order type, 4n - r^2 <= Dmax.
VerificationReport verify_rho(const Level& level, i64 Dmax);
// lambda_4(f_{S^0}) ~ f_{O^0} when 4 does not divide N1N2, the phi chain
// over p | 2N1N2 takes f_{S^0} to f_O, and |Aut| is preserved along the way.
// |Aut f_{O^0}| = |Aut f_{S^0}| is only checked when 4 does not divide N1N2;
// otherwise f_{O^0} has level N1N2 and a different automorphism count.
VerificationReport verify_chains(const Level& level);

}  // namespace tqf
