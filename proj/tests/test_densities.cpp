#include <doctest.h>

#include <random>

#include "density_cases.hpp"
#include "tqf/densities.hpp"

using namespace tqf;

namespace {

Rational count(const TernaryForm& f, i64 p, i64 n) { return density_count({f, p, n}); }

}  // namespace

TEST_CASE("counter examples") {
    CHECK(count(siegel_form(), 3, 1) == Rational(2, 3));
    CHECK(count({1, 1, 1, 0, 0, 0}, 5, 1) == Rational(6, 5));
    CHECK(count(aniso_odd_form(3, 0), 3, 1) == Rational(2));
    CHECK(least_nonresidue(3) == 2);
    CHECK(least_nonresidue(7) == 3);
    CHECK(least_nonresidue(23) == 5);
    CHECK_THROWS_AS(count(siegel_form(), 4, 1), DomainError);
    CHECK_THROWS_AS(count(siegel_form(), 3, 0), DomainError);
}

TEST_CASE("cell counter agrees with plain counting mod p^t") {
    const std::vector<TernaryForm> forms{siegel_form(), {1, 1, 1, 0, 0, 0}, {1, 1, 1, 1, 1, 1}, aniso_odd_form(3, 0),
                                         iso_odd_form(3, 2), iso_two_form(1), aniso_two_form(0), {2, 3, 7, 1, -1, 1}};
    for (const auto& f : forms)
        for (i64 p : {2, 3, 5})
            for (i64 n = 1; n <= 30; ++n) {
                DensityQuery q{f, p, n};
                Rational stab;
                try {
                    stab = density_count_stabilized(q, 4'000'000);
                } catch (const BudgetExceeded&) {
                    continue;
                }
                CHECK(density_count(q) == stab);
            }
    // a fixed large t agrees as well
    CHECK(density_count_mod({siegel_form(), 3, 9}, 6) == density_count({siegel_form(), 3, 9}));
    CHECK(density_count_mod({iso_two_form(0), 2, 12}, 9) == density_count({iso_two_form(0), 2, 12}));
}

TEST_CASE("Siegel formula") {
    CHECK(density_siegel_unramified(3, 1) == Rational(2, 3));
    CHECK(density_siegel_unramified(3, 3) == Rational(8, 9));
    CHECK(density_siegel_unramified(5, 2) == Rational(4, 5));
}

TEST_CASE("closed form examples") {
    CHECK(density_aniso_odd(3, 0, 3) == Rational(4, 3));
    CHECK(density_aniso_odd(3, 1, 3) == Rational(0));
    CHECK(density_aniso_odd(3, 1, 1) == Rational(2));
    CHECK(density_iso_odd(3, 2, 1) == Rational(0));
    CHECK(density_iso_odd(3, 1, 1) == Rational(0));
    CHECK(density_iso_odd(3, 1, 9) == Rational(4, 3));
    CHECK(density_aniso_two(0, 3) == Rational(4));
    CHECK(density_aniso_two(0, 7) == Rational(0));
    CHECK(density_aniso_two(0, 4) == Rational(3));
    CHECK(density_iso_two(0, 7) == Rational(3));
    CHECK(density_iso_two(0, 3) == Rational(1));
    CHECK(density_iso_two(2, 4) == Rational(0));
    CHECK(density_special_values(SpecialKind::AnisoOdd, 3, 0, 1) == Rational(4, 3));
    CHECK(density_special_values(SpecialKind::AnisoOdd, 3, 2, 1) == Rational(4, 3));
    CHECK(density_special_values(SpecialKind::IsoOdd, 5, 3, 4) == Rational(4, 5));
    CHECK(density_special_values(SpecialKind::AnisoTwo, 2, 1, 1) == Rational(3, 2));
    CHECK(density_special_values(SpecialKind::IsoTwo, 2, 0, 1) == Rational(1, 2));
    CHECK_THROWS_AS(density_special_values(SpecialKind::IsoOdd, 5, 1, 2), DomainError);
    CHECK_THROWS_AS(density_special_values(SpecialKind::IsoTwo, 2, 1, 4), DomainError);
}

TEST_CASE("closed forms equal the counter, n <= 60") {
    for (const auto& c : testdata::density_cases(60)) {
        for (i64 n : c.ns) {
            // The iso_odd special value at v = 0 is a known miss, see below.
            if (c.name.rfind("special iso_odd", 0) == 0 && c.name.find("v=0") != std::string::npos) continue;
            INFO(c.name << " n=" << n);
            CHECK(c.closed(n) == count(c.form, c.p, n));
        }
    }
}

TEST_CASE("special iso_odd value at v = 0 misses for p = 1 mod 4") {
    // -x^2 - yz at p = 5: the constant 1 - 1/p would need (-1/p) = -1.
    CHECK(density_special_values(SpecialKind::IsoOdd, 5, 0, 1) == Rational(4, 5));
    CHECK(count(special_form(SpecialKind::IsoOdd, 5, 0), 5, 1) == Rational(6, 5));
    CHECK(count(special_form(SpecialKind::IsoOdd, 5, 0), 5, 4) == Rational(6, 5));
    // p = 3, 7 have (-1/p) = -1 and agree; v >= 1 agrees for every p.
    for (i64 p : {3, 7})
        for (i64 n : {1, 4}) CHECK(count(special_form(SpecialKind::IsoOdd, p, 0), p, n) == Rational(p - 1, p));
    for (int v = 1; v <= 4; ++v) CHECK(count(special_form(SpecialKind::IsoOdd, 5, v), 5, 1) == Rational(4, 5));
}

TEST_CASE("dyadic rewrite for iso forms disagrees with the counter") {
    // The rewrite in terms of fundamental discriminants carries exponents
    // v + 1 - k where the counter needs v - k - 1, and leaves 2k = v - 1 open.
    CHECK(density_iso_two_disc(2, 16) == Rational(-6));
    CHECK(count(iso_two_form(2), 2, 16) == density_iso_two(2, 16));
    CHECK(density_iso_two(2, 16) >= Rational(0));
    CHECK_THROWS_AS(density_iso_two_disc(3, 12), DomainError);
    CHECK_THROWS_AS(density_iso_two_disc(0, 5), DomainError);
    int differ = 0;
    for (int v = 0; v <= 4; ++v)
        for (i64 n = 1; n <= 500; ++n) {
            if (n % 4 == 1 || n % 4 == 2) continue;
            Rational rw;
            try {
                rw = density_iso_two_disc(v, n);
            } catch (const DomainError&) {
                ++differ;
                continue;
            }
            if (rw != density_iso_two(v, n)) ++differ;
        }
    CHECK(differ == 371);
}

TEST_CASE("closed density dispatcher") {
    auto m = density_closed({iso_odd_form(5, 2), 5, 10});
    REQUIRE(m);
    CHECK(m->model == "iso_odd(v=2)");
    CHECK(m->value == density_iso_odd(5, 2, 10));
    m = density_closed({siegel_form(), 2, 3});
    REQUIRE(m);
    CHECK(m->model == "dyadic_base(-x^2-yz)");
    m = density_closed({aniso_two_form(1), 2, 12});
    REQUIRE(m);
    CHECK(m->model == "aniso_two(u=1)");
    CHECK_FALSE(density_closed({{1, 1, 1, 0, 0, 0}, 3, 1}));
    CHECK_FALSE(density_closed({special_form(SpecialKind::IsoOdd, 5, 1), 5, 2}));
}

TEST_CASE("density is invariant under unimodular change") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> k(-3, 3);
    for (const TernaryForm& f : {siegel_form(), aniso_odd_form(3, 1), iso_two_form(2), aniso_two_form(0)}) {
        for (int rep = 0; rep < 3; ++rep) {
            Mat3 U{{{1, k(rng), k(rng)}, {0, 1, k(rng)}, {0, 0, 1}}};
            Mat3 L{{{1, 0, 0}, {k(rng), 1, 0}, {k(rng), k(rng), 1}}};
            const TernaryForm g = f.transform(mul(U, L));
            for (i64 p : {2, 3})
                for (i64 n = 1; n <= 40; ++n) CHECK(count(g, p, n) == count(f, p, n));
        }
    }
}

TEST_CASE("dyadic scaling lemma") {
    // d_{-x^2 - 2^{v+2} yz, 2}(4n) = 2 d_{-x^2 - 2^v yz, 2}(n)
    for (int v = 0; v <= 3; ++v) {
        const TernaryForm small{-1, 0, 0, -ipow(2, v), 0, 0};
        for (i64 n = 1; n <= 80; ++n) CHECK(count(iso_two_form(v), 2, 4 * n) == Rational(2) * count(small, 2, n));
    }
}
