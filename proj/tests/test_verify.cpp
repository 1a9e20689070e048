#include <doctest.h>

#include "tqf/classtype.hpp"
#include "tqf/verify.hpp"

using namespace tqf;

namespace {

Level L(i64 a, i64 b) { return admissible_level(a, b); }

}  // namespace

TEST_CASE("mass") {
    CHECK(mass(L(2, 1)) == Rational(1, 48));
    CHECK(mass(L(3, 1)) == Rational(1, 24));
    CHECK(mass(L(11, 1)) == Rational(5, 24));
}

TEST_CASE("admissible levels") {
    const auto levels = admissible_levels(10);
    std::vector<std::string> names;
    for (const auto& l : levels) names.push_back(l.str());
    CHECK(names == std::vector<std::string>{"(2,1)", "(3,1)", "(5,1)", "(2,3)", "(3,2)", "(7,1)", "(8,1)", "(2,5)", "(5,2)"});
    CHECK(admissible_levels(100).size() == 144);
    CHECK(class_one_levels().size() == 26);
}

TEST_CASE("genus keys") {
    const GenusKey k = level_genus_key(L(2, 1));
    CHECK(k.level == 8);
    CHECK(k.disc == 64);
    CHECK(k.aniso == std::set<i64>{2});
    const GenusKey o = order_genus_key(L(27, 5));
    CHECK(o.level == 540);
    CHECK(o.disc == 135);
    CHECK(o.aniso == std::set<i64>{3});
}

TEST_CASE("suites on small levels") {
    for (const Level& l : {L(2, 1), L(11, 1), L(13, 1), L(23, 1), L(27, 1), L(3, 4)}) {
        for (const auto& rep : {verify_mass(l), verify_type_count(l), verify_theta_identity(l, 100), verify_rho(l, 60),
                                verify_chains(l)}) {
            INFO(rep.summary());
            CHECK(rep.passed());
            CHECK_FALSE(rep.checks.empty());
        }
    }
    const auto tc = verify_type_count(L(23, 1));
    CHECK(tc.checks[0].actual == Rational(3));
    const auto tc27 = verify_type_count(L(27, 1));
    CHECK(tc27.checks[0].actual == Rational(2));
}

TEST_CASE("theta identity at (2,1)") {
    const auto rep = verify_theta_identity(L(2, 1), 12);
    REQUIRE(rep.passed());
    // D = 3: R_f(3)/|Aut| = 8/48 = 1/6
    CHECK(rep.checks[3].actual == Rational(1, 6));
    for (i64 D : {1, 2, 5, 6, 9, 10}) CHECK(rep.checks[D].actual == Rational(0));
    // last row: D = 0 against the mass
    CHECK(rep.checks.back().expected == mass(L(2, 1)));
}

TEST_CASE("order types") {
    const auto types = order_types(L(11, 1));
    REQUIRE(types.size() == 2);
    for (const auto& t : types) {
        CHECK(t.f_o.disc() == 11);
        CHECK(t.f_o0.disc() == 121);
        CHECK(t.f_s0.disc() == 16 * 121);
        CHECK(associated_form(t.order) == t.f_o);
    }
    // 4 | N: f_O0 has level N1N2
    for (const auto& t : order_types(L(3, 4))) {
        CHECK(t.f_o0.disc() == 144);
        CHECK(form_level(t.f_o0) == 12);
    }
}

TEST_CASE("class-one levels, D <= 120") {
    const auto rep = verify_class_one({L(2, 1), L(13, 1), L(78, 1), L(8, 5)}, 120, 2);
    INFO(rep.summary());
    CHECK(rep.passed());
}

TEST_CASE("report bookkeeping") {
    VerificationReport rep{"x", "y", {}, 0};
    rep.add("ok", Rational(1, 2), Rational(1, 2));
    rep.add("bad", Rational(1), Rational(2));
    rep.fail("raised");
    CHECK(rep.failures() == 2);
    CHECK_FALSE(rep.passed());
    CHECK(rep.summary().find("x y: 1/3 checks passed") != std::string::npos);
}
