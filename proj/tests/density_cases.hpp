#pragma once
// Closed-form density cases swept against density_count.

#include <functional>
#include <string>
#include <vector>

#include "tqf/densities.hpp"

namespace tqf::testdata {

struct DensityCase {
    std::string name;
    TernaryForm form;
    i64 p;
    std::vector<i64> ns;
    std::function<Rational(i64)> closed;
};

inline std::vector<i64> range_n(i64 nmax) {
    std::vector<i64> v;
    for (i64 n = 1; n <= nmax; ++n) v.push_back(n);
    return v;
}

// Every closed form at p in {2,3,5,7}, u in {0,1}, v in {0..4}, n <= nmax.
inline std::vector<DensityCase> density_cases(i64 nmax) {
    std::vector<DensityCase> out;
    const auto all = range_n(nmax);
    const std::vector<i64> one_four{1, 4}, one{1};
    for (i64 p : {3, 5, 7}) {
        const std::string P = std::to_string(p);
        out.push_back({"siegel p=" + P, siegel_form(), p, all, [p](i64 n) { return density_siegel_unramified(p, n); }});
        for (int u : {0, 1}) {
            const std::string U = std::to_string(u);
            out.push_back({"aniso_odd p=" + P + " u=" + U, aniso_odd_form(p, u), p, all,
                           [p, u](i64 n) { return density_aniso_odd(p, u, n); }});
            out.push_back({"special aniso_odd p=" + P + " u=" + U, special_form(SpecialKind::AnisoOdd, p, u), p, one_four,
                           [p, u](i64 n) { return density_special_values(SpecialKind::AnisoOdd, p, u, n); }});
        }
        for (int v = 0; v <= 4; ++v) {
            const std::string V = std::to_string(v);
            out.push_back({"iso_odd p=" + P + " v=" + V, iso_odd_form(p, v), p, all,
                           [p, v](i64 n) { return density_iso_odd(p, v, n); }});
            out.push_back({"special iso_odd p=" + P + " v=" + V, special_form(SpecialKind::IsoOdd, p, v), p, one_four,
                           [p, v](i64 n) { return density_special_values(SpecialKind::IsoOdd, p, v, n); }});
        }
    }
    const std::pair<DyadicBase, const char*> bases[] = {
        {DyadicBase::XYZ, "-x^2-yz"}, {DyadicBase::X2YZ, "-x^2-2yz"}, {DyadicBase::X4YZ, "-x^2-4yz"}, {DyadicBase::Aniso, "3x^2-2(y^2+z^2+yz)"}};
    for (auto [kind, name] : bases)
        out.push_back({std::string("dyadic base ") + name, dyadic_base_form(kind), 2, all,
                       [kind = kind](i64 n) { return density_dyadic_base(kind, n); }});
    for (int u : {0, 1}) {
        const std::string U = std::to_string(u);
        out.push_back({"aniso_two u=" + U, aniso_two_form(u), 2, all, [u](i64 n) { return density_aniso_two(u, n); }});
        out.push_back({"aniso_two disc rewrite u=" + U, aniso_two_form(u), 2, all,
                       [u](i64 n) { return density_aniso_two_disc(u, n); }});
        out.push_back({"special aniso_two u=" + U, special_form(SpecialKind::AnisoTwo, 2, u), 2, one,
                       [u](i64 n) { return density_special_values(SpecialKind::AnisoTwo, 2, u, n); }});
    }
    for (int v = 0; v <= 4; ++v) {
        const std::string V = std::to_string(v);
        out.push_back({"iso_two v=" + V, iso_two_form(v), 2, all, [v](i64 n) { return density_iso_two(v, n); }});
        out.push_back({"special iso_two v=" + V, special_form(SpecialKind::IsoTwo, 2, v), 2, one,
                       [v](i64 n) { return density_special_values(SpecialKind::IsoTwo, 2, v, n); }});
    }
    return out;
}

}  // namespace tqf::testdata
