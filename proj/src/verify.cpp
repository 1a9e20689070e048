#include "tqf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "tqf/classtype.hpp"
#include "tqf/densities.hpp"
#include "tqf/parallel.hpp"

namespace tqf {

namespace {

using Clock = std::chrono::steady_clock;

i64 ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

Rational two_power_weight(const Level& level) { return Rational(1, ipow(2, level.omega() + 1)); }

bool in_genus(const TernaryForm& f, const GenusKey& key) {
    if (f.disc() != key.disc || form_level(f) != key.level || !f.primitive()) return false;
    if (anisotropic_primes(f) != key.aniso) return false;
    for (const auto& [p, sym] : key.local)
        if (local_symbol(f, p) != sym) return false;
    return true;
}

}  // namespace

void VerificationReport::add(std::string description, const Rational& expected, const Rational& actual) {
    checks.push_back({std::move(description), expected, actual, expected == actual});
}

void VerificationReport::fail(std::string description) {
    checks.push_back({std::move(description), Rational(0), Rational(0), false});
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

std::string VerificationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks)
        if (!c.pass) os << "  FAIL " << c.description << ": expected " << c.expected << ", got " << c.actual << "\n";
    os << suite << " " << subject << ": " << (checks.size() - failures()) << "/" << checks.size() << " checks passed";
    return os.str();
}

std::vector<Level> admissible_levels(i64 max_product) {
    std::vector<Level> out;
    for (i64 N = 2; N <= max_product; ++N)
        for (i64 n1 : unitary_divisors(N)) {
            try {
                out.push_back(admissible_level(n1, N / n1));
            } catch (const DomainError&) {
            }
        }
    return out;
}

std::vector<Level> class_one_levels() {
    static const std::pair<i64, i64> kLevels[] = {
        {2, 1}, {2, 3}, {2, 5}, {2, 7},  {2, 9},  {2, 11}, {2, 15}, {2, 23}, {3, 1},  {3, 2},  {3, 4},  {3, 5},  {3, 8},
        {3, 11}, {5, 1}, {5, 2}, {5, 4}, {7, 1}, {7, 3},  {8, 1},  {8, 5},  {13, 1}, {30, 1}, {42, 1}, {70, 1}, {78, 1},
    };
    std::vector<Level> out;
    for (auto [n1, n2] : kLevels) out.push_back(admissible_level(n1, n2));
    return out;
}

Rational mass(const Level& level) {
    Rational m = two_power_weight(level) * Rational(level.product(), 12);
    for (auto [p, e] : level.f1) m *= Rational(1) - Rational(1, p);
    for (auto [p, e] : level.f2) m *= Rational(1) + Rational(1, p);
    return m;
}

GenusKey level_genus_key(const Level& level) {
    const i64 N = level.product();
    GenusKey key;
    key.level = checked_mul(4, N);
    key.disc = checked_mul(16, checked_mul(N, N));
    for (auto [p, e] : level.f1) key.aniso.insert(p);
    for (i64 p : prime_divisors(2 * N)) {
        TernaryForm model;
        if (level.in_n1(p)) {
            const int u = (level.v1(p) - 1) / 2;
            model = p == 2 ? aniso_two_form(u) : aniso_odd_form(p, u);
        } else {
            const int v = N % p == 0 ? level.v2(p) : 0;
            model = p == 2 ? iso_two_form(v) : iso_odd_form(p, v);
        }
        key.local[p] = local_symbol(model, p);
    }
    return key;
}

GenusKey order_genus_key(const Level& level) {
    GenusKey key;
    key.level = checked_mul(4, level.product());
    key.disc = level.product();
    for (auto [p, e] : level.f1) key.aniso.insert(p);
    return key;
}

std::vector<TernaryForm> level_genus(const Level& level, i64 budget) {
    return genus_enumerate(level_genus_key(level), budget);
}

std::vector<OrderType> order_types(const Level& level, i64 budget) {
    const GenusKey s0 = level_genus_key(level);
    std::vector<OrderType> out;
    for (const auto& f : genus_enumerate(order_genus_key(level), budget)) {
        OrderBasis o = clifford_order(f);
        TernaryForm fs = reduce(half_integral_form(o));
        if (!in_genus(fs, s0)) continue;
        out.push_back({f, o, trace_zero_form(o), fs});
    }
    return out;
}

VerificationReport verify_mass(const Level& level, i64 budget) {
    const auto t0 = Clock::now();
    VerificationReport rep{"mass", level.str(), {}, 0};
    Rational sum(0);
    for (const auto& f : level_genus(level, budget)) sum += Rational(1, aut_count(f));
    rep.add("sum 1/|Aut f| over " + level_genus_key(level).str(), mass(level), sum);
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

VerificationReport verify_type_count(const Level& level, i64 budget) {
    const auto t0 = Clock::now();
    VerificationReport rep{"typecount", level.str(), {}, 0};
    const i64 T = type_number(level);
    rep.add("classes in " + level_genus_key(level).str(), Rational(T),
            Rational(static_cast<i64>(level_genus(level, budget).size())));
    rep.add("order types from the f_O genus", Rational(T),
            Rational(static_cast<i64>(order_types(level, budget).size())));
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

VerificationReport verify_theta_identity(const Level& level, i64 Dmax, i64 budget) {
    const auto t0 = Clock::now();
    VerificationReport rep{"theta", level.str(), {}, 0};
    const auto genus = level_genus(level, budget);
    std::vector<Rational> lhs(static_cast<std::size_t>(Dmax + 1), Rational(0));
    for (const auto& f : genus) {
        const Rational w(1, aut_count(f));
        const auto theta = theta_series(f, Dmax);
        for (i64 D = 0; D <= Dmax; ++D) lhs[D] += w * Rational(theta[D]);
    }
    const Rational w = two_power_weight(level);
    for (i64 D = 0; D <= Dmax; ++D)
        rep.add("D=" + std::to_string(D), w * h_level(D, level), lhs[D]);
    rep.add("D=0 row against the mass", mass(level), lhs[0]);
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

VerificationReport verify_class_one(const std::vector<Level>& levels, i64 Dmax, int jobs) {
    const auto t0 = Clock::now();
    auto parts = parallel_map<VerificationReport>(levels.size(), jobs, [&](std::size_t i) {
        const Level& level = levels[i];
        VerificationReport rep{"classone", level.str(), {}, 0};
        const auto types = order_types(level);
        rep.add(level.str() + " number of classes", Rational(1), Rational(static_cast<i64>(types.size())));
        if (types.size() != 1) return rep;
        const TernaryForm& f = types[0].f_s0;
        const Rational aut(aut_count(f));
        const auto theta = theta_series(f, Dmax);
        const Rational w = two_power_weight(level);
        for (i64 D = 0; D <= Dmax; ++D) {
            if (D % 4 == 1 || D % 4 == 2) continue;
            rep.add(level.str() + " R_f(" + std::to_string(D) + ") for f=" + f.str(), w * h_level(D, level) * aut,
                    Rational(theta[D]));
        }
        return rep;
    });
    VerificationReport rep{"classone", std::to_string(levels.size()) + " levels", {}, 0};
    for (auto& p : parts)
        for (auto& c : p.checks) rep.checks.push_back(std::move(c));
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

VerificationReport verify_rho(const Level& level, i64 Dmax) {
    const auto t0 = Clock::now();
    VerificationReport rep{"rho", level.str(), {}, 0};
    // rho(n, r) only depends on 4n - r^2 and r mod 2 (x -> x + k), but all
    // |r| <= 3 are enumerated to exercise the trace shift as well.
    const i64 nmax = (Dmax + 9) / 4;
    for (const auto& t : order_types(level)) {
        const auto table = rho_table(t.order, nmax);
        const auto theta = theta_series(t.f_s0, Dmax);
        for (i64 r = -3; r <= 3; ++r)
            for (i64 n = 0; 4 * n - r * r <= Dmax; ++n) {
                const i64 D = 4 * n - r * r;
                if (D < 0) continue;
                auto it = table.find({n, r});
                const i64 got = it == table.end() ? 0 : it->second;
                rep.add("f_O=" + t.f_o.str() + " n=" + std::to_string(n) + " r=" + std::to_string(r), Rational(theta[D]),
                        Rational(got));
            }
    }
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

VerificationReport verify_chains(const Level& level) {
    const auto t0 = Clock::now();
    VerificationReport rep{"chains", level.str(), {}, 0};
    const i64 N = level.product();
    for (const auto& t : order_types(level)) {
        const std::string tag = "f_O=" + t.f_o.str();
        const Rational aut(aut_count(t.f_s0));
        rep.add(tag + " |Aut f_O| = |Aut f_S0|", aut, Rational(aut_count(t.f_o)));
        rep.add(tag + " d(f_O0)", Rational(checked_mul(N, N)), Rational(t.f_o0.disc()));
        if (N % 4 != 0) {
            rep.add(tag + " |Aut f_O0| = |Aut f_S0|", aut, Rational(aut_count(t.f_o0)));
        } else {
            rep.add(tag + " level of f_O0", Rational(N), Rational(form_level(t.f_o0)));
        }
        try {
            if (N % 4 != 0) {
                const TernaryForm l4 = watson_lambda4(t.f_s0);
                rep.add(tag + " lambda_4(f_S0) ~ f_O0", Rational(1), Rational(equivalent(l4, t.f_o0) ? 1 : 0));
                rep.add(tag + " |Aut| under lambda_4", aut, Rational(aut_count(l4)));
            }
            TernaryForm g = t.f_s0;
            for (i64 p : prime_divisors(2 * N)) {
                g = phi_p(g, p);
                rep.add(tag + " |Aut| under phi_" + std::to_string(p), aut, Rational(aut_count(g)));
            }
            rep.add(tag + " phi chain of f_S0 ~ f_O", Rational(1), Rational(equivalent(g, t.f_o) ? 1 : 0));
        } catch (const std::exception& e) {
            rep.fail(tag + " chain raised: " + e.what());
        }
    }
    rep.elapsed_ms = ms_since(t0);
    return rep;
}

}  // namespace tqf
