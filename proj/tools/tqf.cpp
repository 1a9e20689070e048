// tqf: class and type numbers of orders of level (N1, N2) and the ternary
// form checks behind them.
//
// Exit codes: 0 success, 1 verification failure, 2 usage, 3 domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tqf/classtype.hpp"
#include "tqf/clifford.hpp"
#include "tqf/densities.hpp"
#include "tqf/hurwitz.hpp"
#include "tqf/parallel.hpp"
#include "tqf/published.hpp"
#include "tqf/verify.hpp"

using namespace tqf;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kDomain = 3 };

json form_json(const TernaryForm& f) { return json::array({f.a, f.b, f.c, f.r, f.s, f.t}); }

// One record per query command in json mode.
struct Record {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    std::string status = "ok";

    void print() const {
        json j;
        j["schema"] = "tqf-record/1";
        j["command"] = command;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        j["status"] = status;
        std::cout << j.dump(2) << "\n";
    }
};

struct Options {
    int jobs = 0;
    std::string format = "text";
    // typenum / hclass
    i64 n1 = 0, n2 = 0, d = 0;
    bool breakdown = false;
    // table
    i64 max_level = 100;
    std::string table_format = "csv";
    // density / repnum / aut / clifford
    std::string form;
    i64 p = 0, n = 0;
    std::string mode = "both";
    // genus
    i64 level = 0;
    std::string aniso;
    // verify
    std::string suite = "all";
    i64 dmax = 200, rho_dmax = 100, verify_max = 30;
    bool verbose = false;
};

TernaryForm parse_form(const std::string& s) {
    try {
        return TernaryForm::parse(s);
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception& e) {
        throw DomainError("bad form literal '" + s + "': " + e.what());
    }
}

// typenum ------------------------------------------------------------------

int cmd_typenum(const Options& o) {
    const Level level = admissible_level(o.n1, o.n2);
    const i64 h = class_number(level);
    const auto br = type_number_breakdown(level);
    const i64 t = br.total.to_int();
    if (o.format == "json") {
        Record r{"typenum"};
        r.inputs = {{"n1", o.n1}, {"n2", o.n2}};
        r.outputs = {{"h", h}, {"t", t}};
        if (o.breakdown) {
            json terms = json::array();
            for (const auto& term : br.terms)
                terms.push_back({{"n", term.n}, {"r", term.r}, {"h", term.h_value.str()}, {"factor", term.factor.str()}});
            r.outputs["terms"] = terms;
        }
        r.print();
    } else {
        std::cout << "h=" << h << " T=" << t << "\n";
        if (o.breakdown) std::cout << br.dump();
    }
    return kOk;
}

// table --------------------------------------------------------------------

struct Row {
    Level level;
    i64 h = 0, t = 0;
};

std::vector<Row> compute_rows(const std::vector<Level>& levels, int jobs) {
    return parallel_map<Row>(levels.size(), jobs, [&](std::size_t i) {
        return Row{levels[i], class_number(levels[i]), type_number(levels[i])};
    });
}

int cmd_table(const Options& o) {
    const auto rows = compute_rows(admissible_levels(o.max_level), o.jobs);
    if (o.table_format == "json") {
        json j;
        j["schema"] = "tqf-typenum/1";
        j["command"] = {{"name", "table"}, {"max", o.max_level}};
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"level", r.level.product()}, {"n1", r.level.n1}, {"n2", r.level.n2}, {"h", r.h}, {"t", r.t}});
        j["rows"] = arr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "level,n1,n2,h,t\n";
        for (const auto& r : rows)
            std::cout << r.level.product() << "," << r.level.n1 << "," << r.level.n2 << "," << r.h << "," << r.t << "\n";
    }
    return kOk;
}

// hclass / hurwitz -----------------------------------------------------------

int cmd_hclass(const Options& o) {
    const Level level = admissible_level(o.n1, o.n2);
    const Rational v = h_level(o.d, level);
    if (o.format == "json") {
        Record r{"hclass"};
        r.inputs = {{"n1", o.n1}, {"n2", o.n2}, {"d", o.d}};
        r.outputs = {{"value", v.str()}};
        r.print();
    } else {
        std::cout << v << "\n";
    }
    return kOk;
}

int cmd_hurwitz(const Options& o) {
    const Rational v = hurwitz(o.d);
    if (o.format == "json") {
        Record r{"hurwitz"};
        r.inputs = {{"d", o.d}};
        r.outputs = {{"value", v.str()}};
        r.print();
    } else {
        std::cout << v << "\n";
    }
    return kOk;
}

// density ------------------------------------------------------------------

int cmd_density(const Options& o) {
    const DensityQuery q{parse_form(o.form), o.p, o.n};
    std::optional<ClosedDensity> closed;
    std::optional<Rational> count;
    if (o.mode != "count") {
        closed = density_closed(q);
        if (!closed) throw DomainError("density: " + q.form.str() + " is not a model form with a closed density at p=" + std::to_string(q.p));
    }
    if (o.mode != "closed") count = density_count(q);
    const bool agree = !closed || !count || closed->value == *count;
    if (o.format == "json") {
        Record r{"density"};
        r.inputs = {{"form", form_json(q.form)}, {"p", q.p}, {"n", q.n}, {"mode", o.mode}};
        if (closed) {
            r.outputs["model"] = closed->model;
            r.outputs["closed"] = closed->value.str();
        }
        if (count) r.outputs["count"] = count->str();
        if (o.mode == "both") r.outputs["agree"] = agree;
        if (!agree) r.status = "mismatch";
        r.print();
    } else if (o.mode == "both") {
        std::cout << "model=" << closed->model << " closed=" << closed->value << " count=" << *count << " "
                  << (agree ? "agree" : "MISMATCH") << "\n";
    } else {
        std::cout << (closed ? closed->value : *count) << "\n";
    }
    return agree ? kOk : kVerifyFailed;
}

// repnum / aut ---------------------------------------------------------------

TernaryForm definite_form(const std::string& s) {
    TernaryForm f = parse_form(s);
    if (!f.positive_definite()) throw DomainError("form " + f.str() + " is not positive definite");
    return f;
}

int cmd_repnum(const Options& o) {
    const TernaryForm f = definite_form(o.form);
    if (o.n < 0) throw DomainError("repnum: n must be nonnegative");
    const i64 v = rep_number(f, o.n);
    if (o.format == "json") {
        Record r{"repnum"};
        r.inputs = {{"form", form_json(f)}, {"n", o.n}};
        r.outputs = {{"value", v}};
        r.print();
    } else {
        std::cout << v << "\n";
    }
    return kOk;
}

int cmd_aut(const Options& o) {
    const TernaryForm f = definite_form(o.form);
    const i64 v = aut_count(f);
    if (o.format == "json") {
        Record r{"aut"};
        r.inputs = {{"form", form_json(f)}};
        r.outputs = {{"value", v}};
        r.print();
    } else {
        std::cout << v << "\n";
    }
    return kOk;
}

// genus --------------------------------------------------------------------

std::set<i64> parse_prime_list(const std::string& s) {
    std::set<i64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        i64 p = 0;
        try {
            p = std::stoll(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || !is_prime(p)) throw DomainError("aniso: '" + item + "' is not a prime");
        out.insert(p);
    }
    return out;
}

int cmd_genus(const Options& o) {
    GenusKey key;
    if (o.n1 > 0) {
        key = level_genus_key(admissible_level(o.n1, o.n2 > 0 ? o.n2 : 1));
    } else {
        if (o.level <= 0 || o.d <= 0) throw DomainError("genus: give --level and --disc, or --n1 [--n2]");
        key.level = o.level;
        key.disc = o.d;
        key.aniso = parse_prime_list(o.aniso);
    }
    const auto classes = genus_enumerate(key);
    Rational m(0);
    std::vector<i64> auts;
    for (const auto& f : classes) {
        auts.push_back(aut_count(f));
        m += Rational(1, auts.back());
    }
    if (o.format == "json") {
        Record r{"genus"};
        r.inputs = {{"key", key.str()}};
        json arr = json::array();
        for (std::size_t i = 0; i < classes.size(); ++i) arr.push_back({{"form", form_json(classes[i])}, {"aut", auts[i]}});
        r.outputs = {{"classes", arr}, {"count", static_cast<i64>(classes.size())}, {"mass", m.str()}};
        r.print();
    } else {
        for (std::size_t i = 0; i < classes.size(); ++i) std::cout << classes[i].str() << " aut=" << auts[i] << "\n";
        std::cout << "classes=" << classes.size() << " mass=" << m << "\n";
    }
    return kOk;
}

// clifford -----------------------------------------------------------------

std::string vec_str(const Vec4& v) {
    std::ostringstream os;
    os << v[0] << "," << v[1] << "," << v[2] << "," << v[3];
    return os.str();
}

int cmd_clifford(const Options& o) {
    const TernaryForm f = definite_form(o.form);
    const OrderBasis ord = clifford_order(f);
    const TernaryForm fo = associated_form(ord);
    const TernaryForm fo0 = trace_zero_form(ord);
    const TernaryForm fs0 = reduce(half_integral_form(ord));
    const i64 discrd = ord.reduced_discriminant();
    const bool round_trip = fo == f;
    if (o.format == "json") {
        Record r{"clifford"};
        r.inputs = {{"form", form_json(f)}};
        json table = json::array();
        for (int i = 1; i < 4; ++i)
            for (int j = 1; j < 4; ++j) table.push_back(json::array({ord.table[i][j][0], ord.table[i][j][1], ord.table[i][j][2], ord.table[i][j][3]}));
        r.outputs = {{"discrd", discrd},           {"products", table},        {"f_o", form_json(fo)},
                     {"round_trip", round_trip},   {"f_o0", form_json(fo0)},   {"f_s0", form_json(fs0)}};
        if (!round_trip) r.status = "mismatch";
        r.print();
    } else {
        std::cout << "discrd=" << discrd << "\n";
        for (int i = 1; i < 4; ++i)
            for (int j = 1; j < 4; ++j) std::cout << "e" << i << "*e" << j << "=" << vec_str(ord.table[i][j]) << "\n";
        std::cout << "f_O=" << fo.str() << (round_trip ? " (round trip ok)" : " (ROUND TRIP FAILED)") << "\n";
        std::cout << "f_O0=" << fo0.str() << "\n";
        std::cout << "f_S0=" << fs0.str() << "\n";
    }
    return round_trip ? kOk : kVerifyFailed;
}

// verify -------------------------------------------------------------------

VerificationReport table_report(const std::string& name, const published::TableRow* rows, std::size_t count, int jobs) {
    std::vector<Level> levels;
    for (std::size_t i = 0; i < count; ++i) levels.push_back(admissible_level(rows[i].n1, rows[i].n2));
    const auto got = compute_rows(levels, jobs);
    VerificationReport rep{name, std::to_string(count) + " rows", {}, 0};
    for (std::size_t i = 0; i < count; ++i) {
        rep.add(levels[i].str() + " h", Rational(rows[i].h), Rational(got[i].h));
        rep.add(levels[i].str() + " T", Rational(rows[i].t), Rational(got[i].t));
    }
    return rep;
}

std::vector<VerificationReport> appendix_reports(int jobs, bool table1, bool table2) {
    std::vector<VerificationReport> out;
    if (table1) {
        out.push_back(table_report("table1", published::kTable1.data(), published::kTable1.size(), jobs));
        VerificationReport cover{"table1", "coverage", {}, 0};
        cover.add("admissible levels up to 100", Rational(static_cast<i64>(published::kTable1.size())),
                  Rational(static_cast<i64>(admissible_levels(100).size())));
        out.push_back(cover);
    }
    if (table2) out.push_back(table_report("table2", published::kTable2.data(), published::kTable2.size(), jobs));
    return out;
}

std::vector<VerificationReport> level_reports(const std::vector<std::string>& suites, const Options& o) {
    const auto levels = admissible_levels(o.verify_max);
    auto parts = parallel_map<std::vector<VerificationReport>>(levels.size(), o.jobs, [&](std::size_t i) {
        std::vector<VerificationReport> reps;
        const Level& L = levels[i];
        for (const auto& s : suites) {
            if (s == "mass") reps.push_back(verify_mass(L));
            if (s == "typecount") reps.push_back(verify_type_count(L));
            if (s == "theta") reps.push_back(verify_theta_identity(L, o.dmax));
            if (s == "rho") reps.push_back(verify_rho(L, o.rho_dmax));
            if (s == "chains") reps.push_back(verify_chains(L));
        }
        return reps;
    });
    std::vector<VerificationReport> out;
    for (auto& p : parts)
        for (auto& r : p) out.push_back(std::move(r));
    return out;
}

int cmd_verify(const Options& o) {
    static const std::vector<std::string> kLevelSuites = {"typecount", "mass", "theta", "rho", "chains"};
    std::vector<VerificationReport> reps;
    const std::string& s = o.suite;
    if (s == "appendixA" || s == "table1" || s == "table2" || s == "all") {
        auto a = appendix_reports(o.jobs, s != "table2", s != "table1");
        reps.insert(reps.end(), a.begin(), a.end());
    }
    if (s == "levels" || s == "all") {
        auto l = level_reports(kLevelSuites, o);
        reps.insert(reps.end(), l.begin(), l.end());
    } else if (std::find(kLevelSuites.begin(), kLevelSuites.end(), s) != kLevelSuites.end()) {
        auto l = level_reports({s}, o);
        reps.insert(reps.end(), l.begin(), l.end());
    }
    if (s == "classone" || s == "all") reps.push_back(verify_class_one(class_one_levels(), o.dmax, o.jobs));
    if (reps.empty()) throw CLI::ValidationError("--suite", "unknown suite '" + s + "'");

    std::size_t checks = 0, failed_checks = 0, failed_reports = 0;
    for (const auto& r : reps) {
        checks += r.checks.size();
        failed_checks += r.failures();
        if (!r.passed()) ++failed_reports;
    }
    const bool ok = failed_checks == 0;
    if (o.format == "json") {
        Record rec{"verify"};
        rec.inputs = {{"suite", s}, {"max", o.verify_max}, {"dmax", o.dmax}, {"rho_dmax", o.rho_dmax}};
        json arr = json::array();
        for (const auto& r : reps) {
            json fails = json::array();
            for (const auto& c : r.checks)
                if (!c.pass) fails.push_back({{"description", c.description}, {"expected", c.expected.str()}, {"actual", c.actual.str()}});
            arr.push_back({{"suite", r.suite}, {"subject", r.subject}, {"checks", static_cast<i64>(r.checks.size())},
                           {"failures", fails}});
        }
        rec.outputs = {{"reports", arr}, {"checks", static_cast<i64>(checks)}, {"failed", static_cast<i64>(failed_checks)}};
        rec.status = ok ? "pass" : "fail";
        rec.print();
    } else {
        for (const auto& r : reps) {
            if (r.suite == "table1" || r.suite == "table2") {
                std::size_t rows = 0, bad = 0;
                for (std::size_t i = 0; i + 1 < r.checks.size(); i += 2) {
                    ++rows;
                    if (!r.checks[i].pass || !r.checks[i + 1].pass) ++bad;
                }
                if (r.subject == "coverage") {
                    std::cout << r.summary() << "\n";
                } else {
                    for (const auto& c : r.checks)
                        if (!c.pass) std::cout << "  FAIL " << c.description << ": published " << c.expected << ", computed " << c.actual << "\n";
                    std::cout << r.suite << ": " << (rows - bad) << "/" << rows << " rows match\n";
                }
            } else if (o.verbose || !r.passed() || r.suite == "classone") {
                std::cout << r.summary() << "\n";
            }
        }
        std::cout << "verify " << s << ": " << (ok ? "PASS" : "FAIL") << " (" << (checks - failed_checks) << "/" << checks
                  << " checks, " << reps.size() - failed_reports << "/" << reps.size() << " reports)\n";
    }
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class and type numbers of orders of level (N1,N2), checked against ternary forms"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--jobs", o.jobs, "Worker threads for table and verify (default: all cores)")->check(CLI::NonNegativeNumber);

    auto text_json = [&](CLI::App* c) {
        c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto level_opts = [&](CLI::App* c) {
        c->add_option("--n1", o.n1, "N1")->required();
        c->add_option("--n2", o.n2, "N2")->required();
    };

    auto* typenum = app.add_subcommand("typenum", "Class number h and type number T");
    level_opts(typenum);
    typenum->add_flag("--breakdown", o.breakdown, "Print the terms of the type number sum");
    text_json(typenum);

    auto* table = app.add_subcommand("table", "h and T for every admissible level up to --max");
    table->add_option("--max", o.max_level, "Largest N1*N2")->check(CLI::PositiveNumber);
    table->add_option("--format", o.table_format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    auto* hclass = app.add_subcommand("hclass", "Modified class number H^(N1,N2)(D)");
    level_opts(hclass);
    hclass->add_option("--d", o.d, "D >= 0")->required();
    text_json(hclass);

    auto* hurw = app.add_subcommand("hurwitz", "Hurwitz class number H(D)");
    hurw->add_option("--d", o.d, "D >= 1")->required();
    text_json(hurw);

    auto* density = app.add_subcommand("density", "Local density d_p(n) of a ternary form");
    density->add_option("--form", o.form, "a,b,c,r,s,t")->required();
    density->add_option("--p", o.p, "Prime")->required();
    density->add_option("--n", o.n, "n >= 1")->required();
    density->add_option("--mode", o.mode, "closed, count or both")->check(CLI::IsMember({"closed", "count", "both"}));
    text_json(density);

    auto* repnum = app.add_subcommand("repnum", "Representation number R_f(n)");
    repnum->add_option("--form", o.form, "a,b,c,r,s,t")->required();
    repnum->add_option("--n", o.n, "n >= 0")->required();
    text_json(repnum);

    auto* aut = app.add_subcommand("aut", "Number of automorphs of a form");
    aut->add_option("--form", o.form, "a,b,c,r,s,t")->required();
    text_json(aut);

    auto* genus = app.add_subcommand("genus", "Classes in a genus: --level --disc [--aniso], or the f_S0 genus of --n1 --n2");
    genus->add_option("--level", o.level, "Level of the forms");
    genus->add_option("--disc", o.d, "Discriminant");
    genus->add_option("--aniso", o.aniso, "Comma separated anisotropic primes");
    genus->add_option("--n1", o.n1, "N1 of an order level");
    genus->add_option("--n2", o.n2, "N2 of an order level (default 1)");
    text_json(genus);

    auto* cliff = app.add_subcommand("clifford", "Even Clifford order of a form and its associated forms");
    cliff->add_option("--form", o.form, "a,b,c,r,s,t")->required();
    text_json(cliff);

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->add_option("--suite", o.suite,
                       "appendixA, table1, table2, typecount, mass, theta, rho, chains, levels, classone or all");
    verify->add_option("--max", o.verify_max, "Largest N1*N2 for the per-level suites")->check(CLI::PositiveNumber);
    verify->add_option("--dmax", o.dmax, "Largest D for theta and classone")->check(CLI::NonNegativeNumber);
    verify->add_option("--rho-dmax", o.rho_dmax, "Largest 4n - r^2 for rho")->check(CLI::NonNegativeNumber);
    verify->add_flag("--verbose", o.verbose, "Print every report");
    text_json(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*typenum) return cmd_typenum(o);
        if (*table) return cmd_table(o);
        if (*hclass) return cmd_hclass(o);
        if (*hurw) return cmd_hurwitz(o);
        if (*density) return cmd_density(o);
        if (*repnum) return cmd_repnum(o);
        if (*aut) return cmd_aut(o);
        if (*genus) return cmd_genus(o);
        if (*cliff) return cmd_clifford(o);
        if (*verify) return cmd_verify(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const OverflowError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const BudgetExceeded& e) {
        std::cerr << "domain error: " << e.what() << " (raise TQF_BUDGET)\n";
        return kDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kUsage;
}
