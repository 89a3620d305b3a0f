// Command-line front end: parse quiver files, print closed-form DT series,
// run brute-force point counts and theorem verification over small F_p.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdt/dt_series.hpp"
#include "qdt/oracle.hpp"
#include "qdt/quiver.hpp"

using json = nlohmann::json;
using namespace qdt;

namespace {

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

DimVec parse_alpha(const std::string& s) {
    DimVec a;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, ',')) a.push_back(std::stoi(part));
    if (a.empty()) throw std::runtime_error("empty dimension vector");
    return a;
}

std::map<std::string, long> parse_assignments(const std::vector<std::string>& sets) {
    std::map<std::string, long> out;
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects name=value, got '" + s + "'");
        out[s.substr(0, eq)] = std::stol(s.substr(eq + 1));
    }
    return out;
}

struct BranchArg {
    BranchMode mode = BranchMode::Auto;
    int r = 0;
};

BranchArg parse_branch(const std::string& s) {
    if (s == "auto") return {BranchMode::Auto, 0};
    if (s == "generic") return {BranchMode::Generic, 0};
    if (s.rfind("root:", 0) == 0) return {BranchMode::Root, std::stoi(s.substr(5))};
    throw std::runtime_error("--branch expects auto|generic|root:<r>");
}

double default_cap() {
    if (const char* env = std::getenv("QDT_CAP")) return std::stod(env);
    return 1e8;
}

std::string rational_str(const mpq_class& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

json report_json(const VerificationReport& r) {
    json j;
    j["family"] = family_name(r.spec.family, r.spec.n);
    j["branch"] =
        r.spec.branch.generic ? "generic" : "root:" + std::to_string(r.spec.branch.root_order);
    j["alpha"] = r.alpha;
    j["p"] = r.p;
    j["q"] = r.q;
    j["order_q"] = r.order_q;
    j["predicted"] = rational_str(r.predicted);
    j["observed"] = rational_str(r.observed);
    j["pass"] = r.pass;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

void print_report(const VerificationReport& r, const std::string& format) {
    if (format == "json") {
        std::cout << report_json(r).dump() << "\n";
    } else if (format == "csv") {
        json j = report_json(r);
        bool first = true;
        for (auto& [k, v] : j.items()) {
            if (!first) std::cout << ",";
            first = false;
            std::cout << (v.is_string() ? v.get<std::string>() : v.dump());
        }
        std::cout << "\n";
    } else {
        std::cout << family_name(r.spec.family, r.spec.n) << " alpha=";
        for (size_t i = 0; i < r.alpha.size(); ++i)
            std::cout << (i ? "," : "") << r.alpha[i];
        std::cout << " p=" << r.p;
        if (r.q >= 0) std::cout << " q=" << r.q << " (order " << r.order_q << ")";
        std::cout << " branch="
                  << (r.spec.branch.generic
                          ? "generic"
                          : "root:" + std::to_string(r.spec.branch.root_order))
                  << "\n  predicted " << rational_str(r.predicted) << ", observed "
                  << rational_str(r.observed) << " -> "
                  << (r.pass ? "PASS" : "FAIL") << " (" << r.elapsed_ms << " ms)\n";
    }
}

Stratum parse_stratum(const std::string& s) {
    if (s == "invertible") return Stratum::Invertible;
    if (s == "nilpotent") return Stratum::Nilpotent;
    if (s == "any") return Stratum::Any;
    throw std::runtime_error("stratum must be invertible|nilpotent|any");
}

// "x=nilpotent" or "a+b2=invertible" (block sum of several arrows).
MapConstraint parse_constraint(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("--strata expects arrow[+arrow...]=constraint");
    MapConstraint mc;
    std::istringstream is(s.substr(0, eq));
    std::string part;
    while (std::getline(is, part, '+')) mc.arrows.push_back(part);
    mc.kind = parse_stratum(s.substr(eq + 1));
    return mc;
}

int run_parse(const std::string& path, const std::string& format) {
    QuiverModel m = parse_model(read_file(path));
    if (format == "json") {
        json j;
        j["vertices"] = m.vertices;
        json arrows = json::array();
        for (const auto& a : m.arrows)
            arrows.push_back({{"name", a.name},
                              {"src", m.vertices[a.src]},
                              {"dst", m.vertices[a.dst]}});
        j["arrows"] = arrows;
        j["params"] = m.params;
        j["potential_terms"] = m.potential.size();
        if (m.cut) {
            std::vector<std::string> cut;
            for (int a : *m.cut) cut.push_back(m.arrows[a].name);
            j["cut"] = cut;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << render_model(m);
    }
    return 0;
}

int run_series(const std::string& path, const std::string& branch_s, int truncate,
               const std::string& format) {
    QuiverModel m = parse_model(read_file(path));
    TheoremSpec spec = infer_family(m);
    BranchArg b = parse_branch(branch_s);
    if (b.mode == BranchMode::Root) spec.branch = Branch::RootOfUnity(b.r);
    else spec.branch = Branch::Generic();
    MSeries s = theorem_series(spec, truncate);
    if (format == "json") {
        std::cout << s.to_json() << "\n";
    } else {
        std::cout << "# " << family_name(spec.family, spec.n) << ", truncation "
                  << truncate << "\n";
        for (const auto& [a, c] : s.coefficients()) {
            std::cout << "t^(";
            for (size_t i = 0; i < a.size(); ++i) std::cout << (i ? "," : "") << a[i];
            std::cout << ")  " << c.to_string() << "\n";
        }
    }
    return 0;
}

int run_count(const std::string& path, const std::string& alpha_s, long prime,
              const std::vector<std::string>& sets, const std::vector<std::string>& strata_s,
              double cap, int jobs, const std::string& format) {
    QuiverModel m = parse_model(read_file(path));
    if (!m.cut) throw std::runtime_error("model declares no cut");
    CountTask task{reduced_presentation(m, *m.cut), parse_alpha(alpha_s), prime,
                   parse_assignments(sets), cap, jobs};
    OracleReport rep;
    if (strata_s.empty()) {
        rep = count_representations(task);
    } else {
        std::vector<MapConstraint> cs;
        for (const auto& s : strata_s) cs.push_back(parse_constraint(s));
        rep = stratified_count(task, cs);
    }
    if (format == "json") {
        json j;
        j["alpha"] = rep.alpha;
        j["p"] = rep.p;
        j["q"] = rep.q;
        j["order_q"] = rep.order_q;
        j["representation_count"] = rep.representation_count.get_str();
        j["gl_count"] = rep.gl_count.get_str();
        j["ratio"] = rational_str(rep.ratio);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "count " << rep.representation_count.get_str() << ", |G_alpha| "
                  << rep.gl_count.get_str() << ", ratio " << rational_str(rep.ratio)
                  << "\n";
    }
    return 0;
}

int run_verify(const std::string& path, const std::string& alpha_s,
               const std::vector<long>& primes, const std::vector<std::string>& sets,
               const std::string& branch_s, int truncate, double cap, int jobs,
               const std::string& format) {
    QuiverModel m = parse_model(read_file(path));
    DimVec alpha = parse_alpha(alpha_s);
    auto vals = parse_assignments(sets);
    BranchArg b = parse_branch(branch_s);
    bool all_pass = true;
    for (long p : primes) {
        VerificationReport r =
            verify_theorem(m, alpha, p, vals, b.mode, b.r, truncate, cap, jobs);
        print_report(r, format);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : kExitVerifyFail;
}

// Lemma-level stratification checks for the quantum-plane relation.
int run_factorization_check(const std::string& path, long prime, int nmax, double cap,
                            int jobs) {
    QuiverModel m = parse_model(read_file(path));
    if (!m.cut) throw std::runtime_error("model declares no cut");
    ReducedPresentation rp = reduced_presentation(m, *m.cut);
    if (rp.quiver.arrows.size() != 2 || rp.quiver.vertices.size() != 1)
        throw std::runtime_error("factorization-check expects a two-loop reduction");
    std::string ax = rp.quiver.arrows[0].name, ay = rp.quiver.arrows[1].name;

    const Stratum kinds[2] = {Stratum::Invertible, Stratum::Nilpotent};
    bool ok = true;
    for (long q = 1; q < prime; ++q) {
        // ratios per stratum and per dimension, plus totals
        std::vector<std::vector<mpq_class>> strat(4);
        std::vector<mpq_class> total;
        for (int n = 0; n <= nmax; ++n) {
            CountTask task{rp, DimVec{n}, prime, {{"q", q}}, cap, jobs};
            total.push_back(count_representations(task).ratio);
            int s = 0;
            for (Stratum kx : kinds)
                for (Stratum ky : kinds) {
                    auto rep = stratified_count(task, {{{ax}, kx}, {{ay}, ky}});
                    strat[s++].push_back(rep.ratio);
                }
        }
        // dimension 1: the four strata partition the representations
        mpq_class sum1 = strat[0][1] + strat[1][1] + strat[2][1] + strat[3][1];
        bool part1 = (sum1 == total[1]);
        ok = ok && part1;
        std::cout << "strata-partition q=" << q << " n=1: " << (part1 ? "PASS" : "FAIL")
                  << "\n";
        // product of the four stratified series must equal the total, up to t^nmax
        for (int n = 0; n <= nmax; ++n) {
            mpq_class sum(0);
            for (int i0 = 0; i0 <= n; ++i0)
                for (int i1 = 0; i0 + i1 <= n; ++i1)
                    for (int i2 = 0; i0 + i1 + i2 <= n; ++i2) {
                        int i3 = n - i0 - i1 - i2;
                        sum += strat[0][i0] * strat[1][i1] * strat[2][i2] * strat[3][i3];
                    }
            bool match = (sum == total[n]);
            ok = ok && match;
            std::cout << "factorization q=" << q << " t^" << n << ": "
                      << (match ? "PASS" : "FAIL") << "\n";
        }
    }
    // nilpotent strata are independent of q
    for (int which = 0; which < 3; ++which) {
        Stratum kx = which == 0 ? Stratum::Invertible : Stratum::Nilpotent;
        Stratum ky = which == 1 ? Stratum::Invertible : Stratum::Nilpotent;
        for (int n = 1; n <= nmax; ++n) {
            CountTask task{rp, DimVec{n}, prime, {{"q", 1}}, cap, jobs};
            auto base = stratified_count(task, {{{ax}, kx}, {{ay}, ky}});
            bool same = true;
            for (long q = 2; q < prime; ++q) {
                task.param_values["q"] = q;
                same = same && stratified_count(task, {{{ax}, kx}, {{ay}, ky}})
                                       .representation_count == base.representation_count;
            }
            ok = ok && same;
            std::cout << "q-independence stratum " << (kx == Stratum::Nilpotent ? "N" : "I")
                      << (ky == Stratum::Nilpotent ? "N" : "I") << " n=" << n << ": "
                      << (same ? "PASS" : "FAIL") << "\n";
        }
    }
    return ok ? 0 : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal motivic DT series for quivers with potential, with "
                 "finite-field verification"};
    app.require_subcommand(1);

    std::string model, alpha = "1", branch = "auto", format = "table";
    std::vector<long> primes;
    std::vector<std::string> sets, strata;
    int truncate = 4, jobs = 1, cyc_n = 2, nmax = 2;
    double cap = default_cap();

    auto* c_parse = app.add_subcommand("parse", "Parse and validate a quiver file");
    c_parse->add_option("--model", model)->required();
    c_parse->add_option("--format", format);

    auto* c_series = app.add_subcommand("series", "Print the closed-form DT series");
    c_series->add_option("--model", model)->required();
    c_series->add_option("--branch", branch);
    c_series->add_option("--truncate", truncate);
    c_series->add_option("--format", format);

    auto* c_count = app.add_subcommand("oracle-count", "Brute-force point count over F_p");
    c_count->add_option("--model", model)->required();
    c_count->add_option("--alpha", alpha);
    c_count->add_option("--prime", primes)->required();
    c_count->add_option("--set", sets);
    c_count->add_option("--strata", strata);
    c_count->add_option("--cap", cap);
    c_count->add_option("--jobs", jobs);
    c_count->add_option("--format", format);

    auto* c_verify = app.add_subcommand("verify", "Compare closed form against counts");
    c_verify->add_option("--model", model)->required();
    c_verify->add_option("--alpha", alpha);
    c_verify->add_option("--prime", primes)->required();
    c_verify->add_option("--set", sets);
    c_verify->add_option("--branch", branch);
    c_verify->add_option("--truncate", truncate);
    c_verify->add_option("--cap", cap);
    c_verify->add_option("--jobs", jobs);
    c_verify->add_option("--format", format);

    auto* c_fact = app.add_subcommand("factorization-check",
                                      "Stratified-count factorization checks");
    c_fact->add_option("--model", model)->required();
    c_fact->add_option("--prime", primes)->required();
    c_fact->add_option("--nmax", nmax);
    c_fact->add_option("--cap", cap);
    c_fact->add_option("--jobs", jobs);

    auto* c_gen = app.add_subcommand("gen-cyclic", "Emit the cyclic quiver DSL");
    c_gen->add_option("--n", cyc_n);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_parse->parsed()) return run_parse(model, format);
        if (c_series->parsed()) {
            if (branch == "auto") branch = "generic";
            return run_series(model, branch, truncate, format);
        }
        if (c_count->parsed())
            return run_count(model, alpha, primes.at(0), sets, strata, cap, jobs, format);
        if (c_verify->parsed()) {
            // series truncation follows |alpha| unless set explicitly
            int trunc = c_verify->count("--truncate") ? truncate : 0;
            return run_verify(model, alpha, primes, sets, branch, trunc, cap, jobs,
                              format);
        }
        if (c_fact->parsed())
            return run_factorization_check(model, primes.at(0), nmax, cap, jobs);
        if (c_gen->parsed()) {
            std::cout << cyclic_model_text(cyc_n);
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SearchSpaceTooLarge& e) {
        std::cerr << e.what() << "\n";
        return kExitCap;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
