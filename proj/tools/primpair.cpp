#include <CLI11.hpp>

#include <array>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "primpair/criteria.hpp"
#include "primpair/gf.hpp"
#include "primpair/intnum.hpp"
#include "primpair/report.hpp"
#include "primpair/verify.hpp"

namespace {

using namespace primpair;

u64 effective_guard() {
    u64 guard = u64(1) << 28;
    const char* env = std::getenv("PRIMPAIR_GUARD");
    if (env && *env) {
        u128 v = parse_u128(env);
        if (v > std::numeric_limits<u64>::max())
            throw std::invalid_argument("PRIMPAIR_GUARD is too large");
        guard = u64(v);
    }
    return guard;
}

gf::FieldCtx build_from_args(u64 q, unsigned m, const std::string& modulus_str) {
    auto pp = intnum::as_prime_power(q);
    if (!pp) throw std::invalid_argument("q must be a prime power");
    if (modulus_str.empty()) return gf::build_field(pp->p, pp->s, m);
    return gf::build_field(pp->p, pp->s, m, gf::coeffs_from_string(modulus_str));
}

// a field element: a full comma-separated coefficient vector, or a bare
// residue below the characteristic
gf::FieldElem parse_elem(const gf::FieldCtx& F, const std::string& s) {
    if (s.find(',') != std::string::npos) return F.from_string(s);
    u64 v = 0;
    try {
        size_t used = 0;
        v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse field element: " + s);
    }
    if (v >= F.p)
        throw std::invalid_argument(
            "bare residue must be below the characteristic; pass a full coefficient vector");
    return F.from_const(v);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

// three elements separated by ':' (each may be a coefficient vector), or
// three bare residues separated by ','
std::array<gf::FieldElem, 3> parse_triple(const gf::FieldCtx& F, const std::string& s) {
    std::vector<std::string> parts =
        s.find(':') != std::string::npos ? split_on(s, ':') : split_on(s, ',');
    if (parts.size() != 3)
        throw std::invalid_argument("expected three coefficients for --coeffs");
    return {parse_elem(F, parts[0]), parse_elem(F, parts[1]), parse_elem(F, parts[2])};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field toolkit for primitive-pair existence criteria"};
    app.require_subcommand(1);

    std::string format = "text";
    unsigned workers = 0;
    std::string modulus_str;

    std::string factor_n;
    auto* c_factor = app.add_subcommand("factor", "factor an integer");
    c_factor->add_option("n", factor_n, "integer to factor")->required();
    c_factor->add_option("--format", format, "output format: text, csv, json");

    u64 q = 0;
    unsigned m = 0;
    auto add_qm = [&](CLI::App* sub) {
        sub->add_option("q", q, "subfield order (prime power)")->required();
        sub->add_option("m", m, "extension degree")->required();
        sub->add_option("--format", format, "output format: text, csv, json");
    };

    auto* c_bound = app.add_subcommand("bound", "evaluate the base inequality");
    add_qm(c_bound);

    auto* c_sieve = app.add_subcommand("sieve", "evaluate a sieve plan");
    add_qm(c_sieve);
    unsigned core = 0;
    auto* core_opt = c_sieve->add_option("--core", core, "number of primes kept in the core");

    auto* c_tables = app.add_subcommand("tables", "recompute the published sieve tables");
    int which_table = 0;
    c_tables->add_option("which", which_table, "table to recompute (1 or 2); both when omitted")
        ->check(CLI::Range(1, 2));
    c_tables->add_option("--format", format, "output format: text, csv, json");

    auto* c_classify = app.add_subcommand("classify", "run the full decision pipeline");
    add_qm(c_classify);
    c_classify->add_option("--workers", workers, "worker threads (0 = machine parallelism)");

    auto* c_search = app.add_subcommand("search", "exhaustive witness search");
    add_qm(c_search);
    std::string coeffs_str, beta_str, expect;
    bool allow_inadmissible = false;
    c_search->add_option("--coeffs", coeffs_str,
                         "single triple a:b:c (coefficient vectors) or a,b,c (bare residues)");
    c_search->add_option("--beta", beta_str, "restrict to one prescribed trace value");
    c_search->add_option("--expect", expect, "expected status; exit 2 on mismatch")
        ->check(CLI::IsMember({"member", "exceptional"}));
    c_search->add_flag("--allow-inadmissible", allow_inadmissible,
                       "also search triples with a degenerate discriminant");
    c_search->add_option("--workers", workers, "worker threads (0 = machine parallelism)");
    c_search->add_option("--modulus", modulus_str, "field modulus coefficients, constant first");

    auto* c_charsum = app.add_subcommand("charsum", "character-sum property checks");
    add_qm(c_charsum);
    bool full_suite = false;
    c_charsum->add_flag("--suite", full_suite, "run the exhaustive suite instead of the preview");
    c_charsum->add_option("--modulus", modulus_str, "field modulus coefficients, constant first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        report::Format fmt = report::parse_format(format);
        u64 guard = effective_guard();

        if (*c_factor) {
            std::cout << report::emit_factorization(intnum::factorize(parse_u128(factor_n)), fmt);
            return 0;
        }
        if (*c_bound) {
            std::cout << report::emit_bound(criteria::base_condition(q, m), fmt);
            return 0;
        }
        if (*c_sieve) {
            criteria::SievePlan plan = core_opt->count() ? criteria::sieve_plan(q, m, core)
                                                         : criteria::best_sieve(q, m);
            std::cout << report::emit_sieve(plan, fmt);
            return 0;
        }
        if (*c_tables) {
            std::vector<criteria::TableRow> rows;
            if (which_table != 2)
                for (auto& r : criteria::table1()) rows.push_back(std::move(r));
            if (which_table != 1)
                for (auto& r : criteria::table2()) rows.push_back(std::move(r));
            std::cout << report::emit_table(rows, fmt);
            return 0;
        }
        if (*c_classify) {
            std::cout << report::emit_classify(verify::classify(q, m, guard, workers), fmt);
            return 0;
        }
        if (*c_search) {
            gf::FieldCtx F = build_from_args(q, m, modulus_str);
            verify::SearchOptions so;
            so.workers = workers;
            so.guard = guard;
            so.include_inadmissible = allow_inadmissible;
            if (!coeffs_str.empty()) so.triple = parse_triple(F, coeffs_str);
            if (!beta_str.empty()) so.beta = parse_elem(F, beta_str);
            verify::PairReport rep = verify::search_pair(F, so);
            std::cout << report::emit_pair(rep, fmt);
            if (!expect.empty() && rep.status != expect) return 2;
            return 0;
        }
        if (*c_charsum) {
            gf::FieldCtx F = build_from_args(q, m, modulus_str);
            std::cout << report::emit_charsum(verify::charsum_suite(F, full_suite), fmt);
            return 0;
        }
    } catch (const std::out_of_range& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 4;
    } catch (const std::overflow_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
