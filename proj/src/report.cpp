#include "primpair/report.hpp"

#include <fmt/format.h>

#include <json.hpp>
#include <limits>
#include <stdexcept>

namespace primpair::report {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string join_u128(const std::vector<u128>& xs, const char* sep = ", ") {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += to_string(xs[i]);
    }
    return out;
}

std::string join_u64(const std::vector<u64>& xs, const char* sep = ", ") {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += fmt::format("{}", xs[i]);
    }
    return out;
}

ordered_json json_u128(u128 v) {
    if (v <= std::numeric_limits<u64>::max()) return u64(v);
    return to_string(v);
}

ordered_json json_u128_list(const std::vector<u128>& xs) {
    ordered_json arr = ordered_json::array();
    for (u128 v : xs) arr.push_back(json_u128(v));
    return arr;
}

const char* pass_word(bool b) { return b ? "PASS" : "FAIL"; }

std::string g6(double v) { return fmt::format("{:.6g}", v); }
std::string full(double v) { return fmt::format("{}", v); }

ordered_json bound_json(const criteria::ConditionReport& r) {
    ordered_json j;
    j["q"] = r.q;
    j["m"] = r.m;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["omega"] = r.omega;
    j["passes"] = r.passes;
    return j;
}

ordered_json sieve_json(const criteria::SievePlan& p) {
    ordered_json j;
    j["q"] = p.q;
    j["m"] = p.m;
    j["core_primes"] = json_u128_list(p.r_primes);
    j["sieve_primes"] = json_u128_list(p.sieve_primes);
    j["n"] = p.n;
    j["delta"] = p.delta.to_double();
    j["delta_exact"] = p.delta.to_string();
    j["lambda"] = p.lambda;
    j["lhs"] = p.lhs;
    j["rhs"] = p.rhs;
    j["passes"] = p.passes;
    j["empty_sieve"] = p.empty_sieve;
    j["delta_nonpositive"] = p.delta_nonpositive;
    return j;
}

std::string sieve_csv_row(const criteria::SievePlan& p) {
    return fmt::format("{},{},{},{},{},{},{},{},{}", p.q, p.m,
                       csv_quote(join_u128(p.sieve_primes, ",")), p.r_primes.size(),
                       full(p.delta.to_double()), full(p.lambda), full(p.lhs), full(p.rhs),
                       p.passes ? "true" : "false");
}

constexpr const char* kSieveCsvHeader = "q,m,primes,omega_r,delta,lambda,lhs,rhs,passes";

ordered_json pair_json(const verify::PairReport& r) {
    ordered_json j;
    j["q"] = r.q;
    j["m"] = r.m;
    j["status"] = r.status;
    ordered_json ces = ordered_json::array();
    for (const auto& ce : r.counterexamples) {
        ordered_json e;
        e["a"] = ce.a;
        e["b"] = ce.b;
        e["c"] = ce.c;
        e["beta"] = ce.beta;
        e["admissible"] = ce.admissible;
        ces.push_back(std::move(e));
    }
    j["counterexamples"] = std::move(ces);
    j["triples_checked"] = r.triples_checked;
    j["early_exits"] = r.early_exits;
    j["admissible_counterexamples"] = r.admissible_counterexamples;
    j["inadmissible_counterexamples"] = r.inadmissible_counterexamples;
    j["searched_inadmissible"] = r.searched_inadmissible;
    j["full_scope"] = r.full_scope;
    j["modulus"] = r.modulus;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

std::string pair_text(const verify::PairReport& r) {
    std::string out;
    out += fmt::format("q = {}, m = {} (modulus {})\n", r.q, r.m, r.modulus);
    out += fmt::format("status: {}\n", r.status);
    out += fmt::format("triples checked: {}, early exits: {}\n", r.triples_checked, r.early_exits);
    out += fmt::format("counterexamples: {} admissible, {} inadmissible\n",
                       r.admissible_counterexamples, r.inadmissible_counterexamples);
    for (const auto& ce : r.counterexamples)
        out += fmt::format("  a=[{}] b=[{}] c=[{}] beta=[{}] {}\n", ce.a, ce.b, ce.c, ce.beta,
                           ce.admissible ? "admissible" : "inadmissible");
    out += fmt::format("elapsed: {} ms\n", g6(r.elapsed_ms));
    return out;
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown format: " + name);
}

std::string emit_factorization(const intnum::Factorization& f, Format fmt) {
    switch (fmt) {
        case Format::text: {
            std::string rhs;
            for (size_t i = 0; i < f.factors.size(); ++i) {
                if (i) rhs += " * ";
                rhs += to_string(f.factors[i].prime);
                if (f.factors[i].exponent > 1)
                    rhs += fmt::format("^{}", f.factors[i].exponent);
            }
            if (f.factors.empty()) rhs = "1";
            return fmt::format("{} = {}\n", to_string(f.value), rhs);
        }
        case Format::csv: {
            std::string out = "value,prime,exponent\n";
            for (const auto& fac : f.factors)
                out += fmt::format("{},{},{}\n", to_string(f.value), to_string(fac.prime),
                                   fac.exponent);
            return out;
        }
        case Format::json: {
            ordered_json j;
            j["value"] = json_u128(f.value);
            ordered_json arr = ordered_json::array();
            for (const auto& fac : f.factors) {
                ordered_json e;
                e["prime"] = json_u128(fac.prime);
                e["exponent"] = fac.exponent;
                arr.push_back(std::move(e));
            }
            j["factors"] = std::move(arr);
            return j.dump() + "\n";
        }
    }
    return {};
}

std::string emit_bound(const criteria::ConditionReport& r, Format fmt) {
    switch (fmt) {
        case Format::text:
            return fmt::format(
                "q = {}, m = {}\n  lhs q^(m/2-1)     = {}\n  rhs 2 W(q^m-1)^2  = {}\n  omega(q^m-1)      "
                "= {}\n  result: {}\n",
                r.q, r.m, g6(r.lhs), g6(r.rhs), r.omega, pass_word(r.passes));
        case Format::csv:
            return fmt::format("q,m,lhs,rhs,omega,passes\n{},{},{},{},{},{}\n", r.q, r.m,
                               full(r.lhs), full(r.rhs), r.omega, r.passes ? "true" : "false");
        case Format::json:
            return bound_json(r).dump() + "\n";
    }
    return {};
}

std::string emit_sieve(const criteria::SievePlan& p, Format fmt) {
    switch (fmt) {
        case Format::text: {
            std::string out = fmt::format("q = {}, m = {}\n", p.q, p.m);
            out += fmt::format("  core primes  : {}\n",
                               p.r_primes.empty() ? std::string("(none)") : join_u128(p.r_primes));
            out += fmt::format("  sieve primes : {}\n", p.empty_sieve ? std::string("(none)")
                                                                      : join_u128(p.sieve_primes));
            out += fmt::format("  n      = {}\n", p.n);
            out += fmt::format("  delta  = {}  ({})\n", g6(p.delta.to_double()),
                               p.delta.to_string());
            out += fmt::format("  lambda = {}\n", g6(p.lambda));
            out += fmt::format("  lhs    = {}\n", g6(p.lhs));
            out += fmt::format("  rhs    = {}\n", g6(p.rhs));
            if (p.delta_nonpositive) out += "  note: delta is not positive\n";
            out += fmt::format("  result: {}\n", pass_word(p.passes));
            return out;
        }
        case Format::csv:
            return fmt::format("{}\n{}\n", kSieveCsvHeader, sieve_csv_row(p));
        case Format::json:
            return sieve_json(p).dump() + "\n";
    }
    return {};
}

std::string emit_table(const std::vector<criteria::TableRow>& rows, Format fmt) {
    switch (fmt) {
        case Format::text: {
            std::string out;
            unsigned flagged = 0;
            bool all_pass = true;
            for (const auto& row : rows) {
                const auto& p = row.plan;
                out += fmt::format("q={:<4} m={:<3} core={} primes={{{}}} delta={} lambda={} {}\n",
                                   p.q, p.m, p.r_primes.size(), join_u128(p.sieve_primes, ","),
                                   g6(p.delta.to_double()), g6(p.lambda), pass_word(p.passes));
                for (const auto& fl : row.flags) {
                    out += fmt::format("  note: {}\n", fl);
                }
                if (!row.flags.empty()) ++flagged;
                all_pass = all_pass && p.passes;
            }
            out += fmt::format("{} rows, {} flagged, {}\n", rows.size(), flagged,
                               all_pass ? "all plans pass" : "some plans fail");
            return out;
        }
        case Format::csv: {
            std::string out = std::string(kSieveCsvHeader) + "\n";
            for (const auto& row : rows) out += sieve_csv_row(row.plan) + "\n";
            return out;
        }
        case Format::json: {
            ordered_json j;
            ordered_json arr = ordered_json::array();
            unsigned flagged = 0;
            bool all_pass = true;
            for (const auto& row : rows) {
                ordered_json e = sieve_json(row.plan);
                ordered_json printed;
                printed["primes"] = row.ref.printed_primes;
                printed["delta"] = row.ref.printed_delta;
                printed["lambda"] = row.ref.printed_lambda;
                e["printed"] = std::move(printed);
                e["primes_match"] = row.primes_match;
                e["delta_diff"] = row.delta_diff;
                e["lambda_diff"] = row.lambda_diff;
                e["flags"] = row.flags;
                if (!row.flags.empty()) ++flagged;
                all_pass = all_pass && row.plan.passes;
                arr.push_back(std::move(e));
            }
            j["rows"] = std::move(arr);
            j["flagged"] = flagged;
            j["all_pass"] = all_pass;
            return j.dump() + "\n";
        }
    }
    return {};
}

std::string emit_classify(const verify::ClassifyResult& r, Format fmt) {
    switch (fmt) {
        case Format::text: {
            std::string out = fmt::format("q = {}, m = {}: {} (stage: {})\n", r.q, r.m, r.verdict,
                                          r.stage);
            out += fmt::format("  detail: {}\n", r.detail);
            if (r.search && r.search->status == "exceptional")
                out += fmt::format("  counterexamples: {} admissible\n",
                                   r.search->admissible_counterexamples);
            return out;
        }
        case Format::csv:
            return fmt::format("q,m,stage,verdict,detail\n{},{},{},{},{}\n", r.q, r.m, r.stage,
                               r.verdict, csv_quote(r.detail));
        case Format::json: {
            ordered_json j;
            j["q"] = r.q;
            j["m"] = r.m;
            j["stage"] = r.stage;
            j["verdict"] = r.verdict;
            j["detail"] = r.detail;
            if (r.region) {
                ordered_json e;
                e["eliminated"] = r.region->eliminated;
                e["rule"] = r.region->rule;
                j["region"] = std::move(e);
            }
            if (r.base) j["base"] = bound_json(*r.base);
            if (r.sieve) j["sieve"] = sieve_json(*r.sieve);
            if (r.search) j["search"] = pair_json(*r.search);
            return j.dump() + "\n";
        }
    }
    return {};
}

std::string emit_pair(const verify::PairReport& r, Format fmt) {
    switch (fmt) {
        case Format::text:
            return pair_text(r);
        case Format::csv: {
            std::string out = "q,m,status,a,b,c,beta,admissible\n";
            if (r.counterexamples.empty())
                out += fmt::format("{},{},{},,,,,\n", r.q, r.m, r.status);
            for (const auto& ce : r.counterexamples)
                out += fmt::format("{},{},{},{},{},{},{},{}\n", r.q, r.m, r.status,
                                   csv_quote(ce.a), csv_quote(ce.b), csv_quote(ce.c),
                                   csv_quote(ce.beta), ce.admissible ? "true" : "false");
            return out;
        }
        case Format::json:
            return pair_json(r).dump() + "\n";
    }
    return {};
}

std::string emit_charsum(const verify::CharsumSuite& s, Format fmt) {
    switch (fmt) {
        case Format::text: {
            std::string out = fmt::format("q = {}, m = {} (modulus {})\n", s.q, s.m, s.modulus);
            for (const auto& ck : s.checks)
                out += fmt::format("  {:<20} cases={:<8} max_dev={:<12} tol={:<8} {}\n", ck.name,
                                   ck.cases, g6(ck.max_dev), g6(ck.tolerance), pass_word(ck.pass));
            out += fmt::format("overall: {}\n", pass_word(s.all_pass));
            return out;
        }
        case Format::csv: {
            std::string out = "q,m,check,cases,max_dev,tolerance,pass\n";
            for (const auto& ck : s.checks)
                out += fmt::format("{},{},{},{},{},{},{}\n", s.q, s.m, ck.name, ck.cases,
                                   full(ck.max_dev), full(ck.tolerance),
                                   ck.pass ? "true" : "false");
            return out;
        }
        case Format::json: {
            ordered_json j;
            j["q"] = s.q;
            j["m"] = s.m;
            j["modulus"] = s.modulus;
            ordered_json arr = ordered_json::array();
            for (const auto& ck : s.checks) {
                ordered_json e;
                e["name"] = ck.name;
                e["cases"] = ck.cases;
                e["max_dev"] = ck.max_dev;
                e["tolerance"] = ck.tolerance;
                e["pass"] = ck.pass;
                arr.push_back(std::move(e));
            }
            j["checks"] = std::move(arr);
            j["all_pass"] = s.all_pass;
            return j.dump() + "\n";
        }
    }
    return {};
}

}  // namespace primpair::report
