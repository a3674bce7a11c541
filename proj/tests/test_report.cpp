#include <doctest.h>

#include <algorithm>
#include <json.hpp>

#include "primpair/report.hpp"

using namespace primpair;
using namespace primpair::report;

TEST_CASE("format names") {
    CHECK(parse_format("text") == Format::text);
    CHECK(parse_format("csv") == Format::csv);
    CHECK(parse_format("json") == Format::json);
    CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
    CHECK_THROWS_AS(parse_format(""), std::invalid_argument);
}

TEST_CASE("factorization rendering") {
    auto f = intnum::factorize(1419856);
    CHECK(emit_factorization(f, Format::text) == "1419856 = 2^4 * 88741\n");
    CHECK(emit_factorization(f, Format::csv) ==
          "value,prime,exponent\n1419856,2,4\n1419856,88741,1\n");
    auto j = nlohmann::json::parse(emit_factorization(f, Format::json));
    CHECK(j["value"] == 1419856);
    REQUIRE(j["factors"].size() == 2);
    CHECK(j["factors"][0]["prime"] == 2);
    CHECK(j["factors"][0]["exponent"] == 4);
    CHECK(j["factors"][1]["prime"] == 88741);
    CHECK(emit_factorization(intnum::factorize(1), Format::text) == "1 = 1\n");
}

TEST_CASE("bound rendering") {
    auto r = criteria::base_condition(2, 13);
    std::string text = emit_bound(r, Format::text);
    CHECK(text.find("q = 2, m = 13") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
    std::string csv = emit_bound(r, Format::csv);
    CHECK(csv.rfind("q,m,lhs,rhs,omega,passes\n", 0) == 0);
    CHECK(csv.find("2,13,") != std::string::npos);
    CHECK(csv.find(",true\n") != std::string::npos);
    auto j = nlohmann::json::parse(emit_bound(r, Format::json));
    CHECK(j["q"] == 2);
    CHECK(j["m"] == 13);
    CHECK(j["omega"] == 1);
    CHECK(j["passes"] == true);
}

TEST_CASE("sieve rendering") {
    auto p = criteria::sieve_plan(17, 5, 1);
    std::string text = emit_sieve(p, Format::text);
    CHECK(text.find("core primes  : 2") != std::string::npos);
    CHECK(text.find("sieve primes : 88741") != std::string::npos);
    CHECK(text.find("0.999977") != std::string::npos);
    CHECK(text.find("3.00002") != std::string::npos);
    CHECK(text.find("result: PASS") != std::string::npos);

    std::string csv = emit_sieve(criteria::sieve_plan(2, 14, 1), Format::csv);
    CHECK(csv.rfind("q,m,primes,omega_r,delta,lambda,lhs,rhs,passes\n", 0) == 0);
    // two sieving primes are comma-joined inside one quoted cell
    CHECK(csv.find("\"43,127\"") != std::string::npos);
    CHECK(csv.find("2,14,") != std::string::npos);

    auto j = nlohmann::json::parse(emit_sieve(p, Format::json));
    CHECK(j["core_primes"] == nlohmann::json::array({2}));
    CHECK(j["sieve_primes"] == nlohmann::json::array({88741}));
    CHECK(j["delta_exact"] == "88739/88741");
    CHECK(j["passes"] == true);
    CHECK(j["empty_sieve"] == false);
}

TEST_CASE("table rendering") {
    auto rows = criteria::table1();
    std::string text = emit_table(rows, Format::text);
    CHECK(text.find("30 rows") != std::string::npos);
    CHECK(text.find("all plans pass") != std::string::npos);
    CHECK(text.find("note:") != std::string::npos);  // at least one flagged row

    std::string csv = emit_table(rows, Format::csv);
    CHECK(csv.rfind("q,m,primes,omega_r,delta,lambda,lhs,rhs,passes\n", 0) == 0);
    size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 31);  // header + 30 rows

    auto j = nlohmann::json::parse(emit_table(rows, Format::json));
    REQUIRE(j["rows"].size() == 30);
    CHECK(j["all_pass"] == true);
    CHECK(j["flagged"].get<unsigned>() >= 3);
    const auto& row0 = j["rows"][0];
    CHECK(row0.contains("printed"));
    CHECK(row0["printed"].contains("primes"));
    CHECK(row0.contains("primes_match"));
    CHECK(row0.contains("delta_diff"));
    CHECK(row0.contains("lambda_diff"));
    CHECK(row0.contains("flags"));
}

TEST_CASE("classify rendering") {
    auto r = verify::classify(17, 5);
    std::string text = emit_classify(r, Format::text);
    CHECK(text.find("member") != std::string::npos);
    CHECK(text.find("stage: base") != std::string::npos);
    std::string csv = emit_classify(r, Format::csv);
    CHECK(csv.rfind("q,m,stage,verdict,detail\n", 0) == 0);
    CHECK(csv.find("17,5,base,member,") != std::string::npos);
    auto j = nlohmann::json::parse(emit_classify(r, Format::json));
    CHECK(j["stage"] == "base");
    CHECK(j["verdict"] == "member");
    CHECK(j.contains("region"));
    CHECK(j.contains("base"));
    CHECK_FALSE(j.contains("sieve"));  // never reached
    CHECK_FALSE(j.contains("search"));
}

TEST_CASE("pair report rendering") {
    gf::FieldCtx F = gf::build_field(2, 1, 5);
    verify::SearchOptions so;
    so.workers = 2;
    auto rep = verify::search_pair(F, so);

    std::string text = emit_pair(rep, Format::text);
    CHECK(text.find("status: member") != std::string::npos);
    CHECK(text.find("triples checked: 30752") != std::string::npos);

    std::string csv = emit_pair(rep, Format::csv);
    CHECK(csv.rfind("q,m,status,a,b,c,beta,admissible\n", 0) == 0);
    CHECK(csv.find("2,5,member,,,,,\n") != std::string::npos);  // empty row when no failures

    auto j = nlohmann::json::parse(emit_pair(rep, Format::json));
    CHECK(j["q"] == 2);
    CHECK(j["m"] == 5);
    CHECK(j["status"] == "member");
    CHECK(j["counterexamples"].is_array());
    CHECK(j["counterexamples"].empty());
    CHECK(j["triples_checked"] == 30752);
    CHECK(j.contains("early_exits"));
    CHECK(j.contains("admissible_counterexamples"));
    CHECK(j.contains("inadmissible_counterexamples"));
    CHECK(j.contains("searched_inadmissible"));
    CHECK(j["full_scope"] == true);
    CHECK(j.contains("modulus"));
    CHECK(j.contains("elapsed_ms"));

    // a report with failures carries them in order
    gf::FieldCtx G = gf::build_field(3, 1, 3, gf::coeffs_from_string("1,2,0,1"));
    verify::SearchOptions single;
    single.workers = 1;
    gf::FieldElem x = G.x_class();
    single.triple = {x, G.add(x, G.one()), G.add(G.smul(2, G.mul(x, x)), G.from_const(2))};
    auto wit = verify::search_pair(G, single);
    auto jw = nlohmann::json::parse(emit_pair(wit, Format::json));
    REQUIRE(jw["counterexamples"].size() == 2);
    CHECK(jw["counterexamples"][0]["beta"] == "1,0,0");
    CHECK(jw["counterexamples"][0].contains("a"));
    CHECK(jw["counterexamples"][0].contains("admissible"));
    std::string wcsv = emit_pair(wit, Format::csv);
    // vector coefficients contain commas, so the cells must be quoted
    CHECK(wcsv.find("\"1,0,0\"") != std::string::npos);
    std::string wtext = emit_pair(wit, Format::text);
    CHECK(wtext.find("beta=[1,0,0]") != std::string::npos);
    CHECK(wtext.find("admissible") != std::string::npos);
}

TEST_CASE("charsum rendering") {
    gf::FieldCtx F = gf::build_field(3, 1, 2);
    auto s = verify::charsum_suite(F, true);
    std::string text = emit_charsum(s, Format::text);
    CHECK(text.find("sigma-indicator") != std::string::npos);
    CHECK(text.find("overall: PASS") != std::string::npos);
    std::string csv = emit_charsum(s, Format::csv);
    CHECK(csv.rfind("q,m,check,cases,max_dev,tolerance,pass\n", 0) == 0);
    auto j = nlohmann::json::parse(emit_charsum(s, Format::json));
    CHECK(j["q"] == 3);
    CHECK(j["m"] == 2);
    CHECK(j.contains("modulus"));
    CHECK(j["all_pass"] == true);
    REQUIRE(j["checks"].size() == 7);
    for (const auto& ck : j["checks"]) {
        CHECK(ck.contains("name"));
        CHECK(ck.contains("cases"));
        CHECK(ck.contains("max_dev"));
        CHECK(ck.contains("tolerance"));
        CHECK(ck.contains("pass"));
    }
}
