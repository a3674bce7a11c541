#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "primpair/criteria.hpp"

using namespace primpair;
using namespace primpair::criteria;

TEST_CASE("base condition examples") {
    auto r = base_condition(2, 13);
    CHECK(r.lhs == doctest::Approx(std::pow(2.0, 5.5)));
    CHECK(r.omega == 1);  // 8191 is prime
    CHECK(r.rhs == doctest::Approx(8.0));
    CHECK(r.passes);

    r = base_condition(2, 6);
    CHECK(r.lhs == doctest::Approx(4.0));
    CHECK(r.omega == 2);
    CHECK(r.rhs == doctest::Approx(32.0));
    CHECK_FALSE(r.passes);

    r = base_condition(5, 1);  // lhs = 5^{-1/2} < 1
    CHECK_FALSE(r.passes);

    CHECK_THROWS_AS(base_condition(6, 3), std::invalid_argument);
    CHECK_THROWS_AS(base_condition(0, 3), std::invalid_argument);
}

TEST_CASE("sieve plan frozen examples") {
    auto p = sieve_plan(17, 5, 1);
    REQUIRE(p.r_primes.size() == 1);
    CHECK(p.r_primes[0] == 2);
    REQUIRE(p.sieve_primes.size() == 1);
    CHECK(p.sieve_primes[0] == 88741);
    CHECK(p.n == 1);
    CHECK(p.delta.to_double() == doctest::Approx(0.999977).epsilon(1e-5));
    CHECK(p.lambda == doctest::Approx(3.00002).epsilon(1e-5));
    CHECK(p.lhs == doctest::Approx(std::pow(17.0, 1.5)));
    CHECK(p.rhs == doctest::Approx(2 * 4 * p.lambda));
    CHECK(p.passes);

    p = sieve_plan(27, 5, 1);
    CHECK(p.r_primes == std::vector<u128>{2});
    CHECK(p.sieve_primes == std::vector<u128>{11, 13, 4561});
    CHECK(p.n == 3);
    CHECK(p.delta.to_double() == doctest::Approx(0.663897).epsilon(1e-5));
    CHECK(p.lambda == doctest::Approx(9.53129).epsilon(1e-5));
    CHECK(p.passes);

    p = sieve_plan(2, 14, 1);
    CHECK(p.r_primes == std::vector<u128>{3});
    CHECK(p.sieve_primes == std::vector<u128>{43, 127});
    CHECK(p.delta == Rat(5121, 5461));
    CHECK(p.lambda == doctest::Approx(5.19918).epsilon(1e-5));
    CHECK(p.passes);
}

TEST_CASE("sieve plan edge cases") {
    CHECK_THROWS_AS(sieve_plan(2, 6, 3), std::invalid_argument);  // omega(63) = 2
    auto p = sieve_plan(2, 6, 2);  // all primes in the core
    CHECK(p.empty_sieve);
    CHECK(p.n == 0);
    CHECK(p.delta == Rat(1));
    CHECK(p.lambda == doctest::Approx(2.0));
    CHECK(p.rhs == doctest::Approx(64.0));  // 2 * 16 * 2
    CHECK_FALSE(p.passes);

    // core 0: every prime sieves; delta can go nonpositive
    p = sieve_plan(2, 6, 0);
    CHECK(p.r_primes.empty());
    CHECK(p.n == 2);
    CHECK(p.delta == Rat(1) - (Rat(2, 3) + Rat(2, 7)));
    CHECK(p.delta.sign() > 0);

    p = sieve_plan(2, 20, 0);  // 1-2(1/3+1/5+1/11+1/31+1/41) < 0
    CHECK(p.delta_nonpositive);
    CHECK_FALSE(p.passes);
}

TEST_CASE("best sieve picks the smallest passing core") {
    auto p = best_sieve(61, 5);
    CHECK(p.q == 61);
    CHECK(p.r_primes.size() == 2);
    CHECK(p.passes);
    // smaller cores must not pass
    for (unsigned c = 0; c < 2; ++c) CHECK_FALSE(sieve_plan(61, 5, c).passes);

    p = best_sieve(2, 6);
    CHECK_FALSE(p.passes);  // no plan can rescue it

    p = best_sieve(3, 13);
    CHECK(p.passes);
    CHECK(p.r_primes.size() == 1);
}

TEST_CASE("region ladder") {
    CHECK(region_check(16, 29).eliminated);
    CHECK(region_check(8, 11).eliminated);
    CHECK(region_check(2, 24).eliminated == false);
    CHECK(region_check(2, 25).eliminated);
    CHECK(region_check(4, 14).eliminated);
    CHECK(region_check(4, 13).eliminated == false);
    CHECK_FALSE(region_check(5, 9).eliminated);
    CHECK_FALSE(region_check(3, 4).eliminated);
    CHECK(region_check(16, 29).rule != "");
}

TEST_CASE("power-of-two trace field rule") {
    auto r = mersenne_rule(5);
    CHECK(r.applies);
    CHECK(r.member);
    CHECK(r.value == 31);
    r = mersenne_rule(6);
    CHECK_FALSE(r.applies);
    r = mersenne_rule(13);
    CHECK(r.applies);
    CHECK(r.member);
    r = mersenne_rule(2);
    CHECK(r.applies);       // 3 is prime
    CHECK_FALSE(r.member);  // but 3 <= 13
    r = mersenne_rule(127);
    CHECK(r.applies);
    CHECK(r.member);
    CHECK_THROWS_AS(mersenne_rule(128), std::out_of_range);
    CHECK(mersenne_is_prime(61));
    CHECK_FALSE(mersenne_is_prime(67));
}

TEST_CASE("reference table one regenerates") {
    auto rows = table1();
    REQUIRE(rows.size() == 30);
    std::set<std::pair<u64, unsigned>> delta_flagged, lambda_flagged, prime_flagged;
    for (const auto& row : rows) {
        CAPTURE(row.ref.q);
        CAPTURE(row.ref.m);
        CHECK(row.plan.passes);
        CHECK(row.primes_match);
        CHECK(std::fabs(row.delta_diff) < 5e-4);
        for (const auto& f : row.flags) {
            if (f.find("delta") != std::string::npos) delta_flagged.insert({row.ref.q, row.ref.m});
            if (f.find("lambda") != std::string::npos)
                lambda_flagged.insert({row.ref.q, row.ref.m});
            if (f.find("prime") != std::string::npos) prime_flagged.insert({row.ref.q, row.ref.m});
        }
    }
    CHECK(delta_flagged == std::set<std::pair<u64, unsigned>>{{25, 6}});
    CHECK(lambda_flagged == std::set<std::pair<u64, unsigned>>{{27, 6}, {3, 11}});
    CHECK(prime_flagged.empty());
}

TEST_CASE("reference table two regenerates") {
    auto rows = table2();
    REQUIRE(rows.size() == 16);
    std::set<std::pair<u64, unsigned>> delta_flagged, lambda_flagged, prime_flagged;
    for (const auto& row : rows) {
        CAPTURE(row.ref.q);
        CAPTURE(row.ref.m);
        CHECK(row.plan.passes);
        CHECK(std::fabs(row.delta_diff) < 5e-4);
        CHECK(std::fabs(row.lambda_diff) < 5e-3);
        for (const auto& f : row.flags) {
            if (f.find("delta") != std::string::npos) delta_flagged.insert({row.ref.q, row.ref.m});
            if (f.find("lambda") != std::string::npos)
                lambda_flagged.insert({row.ref.q, row.ref.m});
            if (f.find("prime") != std::string::npos) prime_flagged.insert({row.ref.q, row.ref.m});
        }
    }
    CHECK(delta_flagged == std::set<std::pair<u64, unsigned>>{{2, 14}});
    CHECK(lambda_flagged.empty());
    CHECK(prime_flagged ==
          std::set<std::pair<u64, unsigned>>{{2, 16}, {64, 6}, {256, 5}});
    for (const auto& row : rows) {
        bool expect_mismatch = (row.ref.q == 2 && row.ref.m == 16) ||
                               (row.ref.q == 64 && row.ref.m == 6) ||
                               (row.ref.q == 256 && row.ref.m == 5);
        CHECK(row.primes_match == !expect_mismatch);
    }
}

TEST_CASE("sieve identity holds exactly") {
    // delta = 2 * sum theta(p_i) - (2n - 1) over the sieving primes
    auto check_identity = [](const SievePlan& p) {
        Rat acc(0);
        for (u128 prime : p.sieve_primes) acc = acc + intnum::theta(prime);
        Rat rhs = Rat(2) * acc - Rat(2 * i128(p.n) - 1);
        CHECK(p.delta == rhs);
    };
    for (const auto& row : table1()) check_identity(row.plan);
    for (const auto& row : table2()) check_identity(row.plan);
}

TEST_CASE("lambda behavior") {
    for (const auto& row : table1()) {
        if (row.plan.delta.sign() > 0) CHECK(row.plan.lambda >= 2.0);
    }
    // enlarging a sieving prime (replacing it with a larger one) raises delta
    // and lowers lambda when n stays fixed
    auto p1 = sieve_plan(2, 14, 1);  // sieve primes 43, 127
    Rat d2 = Rat(1) - (Rat(2, 127) + Rat(2, 521));
    double l2 = (2.0 * 2 - 1) / d2.to_double() + 2;
    CHECK(d2 > p1.delta);
    CHECK(l2 < p1.lambda);
}

TEST_CASE("core growth trades W against n") {
    u64 q = 61;
    unsigned m = 5;
    unsigned total = base_condition(q, m).omega;
    double last_lhs = -1;
    for (unsigned core = 0; core <= total; ++core) {
        auto p = sieve_plan(q, m, core);
        CHECK(p.r_primes.size() == core);
        CHECK(p.n == total - core);
        if (last_lhs >= 0) CHECK(p.lhs == doctest::Approx(last_lhs));  // lhs ignores the core
        last_lhs = p.lhs;
        if (core == total) {
            // full core degenerates to the base condition with Lambda = 2
            CHECK(p.empty_sieve);
            auto b = base_condition(q, m);
            CHECK(p.rhs == doctest::Approx(2 * b.rhs));
        }
    }
}

TEST_CASE("randomized sieve identity sweep") {
    std::mt19937_64 rng(20260816);
    const std::vector<std::pair<u64, unsigned>> pool = {
        {2, 14}, {2, 20}, {2, 24}, {3, 9},  {3, 13}, {5, 7},  {5, 10}, {7, 8},
        {9, 7},  {11, 7}, {17, 5}, {27, 5}, {61, 5}, {64, 6}, {128, 5}};
    for (int i = 0; i < 100; ++i) {
        auto [q, m] = pool[std::uniform_int_distribution<size_t>(0, pool.size() - 1)(rng)];
        unsigned total = base_condition(q, m).omega;
        unsigned core = std::uniform_int_distribution<unsigned>(0, total)(rng);
        auto p = sieve_plan(q, m, core);
        Rat acc(0);
        for (u128 prime : p.sieve_primes) acc = acc + intnum::theta(prime);
        CHECK(p.delta == Rat(2) * acc - Rat(2 * i128(p.n) - 1));
        CHECK(p.r_primes.size() + p.sieve_primes.size() == total);
    }
}
