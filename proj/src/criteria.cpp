#include "primpair/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace primpair::criteria {

using intnum::Factorization;
using intnum::factorize;
using intnum::omega;
using intnum::as_prime_power;
using intnum::is_prime;

namespace {

std::vector<u128> distinct_primes(const Factorization& f) {
    std::vector<u128> ps;
    ps.reserve(f.factors.size());
    for (const auto& fac : f.factors) ps.push_back(fac.prime);
    return ps;
}

u128 pow_qm(u64 q, unsigned m) { return pow_u128_checked(q, m); }

}  // namespace

ConditionReport base_condition(u64 q, unsigned m) {
    if (!as_prime_power(q)) throw std::invalid_argument("q must be a prime power");
    if (m == 0) throw std::invalid_argument("m must be positive");
    ConditionReport rep;
    rep.q = q;
    rep.m = m;
    u128 n = pow_qm(q, m) - 1;
    rep.omega = omega(n);
    rep.lhs = std::pow(double(q), m / 2.0 - 1.0);
    double w = std::ldexp(1.0, int(rep.omega));  // W(q^m-1) = 2^omega
    rep.rhs = 2.0 * w * w;
    rep.passes = rep.lhs > rep.rhs;
    return rep;
}

SievePlan sieve_plan(u64 q, unsigned m, unsigned core_count) {
    if (!as_prime_power(q)) throw std::invalid_argument("q must be a prime power");
    if (m == 0) throw std::invalid_argument("m must be positive");
    u128 n = pow_qm(q, m) - 1;
    Factorization f = factorize(n);
    auto primes = distinct_primes(f);
    if (core_count > primes.size())
        throw std::invalid_argument("core size exceeds the number of distinct primes");

    SievePlan plan;
    plan.q = q;
    plan.m = m;
    plan.r_primes.assign(primes.begin(), primes.begin() + core_count);
    plan.sieve_primes.assign(primes.begin() + core_count, primes.end());
    plan.n = unsigned(plan.sieve_primes.size());

    Rat delta{1, 1};
    for (u128 p : plan.sieve_primes) {
        if (p > u128(std::numeric_limits<i128>::max()))
            throw std::overflow_error("rational overflow");
        delta = delta - Rat{2, i128(p)};
    }
    plan.delta = delta;
    plan.empty_sieve = plan.n == 0;
    plan.delta_nonpositive = delta.sign() <= 0;

    plan.lhs = std::pow(double(q), m / 2.0 - 1.0);
    double w_r = std::ldexp(1.0, int(core_count));  // W(r) = 2^{omega(r)}
    if (plan.empty_sieve) {
        plan.lambda = 2.0;
    } else if (plan.delta_nonpositive) {
        plan.lambda = 0.0;
    } else {
        plan.lambda = double(2 * plan.n - 1) / delta.to_double() + 2.0;
    }
    plan.rhs = plan.delta_nonpositive ? 0.0 : 2.0 * w_r * w_r * plan.lambda;
    plan.passes = !plan.delta_nonpositive && plan.lhs > plan.rhs;
    return plan;
}

SievePlan best_sieve(u64 q, unsigned m) {
    unsigned total = omega(pow_qm(q, m) - 1);
    SievePlan best;
    bool have_best = false;
    for (unsigned core = 0; core <= total; ++core) {
        SievePlan plan = sieve_plan(q, m, core);
        if (plan.passes) return plan;
        if (plan.delta_nonpositive) continue;
        if (!have_best || plan.lhs - plan.rhs > best.lhs - best.rhs) {
            best = plan;
            have_best = true;
        }
    }
    // core == total always yields an empty sieve with delta = 1, so a
    // candidate exists even when nothing passes.
    return best;
}

RegionResult region_check(u64 q, unsigned m) {
    auto pp = as_prime_power(q);
    if (!pp) throw std::invalid_argument("q must be a prime power");
    RegionResult res;
    if (m < 5) return res;

    double lq = std::log2(double(q));
    double lqm = m * lq;

    if ((m / 4.0 - 1.0) * lq > std::log2(2.03825e7)) {
        res.eliminated = true;
        res.rule = "q^(m/4 - 1) > 2.03825e7";
        return res;
    }
    if (pp->p == 2 && (0.3 * m - 1.0) * lq > std::log2(84.0)) {
        res.eliminated = true;
        res.rule = "even characteristic: q^(3m/10 - 1) > 84";
        return res;
    }
    if (pp->p != 2 && m >= 4 && !is_prime(m) &&
        (3.0 * m / 14.0 - 1.0) * lq > 1.0 && lqm > std::log2(3.73594e51)) {
        res.eliminated = true;
        res.rule = "odd characteristic, composite m: q^(3m/14 - 1) > 2 and q^m > 3.73594e51";
        return res;
    }
    return res;
}

bool mersenne_is_prime(unsigned m) {
    if (m > 127) throw std::out_of_range("exponent too large for 128-bit arithmetic");
    if (m < 2) return false;
    if (!is_prime(m)) return false;
    if (m == 2) return true;
    u128 mp = (u128(1) << m) - 1;
    u128 s = 4 % mp;
    for (unsigned i = 2; i < m; ++i) {
        s = mulmod_u128(s, s, mp);
        s = (s + mp - 2) % mp;
    }
    return s == 0;
}

MersenneResult mersenne_rule(unsigned m) {
    if (m == 0 || m > 127) throw std::out_of_range("exponent must be in [1, 127]");
    MersenneResult res;
    res.value = (u128(1) << m) - 1;
    res.applies = mersenne_is_prime(m);
    res.member = res.applies && res.value > 13;
    return res;
}

namespace {

const std::vector<TableRowRef>& table1_rows() {
    static const std::vector<TableRowRef> rows = {
        {17, 5, 1, {2, 88741}, 0.999977, 3.00002},
        {23, 5, 1, {2, 11, 292561}, 0.818175, 5.6667},
        {27, 5, 1, {2, 11, 13, 4561}, 0.663897, 9.53129},
        {29, 5, 1, {2, 7, 732541}, 0.714283, 6.20002},
        {41, 5, 1, {2, 5, 579281}, 0.599997, 7.00003},
        {43, 5, 2, {2, 3, 7, 3500201}, 0.714285, 6.2},
        {47, 5, 1, {2, 11, 23, 31, 14621}, 0.666572, 12.5015},
        {61, 5, 2, {2, 3, 5, 131, 21491}, 0.58464, 10.5523},
        {25, 6, 2, {2, 3, 7, 13, 31, 601}, 0.492561, 16.2104},
        {27, 6, 1, {2, 7, 13, 19, 37, 757}, 0.39848, 24.6426},
        {37, 6, 2, {2, 3, 7, 19, 31, 43, 67}, 0.468144, 21.2249},
        {41, 6, 2, {2, 3, 5, 7, 547, 1723}, 0.309469, 24.6194},
        {43, 6, 2, {2, 3, 7, 11, 13, 139, 631}, 0.361063, 26.9264},
        {61, 6, 3, {2, 3, 5, 7, 13, 31, 97, 523}, 0.471481, 21.08888},
        {5, 7, 1, {2, 19531}, 0.999898, 3.0001},
        {9, 7, 1, {2, 547, 1093}, 0.994514, 5.01655},
        {11, 7, 1, {2, 5, 43, 45319}, 0.553444, 11.0343},
        {19, 7, 2, {2, 3, 701, 70841}, 0.997119, 5.00867},
        {7, 8, 2, {2, 3, 5, 1201}, 0.598335, 7.01391},
        {9, 8, 1, {2, 5, 17, 41, 193}, 0.42321, 18.5403},
        {11, 8, 2, {2, 3, 5, 61, 7321}, 0.56694, 10.8193},
        {3, 9, 1, {2, 13, 757}, 0.843512, 5.55656},
        {5, 9, 1, {2, 19, 31, 829}, 0.827807, 8.04005},
        {3, 10, 1, {2, 11, 61}, 0.785395, 5.81973},
        {5, 10, 2, {2, 3, 11, 71, 521}, 0.786174, 8.35992},
        {3, 11, 1, {2, 23, 3851}, 0.912524, 5.27858},
        {5, 12, 2, {2, 3, 7, 13, 31, 601}, 0.492596, 16.2104},
        {3, 13, 1, {2, 797161}, 0.999997, 3.0},
        {3, 14, 1, {2, 547, 1093}, 0.994514, 5.01655},
        {3, 15, 1, {2, 11, 13, 4561}, 0.663897, 9.53129},
    };
    return rows;
}

const std::vector<TableRowRef>& table2_rows() {
    static const std::vector<TableRowRef> rows = {
        {2, 14, 1, {3, 43, 127}, 0.93744, 5.19918},
        {2, 15, 1, {7, 31, 151}, 0.922239, 5.25295},
        {2, 16, 1, {3, 15, 17, 257}, 0.474571, 12.5358},
        {2, 18, 1, {3, 7, 19, 73}, 0.581625, 10.5966},
        {2, 20, 1, {3, 5, 11, 31, 41}, 0.304885, 24.9595},
        {2, 24, 2, {3, 5, 7, 13, 17, 241}, 0.434494, 18.1107},
        {4, 9, 1, {3, 7, 19, 73}, 0.581625, 10.5966},
        {4, 10, 1, {3, 5, 11, 31, 41}, 0.304885, 24.9595},
        {4, 12, 2, {3, 5, 7, 13, 17, 241}, 0.434494, 18.1107},
        {8, 10, 1, {3, 7, 11, 31, 151, 331}, 0.448664, 22.0596},
        {16, 7, 1, {3, 5, 29, 43, 113, 127}, 0.451076, 21.9523},
        {32, 6, 1, {3, 7, 11, 31, 151, 331}, 0.448664, 22.0596},
        {64, 5, 1, {3, 7, 11, 31, 151, 331}, 0.448664, 22.0596},
        {64, 6, 2, {3, 5, 7, 11, 13, 19, 37, 73, 109}, 0.355376, 32.9531},
        {128, 5, 1, {31, 71, 127, 122921}, 0.956067, 7.22976},
        {256, 5, 2, {3, 5, 11, 17, 19, 31, 41, 61681}, 0.587206, 17.3268},
    };
    return rows;
}

constexpr double kDeltaFlagTol = 2e-5;
constexpr double kLambdaFlagTol = 5e-3;

TableRow check_row(const TableRowRef& ref) {
    TableRow row;
    row.ref = ref;
    row.plan = sieve_plan(ref.q, ref.m, ref.core);

    std::vector<u64> computed;
    for (u128 p : row.plan.r_primes) computed.push_back(u64(p));
    for (u128 p : row.plan.sieve_primes) computed.push_back(u64(p));
    std::sort(computed.begin(), computed.end());
    std::vector<u64> printed = ref.printed_primes;
    std::sort(printed.begin(), printed.end());
    row.primes_match = computed == printed;
    if (!row.primes_match) {
        std::string msg = "printed prime list {";
        for (size_t i = 0; i < ref.printed_primes.size(); ++i) {
            if (i) msg += ", ";
            msg += std::to_string(ref.printed_primes[i]);
        }
        msg += "} differs from computed {";
        for (size_t i = 0; i < computed.size(); ++i) {
            if (i) msg += ", ";
            msg += std::to_string(computed[i]);
        }
        msg += "}";
        row.flags.push_back(std::move(msg));
    }

    row.delta_diff = row.plan.delta.to_double() - ref.printed_delta;
    if (std::abs(row.delta_diff) > kDeltaFlagTol) {
        row.flags.push_back("printed delta " + std::to_string(ref.printed_delta) +
                            " differs from computed " +
                            std::to_string(row.plan.delta.to_double()));
    }
    row.lambda_diff = row.plan.lambda - ref.printed_lambda;
    if (std::abs(row.lambda_diff) > kLambdaFlagTol) {
        row.flags.push_back("printed lambda " + std::to_string(ref.printed_lambda) +
                            " differs from computed " + std::to_string(row.plan.lambda));
    }
    return row;
}

}  // namespace

std::vector<TableRow> table1() {
    std::vector<TableRow> out;
    out.reserve(table1_rows().size());
    for (const auto& ref : table1_rows()) out.push_back(check_row(ref));
    return out;
}

std::vector<TableRow> table2() {
    std::vector<TableRow> out;
    out.reserve(table2_rows().size());
    for (const auto& ref : table2_rows()) out.push_back(check_row(ref));
    return out;
}

}  // namespace primpair::criteria
