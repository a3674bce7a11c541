#pragma once

#include <string>
#include <vector>

#include "primpair/intnum.hpp"
#include "primpair/rat.hpp"

namespace primpair::criteria {

// q^{m/2-1} > 2 W(q^m-1)^2
struct ConditionReport {
    u64 q = 0;
    unsigned m = 0;
    double lhs = 0;
    double rhs = 0;
    bool passes = false;
    unsigned omega = 0;
};
ConditionReport base_condition(u64 q, unsigned m);

struct SievePlan {
    u64 q = 0;
    unsigned m = 0;
    std::vector<u128> r_primes;      // core, ascending
    std::vector<u128> sieve_primes;  // ascending
    unsigned n = 0;                  // sieve prime count
    Rat delta;                       // 1 - 2 sum 1/p_i, exact
    double lambda = 0;               // (2n-1)/delta + 2; 2 when n = 0
    double lhs = 0;                  // q^{m/2-1}
    double rhs = 0;                  // 2 W(r)^2 lambda
    bool passes = false;
    bool empty_sieve = false;        // n == 0
    bool delta_nonpositive = false;
};
SievePlan sieve_plan(u64 q, unsigned m, unsigned core_count);

// first passing core_count in 0..omega, else the plan maximizing lhs-rhs
// among delta > 0 plans (all plans if none has delta > 0)
SievePlan best_sieve(u64 q, unsigned m);

struct RegionResult {
    bool eliminated = false;
    std::string rule;  // which closed-form bound fired; empty if none
};
RegionResult region_check(u64 q, unsigned m);

struct MersenneResult {
    bool applies = false;  // 2^m - 1 prime
    bool member = false;   // applies and 2^m - 1 > 13
    u128 value = 0;        // 2^m - 1
};
MersenneResult mersenne_rule(unsigned m);

// deterministic Lucas-Lehmer, valid for every m <= 127
bool mersenne_is_prime(unsigned m);

// fixed-table regeneration, with the printed reference values kept alongside
// so discrepancies can be flagged
struct TableRowRef {
    u64 q;
    unsigned m;
    unsigned core;                    // printed omega(d)
    std::vector<u64> printed_primes;  // exactly as printed (typos included)
    double printed_delta;
    double printed_lambda;
};
struct TableRow {
    SievePlan plan;
    TableRowRef ref;
    bool primes_match = false;  // computed distinct primes == printed list
    double delta_diff = 0;      // computed - printed
    double lambda_diff = 0;
    std::vector<std::string> flags;  // discrepancy notes (empty = clean row)
};
std::vector<TableRow> table1();
std::vector<TableRow> table2();

}  // namespace primpair::criteria
