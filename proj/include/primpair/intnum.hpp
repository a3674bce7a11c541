#pragma once

#include <optional>
#include <vector>

#include "primpair/rat.hpp"
#include "primpair/u128.hpp"

namespace primpair::intnum {

struct Factor {
    u128 prime;
    unsigned exponent;
};

struct Factorization {
    u128 value = 1;
    std::vector<Factor> factors;  // primes strictly increasing, exponents >= 1
};

// Deterministic primality for n < 3.317e24 (13-base strong-probable-prime set).
// Callers must keep n below that bound; factorize() enforces it.
bool is_prime(u128 n);

// Exact factorization. Throws std::invalid_argument for n = 0,
// std::out_of_range for n > 2^127 - 1 or when the cofactor left after
// trial division is too large for the deterministic primality envelope.
Factorization factorize(u128 n);

unsigned omega(u128 n);
u64 W(u128 n);  // 2^omega(n)
u128 euler_phi(u128 n);
int moebius(u128 n);  // in {-1, 0, 1}
u128 radical(u128 n);
Rat theta(u128 n);  // phi(n)/n, exact

// Same functions when the factorization is already at hand.
unsigned omega(const Factorization& f);
u64 W(const Factorization& f);
u128 euler_phi(const Factorization& f);
int moebius(const Factorization& f);
u128 radical(const Factorization& f);
Rat theta(const Factorization& f);

struct WBoundCheck {
    u64 lhs = 0;      // W(n)
    double rhs = 0;   // constant * n^(1/alpha)
    bool holds = false;
};
WBoundCheck w_bound_check(u128 n, unsigned alpha, double constant);

// q = p^s with p prime, s >= 1; nullopt when q is not a prime power.
struct PrimePower {
    u64 p;
    unsigned s;
};
std::optional<PrimePower> as_prime_power(u64 q);

const std::vector<u64>& small_primes();  // primes up to 10^6

}  // namespace primpair::intnum
