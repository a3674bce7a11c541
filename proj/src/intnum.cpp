#include "primpair/intnum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace primpair::intnum {

namespace {

// Strong-probable-prime test to the first 13 primes is a proven primality
// certificate below 3,317,044,064,679,887,385,961,981 (~3.317e24).
constexpr u64 kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

u128 primality_envelope() {
    return parse_u128("3317044064679887385961981");
}

bool miller_rabin(u128 n) {
    u128 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : kMrBases) {
        if (a % n == 0) continue;
        u128 x = powmod_u128(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mulmod_u128(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Brent's cycle variant of the rho method with a fixed constant schedule;
// fully deterministic. Only ever invoked on odd composites with no prime
// factor <= 10^6.
u128 brent_rho(u128 n) {
    for (u128 c = 1;; ++c) {
        u128 x = 2, y = 2, d = 1;
        u128 saved_y = y;
        u64 power = 1, lam = 0;
        auto f = [&](u128 v) { return (mulmod_u128(v, v, n) + c) % n; };
        while (d == 1) {
            if (lam == power) {
                x = y;
                power *= 2;
                lam = 0;
                saved_y = y;
            }
            // batch gcd: multiply |x - y| terms mod n, check every 64 steps
            u128 prod = 1;
            u64 batch = std::min<u64>(64, power - lam);
            for (u64 i = 0; i < batch; ++i) {
                y = f(y);
                prod = mulmod_u128(prod, x > y ? x - y : y - x, n);
            }
            lam += batch;
            d = gcd_u128(prod, n);
        }
        if (d == n) {
            // batch collapsed; redo one step at a time from the saved point
            y = saved_y;
            d = 1;
            while (d == 1) {
                y = f(y);
                d = gcd_u128(x > y ? x - y : y - x, n);
            }
        }
        if (d != n) return d;
        // cycle found the trivial factor: bump c and retry
    }
}

void factor_rec(u128 n, std::vector<u128>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u128 d = brent_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        const u64 limit = 1'000'000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<u64> ps;
        for (u64 i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            ps.push_back(i);
            for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
        }
        return ps;
    }();
    return primes;
}

bool is_prime(u128 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41}) {
        if (n == u128(p)) return true;
        if (n % p == 0) return false;
    }
    return miller_rabin(n);
}

Factorization factorize(u128 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
    const u128 max_input = (u128(1) << 127) - 1;
    if (n > max_input) throw std::out_of_range("factorize: n exceeds 2^127 - 1");

    Factorization f;
    f.value = n;
    u128 rest = n;
    for (u64 p : small_primes()) {
        if (u128(p) * p > rest) break;
        if (rest % p == 0) {
            unsigned e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            f.factors.push_back({u128(p), e});
        }
    }
    if (rest > 1) {
        if (rest < u128(1'000'000) * 1'000'000) {
            // below (10^6)^2 with no divisor <= 10^6: prime
            f.factors.push_back({rest, 1});
        } else {
            if (rest >= primality_envelope())
                throw std::out_of_range(
                    "factorize: cofactor after trial division exceeds the deterministic "
                    "primality envelope (~3.3e24)");
            std::vector<u128> primes;
            factor_rec(rest, primes);
            std::sort(primes.begin(), primes.end());
            for (size_t i = 0; i < primes.size();) {
                size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                f.factors.push_back({primes[i], unsigned(j - i)});
                i = j;
            }
        }
    }
    std::sort(f.factors.begin(), f.factors.end(),
              [](const Factor& a, const Factor& b) { return a.prime < b.prime; });
    return f;
}

unsigned omega(const Factorization& f) { return unsigned(f.factors.size()); }
u64 W(const Factorization& f) { return u64(1) << omega(f); }

u128 euler_phi(const Factorization& f) {
    u128 r = 1;
    for (const auto& [p, e] : f.factors) {
        r *= p - 1;
        for (unsigned i = 1; i < e; ++i) r *= p;
    }
    return r;
}

int moebius(const Factorization& f) {
    for (const auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return f.factors.size() % 2 == 0 ? 1 : -1;
}

u128 radical(const Factorization& f) {
    u128 r = 1;
    for (const auto& [p, e] : f.factors) r *= p;
    return r;
}

Rat theta(const Factorization& f) {
    const u128 i128_max = (u128(1) << 127) - 1;
    if (f.value > i128_max) throw std::out_of_range("theta: n too large for exact rational");
    return Rat(i128(euler_phi(f)), i128(f.value));
}

unsigned omega(u128 n) { return omega(factorize(n)); }
u64 W(u128 n) { return W(factorize(n)); }
u128 euler_phi(u128 n) { return euler_phi(factorize(n)); }
int moebius(u128 n) { return moebius(factorize(n)); }
u128 radical(u128 n) { return radical(factorize(n)); }
Rat theta(u128 n) { return theta(factorize(n)); }

WBoundCheck w_bound_check(u128 n, unsigned alpha, double constant) {
    if (alpha == 0) throw std::invalid_argument("w_bound_check: alpha must be >= 1");
    WBoundCheck r;
    r.lhs = W(n);
    r.rhs = constant * std::pow(double(n), 1.0 / double(alpha));
    r.holds = double(r.lhs) < r.rhs;
    return r;
}

std::optional<PrimePower> as_prime_power(u64 q) {
    if (q < 2) return std::nullopt;
    Factorization f = factorize(q);
    if (f.factors.size() != 1) return std::nullopt;
    return PrimePower{u64(f.factors[0].prime), f.factors[0].exponent};
}

}  // namespace primpair::intnum
