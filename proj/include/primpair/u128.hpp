#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primpair {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

inline std::string to_string(i128 v) {
    if (v < 0) return "-" + to_string(u128(-v));
    return to_string(u128(v));
}

inline u128 parse_u128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    u128 v = 0;
    const u128 max = ~u128(0);
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit in integer literal");
        unsigned d = unsigned(ch - '0');
        if (v > (max - d) / 10) throw std::out_of_range("integer literal too large");
        v = v * 10 + d;
    }
    return v;
}

// (a*b) mod n for n up to 2^127; fast path when the product fits in u128.
inline u128 mulmod_u128(u128 a, u128 b, u128 n) {
    a %= n;
    b %= n;
    if (a == 0 || b <= (~u128(0)) / a) return (a * b) % n;
    // double-and-add; n < 2^127 keeps a+a from wrapping
    u128 r = 0;
    while (b > 0) {
        if (b & 1) {
            r += a;
            if (r >= n) r -= n;
        }
        a += a;
        if (a >= n) a -= n;
        b >>= 1;
    }
    return r;
}

inline u128 powmod_u128(u128 a, u128 e, u128 n) {
    u128 r = 1 % n;
    a %= n;
    while (e > 0) {
        if (e & 1) r = mulmod_u128(r, a, n);
        a = mulmod_u128(a, a, n);
        e >>= 1;
    }
    return r;
}

inline u128 gcd_u128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// q^m as u128, throwing on overflow past 2^127
inline u128 pow_u128_checked(u128 base, unsigned exp) {
    const u128 limit = u128(1) << 127;
    if (base == 0) return exp == 0 ? 1 : 0;
    u128 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > limit / base) throw std::out_of_range("power exceeds 2^127");
        r *= base;
    }
    return r;
}

}  // namespace primpair
