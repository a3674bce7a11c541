#pragma once

#include <stdexcept>
#include <string>

#include "primpair/u128.hpp"

namespace primpair {

// Exact rational over 128-bit integers. Arithmetic is overflow-checked and
// throws std::overflow_error rather than wrapping; callers treat that as a
// magnitude guard, not a math error.
struct Rat {
    i128 num = 0;
    i128 den = 1;

    Rat() = default;
    Rat(i128 n) : num(n), den(1) {}
    Rat(i128 n, i128 d) : num(n), den(d) { normalize(); }

    static i128 checked_mul(i128 a, i128 b) {
        i128 r;
        if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
        return r;
    }
    static i128 checked_add(i128 a, i128 b) {
        i128 r;
        if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
        return r;
    }

    void normalize() {
        if (den == 0) throw std::invalid_argument("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        u128 g = gcd_u128(num < 0 ? u128(-num) : u128(num), u128(den));
        if (g > 1) {
            num /= i128(g);
            den /= i128(g);
        }
    }

    Rat operator+(const Rat& o) const {
        return Rat(checked_add(checked_mul(num, o.den), checked_mul(o.num, den)),
                   checked_mul(den, o.den));
    }
    Rat operator-(const Rat& o) const {
        return Rat(checked_add(checked_mul(num, o.den), -checked_mul(o.num, den)),
                   checked_mul(den, o.den));
    }
    Rat operator*(const Rat& o) const {
        return Rat(checked_mul(num, o.num), checked_mul(den, o.den));
    }
    Rat operator/(const Rat& o) const {
        if (o.num == 0) throw std::invalid_argument("division by zero rational");
        return Rat(checked_mul(num, o.den), checked_mul(den, o.num));
    }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat& o) const {
        // den > 0 invariant makes cross-multiplication sign-safe
        return checked_mul(num, o.den) < checked_mul(o.num, den);
    }
    bool operator>(const Rat& o) const { return o < *this; }

    int sign() const { return num == 0 ? 0 : (num < 0 ? -1 : 1); }
    double to_double() const { return double(num) / double(den); }
    std::string to_string() const { return primpair::to_string(num) + "/" + primpair::to_string(den); }
};

}  // namespace primpair
