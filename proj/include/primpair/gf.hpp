#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "primpair/intnum.hpp"
#include "primpair/u128.hpp"

namespace primpair::gf {

using Coeffs = std::vector<u64>;  // ascending degree, c[0] = constant term

// Canonical element order everywhere: lexicographic on the coefficient
// vector, constant term first. std::vector's <=> gives exactly that.
struct FieldElem {
    Coeffs c;
    auto operator<=>(const FieldElem&) const = default;
};

std::string coeffs_to_string(const Coeffs& c);
Coeffs coeffs_from_string(const std::string& s);

// F_{p^(s*m)} realized as F_p[x]/(modulus), with F_q (q = p^s) the subfield
// of solutions of x^q = x. Immutable after construction.
class FieldCtx {
  public:
    u64 p = 0;
    unsigned s = 0;
    unsigned m = 0;
    unsigned degree = 0;  // s*m
    u64 q = 0;            // p^s
    u64 size = 0;         // q^m
    u64 N = 0;            // q^m - 1
    Coeffs modulus;       // length degree+1, monic
    FieldElem generator;
    intnum::Factorization group_order_factors;  // of N

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_const(u64 k) const;  // k mod p as a constant
    FieldElem x_class() const;          // residue class of the indeterminate

    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem smul(u64 k, const FieldElem& a) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem pow(const FieldElem& a, u128 e) const;
    FieldElem inv(const FieldElem& a) const;  // throws std::domain_error on 0
    FieldElem eval_quadratic(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                             const FieldElem& x) const;

    u64 order(const FieldElem& a) const;  // throws std::domain_error on 0
    bool is_primitive(const FieldElem& a) const;

    // Tr_{F_{p^degree} / F_{target_q}}; target_q = p^t with t | degree.
    FieldElem trace_to(const FieldElem& a, u64 target_q) const;
    // absolute trace to F_p, as an integer in [0, p)
    u64 abs_trace(const FieldElem& a) const;

    // the target_q elements satisfying x^target_q = x, in canonical order
    std::vector<FieldElem> subfield_elements(u64 target_q) const;

    // packed index with the constant coefficient as the most significant
    // base-p digit, so ascending index == canonical element order
    u64 pack(const FieldElem& a) const;
    FieldElem unpack(u64 idx) const;

    // discrete-log tables, built iff size <= 2^22
    bool has_log_tables() const { return !exp_table.empty(); }
    const std::vector<std::uint32_t>& exp_table_ref() const { return exp_table; }
    const std::vector<std::uint32_t>& log_table_ref() const { return log_table; }
    static constexpr std::uint32_t kNoLog = 0xffffffffu;

    std::string to_string(const FieldElem& a) const;
    FieldElem from_string(const std::string& s) const;

  private:
    friend FieldCtx build_field(u64, unsigned, unsigned, const std::optional<Coeffs>&);
    std::vector<std::uint32_t> exp_table;  // k in [0,N) -> packed index of g^k
    std::vector<std::uint32_t> log_table;  // packed index -> k; kNoLog for 0
    void build_tables();
};

// Throws std::invalid_argument for non-prime p or malformed/reducible modulus
// (message carries a witness factor when one is extracted) and
// std::out_of_range when p^(s*m) > 2^40.
FieldCtx build_field(u64 p, unsigned s, unsigned m,
                     const std::optional<Coeffs>& modulus = std::nullopt);

// Lexicographically smallest monic primitive polynomial of the given degree
// (ascending coefficient-vector order, constant term first).
Coeffs default_modulus(u64 p, unsigned degree);

bool poly_is_irreducible_mod_p(u64 p, const Coeffs& poly);

}  // namespace primpair::gf
