#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "primpair/criteria.hpp"
#include "primpair/gf.hpp"

namespace primpair::verify {

using gf::FieldCtx;
using gf::FieldElem;

// Unit-modulus phasor characters over a field with discrete-log tables.
class CharacterTable {
  public:
    explicit CharacterTable(const FieldCtx& ctx);  // throws without log tables

    const FieldCtx& field() const { return *ctx_; }

    // multiplicative character indexed by j: chi_j(g^k) = e^{2 pi i jk/N};
    // chi_j(0) = 0 for j != 0, and 1 for the trivial character
    std::complex<double> chi(u64 j, const FieldElem& x) const;
    // canonical character of exact order d (d | N): chi_{N/d}
    std::complex<double> chi_of_order(u64 d, const FieldElem& x) const;
    // canonical additive character e_p(AbsTr(x)) of the big field
    std::complex<double> psi(const FieldElem& x) const;
    // canonical additive character of the subfield F_q at y in F_q
    std::complex<double> psi_subfield(const FieldElem& y) const;

    u64 log_of(const FieldElem& x) const;  // N for x = 0 (sentinel)

  private:
    const FieldCtx* ctx_;
    std::vector<std::uint32_t> abstr_;  // packed index -> absolute trace in [0,p)
};

bool is_rfree(const FieldCtx& ctx, const FieldElem& x, u64 r);

// characteristic function of r-free elements, ~1 or ~0 within 1e-6
std::complex<double> sigma_r(const CharacterTable& t, const FieldElem& x, u64 r);

// characteristic function of Tr(x) = beta, ~1 or ~0 within 1e-6
std::complex<double> gamma_beta(const CharacterTable& t, const FieldElem& x,
                                const FieldElem& beta);

// polynomials over the big field, ascending degree
using FPoly = std::vector<FieldElem>;

struct WeilCheck {
    double lhs = 0;  // |sum over x of chi1(f1(x)) chi2(f2(x))|
    double rhs = 0;  // (n1 + n2 - 1) q^{m/2}
    unsigned n1 = 0, n2 = 0;  // degrees of the radicals
    bool holds = false;
};
// Throws std::invalid_argument when the hypotheses fail: both orders trivial,
// orders not dividing N, f1/f2 not monic or not coprime, or f_i a d_i-th power.
WeilCheck weil_check(const CharacterTable& t, u64 d1, u64 d2, const FPoly& f1, const FPoly& f2);

// |S(chi_{d1}, chi_{d2})| with the prescribed-trace phase, full enumeration
double s_sum(const CharacterTable& t, u64 d1, u64 d2, const FieldElem& a, const FieldElem& b,
             const FieldElem& c, const FieldElem& beta);

struct CountM {
    u64 count = 0;
    double lower_bound = 0;
};
CountM count_M(const FieldCtx& ctx, u64 r1, u64 r2, const FieldElem& a, const FieldElem& b,
               const FieldElem& c, const FieldElem& beta);

// ---- exhaustive pair search -------------------------------------------------

struct Counterexample {
    std::string a, b, c, beta;  // coefficient strings
    bool admissible = false;
};

struct PairReport {
    u64 q = 0;
    unsigned m = 0;
    std::string status;  // member | exceptional | unresolved
    std::vector<Counterexample> counterexamples;  // sorted
    u64 triples_checked = 0;
    u64 early_exits = 0;
    u64 admissible_counterexamples = 0;
    u64 inadmissible_counterexamples = 0;
    bool searched_inadmissible = false;
    bool full_scope = false;  // all admissible triples and all betas covered
    std::string modulus;      // coefficient string, for reproducibility
    double elapsed_ms = 0;
};

struct SearchOptions {
    std::optional<std::array<FieldElem, 3>> triple;  // single-triple scope
    std::optional<FieldElem> beta;                   // single-beta scope
    bool include_inadmissible = false;
    unsigned workers = 0;  // 0 = hardware concurrency
    u64 guard = u64(1) << 28;
};

// Throws std::out_of_range when q^m exceeds opts.guard in all-triples scope.
PairReport search_pair(const FieldCtx& ctx, const SearchOptions& opts);

// ---- verdict pipeline: region -> base -> sieve -> search --------------------

struct ClassifyResult {
    u64 q = 0;
    unsigned m = 0;
    std::string stage;    // region | base | sieve | search | out_of_scope | none
    std::string verdict;  // member | exceptional | unresolved | out_of_scope
    std::string detail;
    std::optional<criteria::RegionResult> region;
    std::optional<criteria::ConditionReport> base;
    std::optional<criteria::SievePlan> sieve;
    std::optional<PairReport> search;
};
ClassifyResult classify(u64 q, unsigned m, u64 guard = u64(1) << 28, unsigned workers = 0);

// ---- character-sum checks, bundled for reporting ----------------------------

struct SuiteCheck {
    std::string name;
    u64 cases = 0;
    double max_dev = 0;   // worst deviation observed (see name for semantics)
    double tolerance = 0;  // 0 = structural check (max_dev must stay <= 0)
    bool pass = false;
};
struct CharsumSuite {
    u64 q = 0;
    unsigned m = 0;
    std::string modulus;
    std::vector<SuiteCheck> checks;
    bool all_pass = false;
};
// full = exhaustive sweeps (acceptance scale); otherwise a quick subset
CharsumSuite charsum_suite(const FieldCtx& ctx, bool full);

}  // namespace primpair::verify
