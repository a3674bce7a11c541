#include "primpair/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace primpair::verify {

namespace {

constexpr double kTau = 6.28318530717958647692528676655900577;

std::complex<double> unit_phase(u64 num, u64 den) {
    double ang = kTau * (double(num) / double(den));
    return {std::cos(ang), std::sin(ang)};
}

std::vector<u64> prime_list(u64 r) {
    std::vector<u64> ps;
    for (const auto& f : intnum::factorize(r).factors) ps.push_back(u64(f.prime));
    return ps;
}

void require_divisor(u64 d, u64 n, const char* what) {
    if (d == 0 || n % d != 0)
        throw std::invalid_argument(std::string(what) + " must divide the group order");
}

std::vector<u64> divisors_of(u64 n) {
    std::vector<u64> divs{1};
    for (const auto& f : intnum::factorize(n).factors) {
        size_t sz = divs.size();
        u64 pe = 1;
        for (unsigned e = 0; e < f.exponent; ++e) {
            pe *= u64(f.prime);
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

FieldElem discriminant(const FieldCtx& F, const FieldElem& a, const FieldElem& b,
                       const FieldElem& c) {
    FieldElem four = F.from_const(4 % F.p);
    return F.sub(F.mul(b, b), F.mul(four, F.mul(a, c)));
}

void require_subfield(const FieldCtx& F, const FieldElem& x, const char* what) {
    if (F.pow(x, F.q) != x)
        throw std::invalid_argument(std::string(what) + " must lie in the subfield");
}

}  // namespace

// ---- characters -------------------------------------------------------------

CharacterTable::CharacterTable(const FieldCtx& ctx) : ctx_(&ctx) {
    if (!ctx.has_log_tables())
        throw std::invalid_argument("character table requires discrete-log tables (field size <= 2^22)");
    // absolute trace is linear over the prime field, so one value per basis
    // power of x is enough to fill the whole table
    std::vector<u64> line(ctx.degree);
    FieldElem xi = ctx.one();
    for (unsigned i = 0; i < ctx.degree; ++i) {
        line[i] = ctx.abs_trace(xi);
        xi = ctx.mul(xi, ctx.x_class());
    }
    abstr_.resize(ctx.size);
    for (u64 idx = 0; idx < ctx.size; ++idx) {
        u64 rem = idx, acc = 0;
        for (unsigned i = ctx.degree; i-- > 0;) {  // least significant digit = top coefficient
            acc += (rem % ctx.p) * line[i];
            rem /= ctx.p;
        }
        abstr_[idx] = std::uint32_t(acc % ctx.p);
    }
}

u64 CharacterTable::log_of(const FieldElem& x) const {
    std::uint32_t k = ctx_->log_table_ref()[ctx_->pack(x)];
    return k == FieldCtx::kNoLog ? ctx_->N : k;
}

std::complex<double> CharacterTable::chi(u64 j, const FieldElem& x) const {
    const u64 N = ctx_->N;
    u64 jm = j % N;
    u64 k = log_of(x);
    if (k == N) return jm == 0 ? std::complex<double>{1.0, 0.0} : std::complex<double>{0.0, 0.0};
    u64 t = u64((u128(jm) * k) % N);
    return unit_phase(t, N);
}

std::complex<double> CharacterTable::chi_of_order(u64 d, const FieldElem& x) const {
    require_divisor(d, ctx_->N, "character order");
    return chi(ctx_->N / d, x);
}

std::complex<double> CharacterTable::psi(const FieldElem& x) const {
    return unit_phase(abstr_[ctx_->pack(x)], ctx_->p);
}

std::complex<double> CharacterTable::psi_subfield(const FieldElem& y) const {
    const FieldCtx& F = *ctx_;
    require_subfield(F, y, "argument");
    FieldElem acc = F.zero();
    FieldElem t = y;
    for (unsigned i = 0; i < F.s; ++i) {
        acc = F.add(acc, t);
        t = F.pow(t, F.p);
    }
    return unit_phase(acc.c.empty() ? 0 : acc.c[0], F.p);
}

// ---- indicator functions ----------------------------------------------------

bool is_rfree(const FieldCtx& ctx, const FieldElem& x, u64 r) {
    require_divisor(r, ctx.N, "r");
    if (x == ctx.zero()) throw std::invalid_argument("x must be nonzero");
    for (u64 l : prime_list(r))
        if (ctx.pow(x, ctx.N / l) == ctx.one()) return false;
    return true;
}

std::complex<double> sigma_r(const CharacterTable& t, const FieldElem& x, u64 r) {
    const FieldCtx& F = t.field();
    require_divisor(r, F.N, "r");
    auto ls = prime_list(r);
    double th = 1.0;
    for (u64 l : ls) th *= double(l - 1) / double(l);
    std::complex<double> acc = 0;
    for (u64 mask = 0; mask < (u64(1) << ls.size()); ++mask) {
        u64 d = 1, phi = 1;
        int mu = 1;
        for (size_t i = 0; i < ls.size(); ++i)
            if (mask >> i & 1) {
                d *= ls[i];
                phi *= ls[i] - 1;
                mu = -mu;
            }
        std::complex<double> inner = 0;
        for (u64 tt = 1; tt <= d; ++tt)
            if (std::gcd(tt, d) == 1) inner += t.chi((F.N / d) * tt % F.N, x);
        acc += (double(mu) / double(phi)) * inner;
    }
    return th * acc;
}

std::complex<double> gamma_beta(const CharacterTable& t, const FieldElem& x,
                                const FieldElem& beta) {
    const FieldCtx& F = t.field();
    require_subfield(F, beta, "beta");
    std::complex<double> acc = 0;
    for (const auto& u : F.subfield_elements(F.q))
        acc += t.psi(F.mul(u, x)) * t.psi_subfield(F.neg(F.mul(u, beta)));
    return acc / double(F.q);
}

// ---- polynomial helpers over the big field ----------------------------------

namespace {

int pdeg(const FieldCtx& F, const FPoly& f) {
    int d = int(f.size()) - 1;
    while (d >= 0 && f[size_t(d)] == F.zero()) --d;
    return d;
}

FPoly ptrim(const FieldCtx& F, FPoly f) {
    f.resize(size_t(pdeg(F, f) + 1), F.zero());
    return f;
}

FPoly pscale(const FieldCtx& F, const FPoly& f, const FieldElem& k) {
    FPoly out(f.size(), F.zero());
    for (size_t i = 0; i < f.size(); ++i) out[i] = F.mul(f[i], k);
    return out;
}

FPoly pmul(const FieldCtx& F, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    FPoly out(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    return ptrim(F, out);
}

FPoly psub(const FieldCtx& F, const FPoly& a, const FPoly& b) {
    FPoly out(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < out.size(); ++i) {
        FieldElem ai = i < a.size() ? a[i] : F.zero();
        FieldElem bi = i < b.size() ? b[i] : F.zero();
        out[i] = F.sub(ai, bi);
    }
    return ptrim(F, out);
}

// rem, quot with arbitrary nonzero divisor
std::pair<FPoly, FPoly> pdivmod(const FieldCtx& F, FPoly a, const FPoly& b) {
    int db = pdeg(F, b);
    if (db < 0) throw std::domain_error("division by zero polynomial");
    FieldElem linv = F.inv(b[size_t(db)]);
    a = ptrim(F, std::move(a));
    int da = pdeg(F, a);
    if (da < db) return {FPoly{}, a};
    FPoly q(size_t(da - db + 1), F.zero());
    while (da >= db) {
        FieldElem coef = F.mul(a[size_t(da)], linv);
        q[size_t(da - db)] = coef;
        for (int i = 0; i <= db; ++i)
            a[size_t(da - db + i)] = F.sub(a[size_t(da - db + i)], F.mul(coef, b[size_t(i)]));
        da = pdeg(F, a);
    }
    return {ptrim(F, q), ptrim(F, a)};
}

FPoly pmonic(const FieldCtx& F, const FPoly& f) {
    int d = pdeg(F, f);
    if (d < 0) return {};
    return pscale(F, ptrim(F, f), F.inv(f[size_t(d)]));
}

FPoly pgcd(const FieldCtx& F, FPoly a, FPoly b) {
    a = ptrim(F, std::move(a));
    b = ptrim(F, std::move(b));
    while (pdeg(F, b) >= 0) {
        FPoly r = pdivmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (pdeg(F, a) < 0) return {};
    return pmonic(F, a);
}

FPoly pderiv(const FieldCtx& F, const FPoly& f) {
    if (f.size() <= 1) return {};
    FPoly out(f.size() - 1, F.zero());
    for (size_t i = 1; i < f.size(); ++i) out[i - 1] = F.smul(u64(i % F.p), f[i]);
    return ptrim(F, out);
}

FieldElem peval(const FieldCtx& F, const FPoly& f, const FieldElem& x) {
    FieldElem acc = F.zero();
    for (size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
    return acc;
}

// coefficient-wise p-th root; valid whenever f' = 0 (perfect field)
FPoly ppthroot(const FieldCtx& F, const FPoly& f) {
    int d = pdeg(F, f);
    FPoly out(size_t(d / int(F.p)) + 1, F.zero());
    for (int i = 0; i <= d; ++i) {
        if (f[size_t(i)] == F.zero()) continue;
        if (i % int(F.p) != 0) throw std::domain_error("polynomial is not a p-th power");
        // c^(q^m / p) is the p-th root of c
        out[size_t(i / int(F.p))] = F.pow(f[size_t(i)], F.size / F.p);
    }
    return out;
}

FPoly ppow(const FieldCtx& F, const FPoly& f, u64 k) {
    FPoly out{F.one()};
    for (u64 i = 0; i < k; ++i) out = pmul(F, out, f);
    return out;
}

// monic k-th root of a monic polynomial, or nothing
std::optional<FPoly> pkthroot(const FieldCtx& F, FPoly f, u64 k) {
    f = ptrim(F, std::move(f));
    if (k == 0) return std::nullopt;
    while (k % F.p == 0) {
        if (pdeg(F, pderiv(F, f)) >= 0) return std::nullopt;
        if (pdeg(F, f) % int(F.p) != 0) return std::nullopt;
        f = ppthroot(F, f);
        k /= F.p;
    }
    if (k == 1) return f;
    int df = pdeg(F, f);
    if (df < 0 || df % int(k) != 0) return std::nullopt;
    size_t n = size_t(df) / size_t(k);
    FieldElem kinv = F.inv(F.from_const(u64(k % F.p)));
    FPoly h(n + 1, F.zero());
    h[n] = F.one();
    for (size_t j = 1; j <= n; ++j) {
        FPoly cur = ppow(F, h, k);
        size_t pos = size_t(df) - j;
        FieldElem have = pos < cur.size() ? cur[pos] : F.zero();
        FieldElem want = f[pos];
        h[n - j] = F.mul(F.sub(want, have), kinv);
    }
    if (ppow(F, h, k) == ptrim(F, f)) return h;
    return std::nullopt;
}

// product of the distinct irreducible factors
FPoly pradical(const FieldCtx& F, const FPoly& fin) {
    FPoly f = pmonic(F, fin);
    if (pdeg(F, f) <= 0) return {F.one()};
    FPoly d = pderiv(F, f);
    if (pdeg(F, d) < 0) return pradical(F, ppthroot(F, f));
    FPoly g = pgcd(F, f, d);
    if (pdeg(F, g) == 0) return f;
    FPoly w = pdivmod(F, f, g).first;
    FPoly rg = pradical(F, g);
    FPoly shared = pgcd(F, w, rg);
    return pmul(F, w, pdivmod(F, rg, shared).first);
}

}  // namespace

// ---- bound checks -----------------------------------------------------------

WeilCheck weil_check(const CharacterTable& t, u64 d1, u64 d2, const FPoly& f1in,
                     const FPoly& f2in) {
    const FieldCtx& F = t.field();
    require_divisor(d1, F.N, "character order");
    require_divisor(d2, F.N, "character order");
    if (d1 == 1 && d2 == 1)
        throw std::invalid_argument("at least one character must be nontrivial");
    FPoly f1 = ptrim(F, f1in), f2 = ptrim(F, f2in);
    if (pdeg(F, f1) < 0 || pdeg(F, f2) < 0)
        throw std::invalid_argument("polynomials must be nonzero");
    if (f1.back() != F.one() || f2.back() != F.one())
        throw std::invalid_argument("polynomials must be monic");
    if (pdeg(F, pgcd(F, f1, f2)) != 0)
        throw std::invalid_argument("polynomials must be coprime");
    if (d1 > 1 && pkthroot(F, f1, d1))
        throw std::invalid_argument("first polynomial is a perfect power of its character order");
    if (d2 > 1 && pkthroot(F, f2, d2))
        throw std::invalid_argument("second polynomial is a perfect power of its character order");

    std::complex<double> acc = 0;
    for (u64 idx = 0; idx < F.size; ++idx) {
        FieldElem x = F.unpack(idx);
        acc += t.chi_of_order(d1, peval(F, f1, x)) * t.chi_of_order(d2, peval(F, f2, x));
    }
    WeilCheck out;
    out.lhs = std::abs(acc);
    out.n1 = unsigned(pdeg(F, pradical(F, f1)));
    out.n2 = unsigned(pdeg(F, pradical(F, f2)));
    out.rhs = (double(out.n1) + double(out.n2) - 1.0) * std::sqrt(double(F.size));
    out.holds = out.lhs <= out.rhs + 1e-6;
    return out;
}

double s_sum(const CharacterTable& t, u64 d1, u64 d2, const FieldElem& a, const FieldElem& b,
             const FieldElem& c, const FieldElem& beta) {
    const FieldCtx& F = t.field();
    require_divisor(d1, F.N, "character order");
    require_divisor(d2, F.N, "character order");
    if (d1 == 1 && d2 == 1)
        throw std::invalid_argument("at least one character must be nontrivial");
    if (discriminant(F, a, b, c) == F.zero())
        throw std::invalid_argument("degenerate discriminant");
    require_subfield(F, beta, "beta");

    std::vector<std::complex<double>> val(F.size);
    for (u64 idx = 1; idx < F.size; ++idx) {
        FieldElem alpha = F.unpack(idx);
        val[idx] = t.chi_of_order(d1, alpha) * t.chi_of_order(d2, F.eval_quadratic(a, b, c, alpha));
    }
    std::complex<double> total = 0;
    for (const auto& u : F.subfield_elements(F.q)) {
        std::complex<double> phase = t.psi_subfield(F.neg(F.mul(beta, u)));
        std::complex<double> inner = 0;
        for (u64 idx = 1; idx < F.size; ++idx)
            inner += val[idx] * t.psi(F.mul(u, F.unpack(idx)));
        total += phase * inner;
    }
    return std::abs(total);
}

CountM count_M(const FieldCtx& F, u64 r1, u64 r2, const FieldElem& a, const FieldElem& b,
               const FieldElem& c, const FieldElem& beta) {
    require_divisor(r1, F.N, "r1");
    require_divisor(r2, F.N, "r2");
    if (discriminant(F, a, b, c) == F.zero())
        throw std::invalid_argument("degenerate discriminant");
    require_subfield(F, beta, "beta");

    CountM out;
    for (u64 idx = 1; idx < F.size; ++idx) {
        FieldElem alpha = F.unpack(idx);
        if (F.trace_to(alpha, F.q) != beta) continue;
        if (!is_rfree(F, alpha, r1)) continue;
        FieldElem falpha = F.eval_quadratic(a, b, c, alpha);
        if (falpha == F.zero()) continue;
        if (!is_rfree(F, falpha, r2)) continue;
        ++out.count;
    }
    double th = intnum::theta(r1).to_double() * intnum::theta(r2).to_double();
    double w12 = double(intnum::W(r1)) * double(intnum::W(r2));
    out.lower_bound = th / double(F.q) *
                      (double(F.N) - 2.0 * std::pow(double(F.q), double(F.m) / 2.0 + 1.0) * (w12 - 1.0));
    return out;
}

// ---- exhaustive search ------------------------------------------------------

namespace {

struct PackedCE {
    u64 a, b, c, beta;
    bool admissible;
    bool operator<(const PackedCE& o) const {
        return std::tie(a, b, c, beta) < std::tie(o.a, o.b, o.c, o.beta);
    }
};

struct WorkerOut {
    std::vector<PackedCE> ces;
    u64 triples = 0, early = 0;
};

// packed-index addition: XOR in characteristic 2, a lookup table for small odd
// fields, digit arithmetic otherwise
struct PackedAdd {
    u64 p = 2, size = 0;
    unsigned degree = 0;
    bool xorable = false;
    std::vector<std::uint32_t> table;

    void init(const FieldCtx& F) {
        p = F.p;
        size = F.size;
        degree = F.degree;
        xorable = (p == 2);
        if (!xorable && size <= 4096) {
            table.assign(size * size, 0);
            for (u64 i = 0; i < size; ++i) {
                FieldElem x = F.unpack(i);
                for (u64 j = 0; j <= i; ++j) {
                    auto s = std::uint32_t(F.pack(F.add(x, F.unpack(j))));
                    table[i * size + j] = s;
                    table[j * size + i] = s;
                }
            }
        }
    }
    u64 add(u64 i, u64 j) const {
        if (xorable) return i ^ j;
        if (!table.empty()) return table[i * size + j];
        u64 res = 0, mult = 1;
        for (unsigned k = 0; k < degree; ++k) {
            u64 ds = i % p + j % p;
            if (ds >= p) ds -= p;
            res += ds * mult;
            mult *= p;
            i /= p;
            j /= p;
        }
        return res;
    }
};

// witness machinery on top of the discrete-log tables
struct LogSearch {
    const FieldCtx& F;
    PackedAdd adder;
    std::vector<std::uint32_t> exp2;  // g^k for k in [0, 2N), so sums of logs index directly
    const std::vector<std::uint32_t>* log;
    std::vector<std::uint8_t> prim;
    std::vector<u64> pneg;
    std::vector<FieldElem> betas;
    std::vector<u64> beta_packed;
    // per beta: (i, 2i mod N) for primitive g^i with matching trace, i ascending
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> cand;
    u64 l4 = 0;

    explicit LogSearch(const FieldCtx& f) : F(f) {
        adder.init(F);
        const u64 N = F.N;
        const auto& et = F.exp_table_ref();
        exp2.resize(2 * N);
        for (u64 k = 0; k < N; ++k) exp2[k] = exp2[k + N] = et[k];
        log = &F.log_table_ref();
        prim.assign(F.size, 0);
        for (u64 k = 0; k < N; ++k)
            if (std::gcd(k, N) == 1) prim[et[k]] = 1;
        pneg.resize(F.size);
        for (u64 i = 0; i < F.size; ++i) pneg[i] = F.pack(F.neg(F.unpack(i)));
        betas = F.subfield_elements(F.q);
        for (const auto& b : betas) beta_packed.push_back(F.pack(b));
        std::vector<size_t> beta_index(F.size, 0);
        for (size_t bi = 0; bi < betas.size(); ++bi) beta_index[beta_packed[bi]] = bi;
        cand.resize(betas.size());
        for (u64 k = 0; k < N; ++k) {
            if (std::gcd(k, N) != 1) continue;
            u64 tp = F.pack(F.trace_to(F.unpack(et[k]), F.q));
            cand[beta_index[tp]].push_back({std::uint32_t(k), std::uint32_t(2 * k % N)});
        }
        if (F.p != 2) l4 = (*log)[F.pack(F.from_const(4 % F.p))];
    }

    bool admissible(u64 pa, u64 pb, u64 pc) const {
        if (F.p == 2) return pb != 0;
        u64 bsq = pb ? exp2[2 * (*log)[pb]] : 0;
        u64 fourac = pc ? exp2[(l4 + (*log)[pa] + (*log)[pc]) % F.N] : 0;
        return adder.add(bsq, pneg[fourac]) != 0;
    }

    bool scan(u64 la, u64 pb, u64 pc, size_t beta_idx, bool* early) const {
        const auto& list = cand[beta_idx];
        u64 lb = pb ? (*log)[pb] : 0;
        for (size_t pos = 0; pos < list.size(); ++pos) {
            u64 s = exp2[la + list[pos].second];
            if (pb) s = adder.add(s, exp2[lb + list[pos].first]);
            s = adder.add(s, pc);
            if (prim[s]) {
                *early = pos + 1 < list.size();
                return true;
            }
        }
        return false;
    }
};

void scan_triples_logged(const LogSearch& ls, const SearchOptions& opts,
                         const std::vector<size_t>& beta_idxs, u64 pa_begin, u64 pa_step,
                         WorkerOut& out) {
    const FieldCtx& F = ls.F;
    for (u64 pa = pa_begin; pa < F.size; pa += pa_step) {
        u64 la = (*ls.log)[pa];
        for (u64 pb = 0; pb < F.size; ++pb)
            for (u64 pc = 0; pc < F.size; ++pc) {
                bool adm = ls.admissible(pa, pb, pc);
                if (!adm && !opts.include_inadmissible) continue;
                ++out.triples;
                for (size_t bi : beta_idxs) {
                    bool early = false;
                    if (ls.scan(la, pb, pc, bi, &early)) {
                        if (early) ++out.early;
                    } else {
                        out.ces.push_back({pa, pb, pc, ls.beta_packed[bi], adm});
                    }
                }
            }
    }
}

// table-free fallback: one ascending walk over exponents coprime to N,
// resolving every beta in a single pass per triple
void walk_triple_generic(const FieldCtx& F, const FieldElem& a, const FieldElem& b,
                         const FieldElem& c, bool adm, const std::vector<u64>& beta_packed,
                         const std::vector<size_t>& beta_idxs, WorkerOut& out) {
    const u64 N = F.N;
    std::vector<char> pending(beta_idxs.size(), 1);
    size_t left = beta_idxs.size();
    FieldElem alpha = F.one();
    for (u64 i = 0; i < N && left; ++i) {
        if (i) alpha = F.mul(alpha, F.generator);
        if (std::gcd(i, N) != 1) continue;
        u64 tp = F.pack(F.trace_to(alpha, F.q));
        for (size_t t = 0; t < beta_idxs.size(); ++t) {
            if (beta_packed[beta_idxs[t]] != tp) continue;
            if (pending[t]) {
                FieldElem fa = F.eval_quadratic(a, b, c, alpha);
                if (fa != F.zero() && F.is_primitive(fa)) {
                    pending[t] = 0;
                    --left;
                    if (i + 1 < N) ++out.early;
                }
            }
            break;
        }
    }
    u64 pa = F.pack(a), pb = F.pack(b), pc = F.pack(c);
    for (size_t t = 0; t < beta_idxs.size(); ++t)
        if (pending[t]) out.ces.push_back({pa, pb, pc, beta_packed[beta_idxs[t]], adm});
}

}  // namespace

PairReport search_pair(const FieldCtx& F, const SearchOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    PairReport rep;
    rep.q = F.q;
    rep.m = F.m;
    rep.modulus = gf::coeffs_to_string(F.modulus);
    rep.searched_inadmissible = opts.include_inadmissible;
    rep.full_scope = !opts.triple && !opts.beta;

    if (!opts.triple && F.size > opts.guard)
        throw std::out_of_range("field size exceeds the search guard");

    std::vector<FieldElem> betas = F.subfield_elements(F.q);
    std::vector<u64> beta_packed(betas.size());
    for (size_t i = 0; i < betas.size(); ++i) beta_packed[i] = F.pack(betas[i]);
    std::vector<size_t> beta_idxs;
    if (opts.beta) {
        require_subfield(F, *opts.beta, "beta");
        for (size_t i = 0; i < betas.size(); ++i)
            if (betas[i] == *opts.beta) beta_idxs.push_back(i);
    } else {
        beta_idxs.resize(betas.size());
        std::iota(beta_idxs.begin(), beta_idxs.end(), size_t(0));
    }

    unsigned workers = opts.workers ? opts.workers
                                    : std::max(1u, std::thread::hardware_concurrency());
    std::vector<WorkerOut> outs;

    if (opts.triple) {
        const auto& tr = *opts.triple;
        if (tr[0] == F.zero())
            throw std::invalid_argument("leading coefficient must be nonzero");
        bool adm = discriminant(F, tr[0], tr[1], tr[2]) != F.zero();
        if (!adm && !opts.include_inadmissible)
            throw std::invalid_argument(
                "triple has a degenerate discriminant; rerun with the inadmissible override to "
                "search it anyway");
        outs.emplace_back();
        outs[0].triples = 1;
        if (F.has_log_tables()) {
            LogSearch ls(F);
            u64 pa = F.pack(tr[0]), pb = F.pack(tr[1]), pc = F.pack(tr[2]);
            u64 la = (*ls.log)[pa];
            for (size_t bi : beta_idxs) {
                bool early = false;
                if (ls.scan(la, pb, pc, bi, &early)) {
                    if (early) ++outs[0].early;
                } else {
                    outs[0].ces.push_back({pa, pb, pc, ls.beta_packed[bi], adm});
                }
            }
        } else {
            walk_triple_generic(F, tr[0], tr[1], tr[2], adm, beta_packed, beta_idxs, outs[0]);
        }
    } else {
        outs.resize(workers);
        if (F.has_log_tables()) {
            LogSearch ls(F);
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    scan_triples_logged(ls, opts, beta_idxs, 1 + w, workers, outs[w]);
                });
            for (auto& th : pool) th.join();
        } else {
            throw std::invalid_argument(
                "exhaustive all-triple search requires the discrete-log tables (field size <= "
                "2^22)");
        }
    }

    std::vector<PackedCE> all;
    for (auto& o : outs) {
        rep.triples_checked += o.triples;
        rep.early_exits += o.early;
        all.insert(all.end(), o.ces.begin(), o.ces.end());
    }
    std::sort(all.begin(), all.end());
    for (const auto& ce : all) {
        Counterexample c;
        c.a = F.to_string(F.unpack(ce.a));
        c.b = F.to_string(F.unpack(ce.b));
        c.c = F.to_string(F.unpack(ce.c));
        c.beta = F.to_string(F.unpack(ce.beta));
        c.admissible = ce.admissible;
        if (ce.admissible)
            ++rep.admissible_counterexamples;
        else
            ++rep.inadmissible_counterexamples;
        rep.counterexamples.push_back(std::move(c));
    }
    rep.status = rep.admissible_counterexamples > 0 ? "exceptional"
                 : rep.full_scope                   ? "member"
                                                    : "unresolved";
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- verdict pipeline -------------------------------------------------------

ClassifyResult classify(u64 q, unsigned m, u64 guard, unsigned workers) {
    auto pp = intnum::as_prime_power(q);
    if (!pp) throw std::invalid_argument("q must be a prime power");
    if (m == 0) throw std::invalid_argument("m must be positive");
    ClassifyResult res;
    res.q = q;
    res.m = m;
    if (m <= 2) {
        res.stage = "out_of_scope";
        res.verdict = "out_of_scope";
        res.detail = m == 1 ? "m = 1 is out of scope for the pair search"
                            : "m = 2 is out of scope: no witness can exist for beta = 0";
        return res;
    }
    res.region = criteria::region_check(q, m);
    if (res.region->eliminated) {
        res.stage = "region";
        res.verdict = "member";
        res.detail = res.region->rule;
        return res;
    }
    res.base = criteria::base_condition(q, m);
    if (res.base->passes) {
        res.stage = "base";
        res.verdict = "member";
        res.detail = "q^(m/2-1) exceeds 2 W(q^m-1)^2";
        return res;
    }
    res.sieve = criteria::best_sieve(q, m);
    if (res.sieve->passes) {
        res.stage = "sieve";
        res.verdict = "member";
        res.detail = "passing sieve plan with core size " + std::to_string(res.sieve->r_primes.size());
        return res;
    }
    if (pow_u128_checked(q, m) > guard) {
        res.stage = "none";
        res.verdict = "unresolved";
        res.detail = "no criterion decided and the field size exceeds the search guard";
        return res;
    }
    try {
        FieldCtx F = gf::build_field(pp->p, pp->s, m);
        SearchOptions so;
        so.workers = workers;
        so.guard = guard;
        res.search = search_pair(F, so);
        res.stage = "search";
        res.verdict = res.search->status;
        res.detail =
            res.search->status == "exceptional"
                ? std::to_string(res.search->admissible_counterexamples) +
                      " admissible counterexamples found by exhaustive search"
                : "exhaustive search found a witness for every admissible triple and beta";
    } catch (const std::exception& e) {
        res.stage = "none";
        res.verdict = "unresolved";
        res.detail = std::string("exhaustive search unavailable: ") + e.what();
    }
    return res;
}

// ---- bundled property checks ------------------------------------------------

CharsumSuite charsum_suite(const FieldCtx& F, bool full) {
    CharsumSuite suite;
    suite.q = F.q;
    suite.m = F.m;
    suite.modulus = gf::coeffs_to_string(F.modulus);
    CharacterTable T(F);
    const u64 N = F.N;
    auto divs = divisors_of(N);
    auto betas = F.subfield_elements(F.q);
    u64 sample = full ? F.size : std::min<u64>(F.size, 64);

    {
        SuiteCheck ck;
        ck.name = "sigma-indicator";
        ck.tolerance = 1e-6;
        std::vector<u64> rs;
        if (full) {
            rs = divs;
        } else {
            rs.push_back(1);
            for (u64 l : prime_list(N)) rs.push_back(l);
            rs.push_back(N);
            std::sort(rs.begin(), rs.end());
            rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        }
        for (u64 r : rs)
            for (u64 idx = 1; idx < sample; ++idx) {
                FieldElem x = F.unpack(idx);
                double ind = is_rfree(F, x, r) ? 1.0 : 0.0;
                ck.max_dev = std::max(ck.max_dev, std::abs(sigma_r(T, x, r) - ind));
                ++ck.cases;
            }
        ck.pass = ck.max_dev < ck.tolerance;
        suite.checks.push_back(std::move(ck));
    }
    {
        SuiteCheck ck;
        ck.name = "gamma-indicator";
        ck.tolerance = 1e-6;
        for (const auto& beta : betas)
            for (u64 idx = 0; idx < sample; ++idx) {
                FieldElem x = F.unpack(idx);
                double ind = F.trace_to(x, F.q) == beta ? 1.0 : 0.0;
                ck.max_dev = std::max(ck.max_dev, std::abs(gamma_beta(T, x, beta) - ind));
                ++ck.cases;
            }
        ck.pass = ck.max_dev < ck.tolerance;
        suite.checks.push_back(std::move(ck));
    }
    if (full) {
        SuiteCheck ck;
        ck.name = "trace-fibers";
        ck.tolerance = 0;
        u64 expect = F.size / F.q;
        for (const auto& beta : betas) {
            u64 cnt = 0;
            for (u64 idx = 0; idx < F.size; ++idx)
                if (F.trace_to(F.unpack(idx), F.q) == beta) ++cnt;
            ck.max_dev = std::max(ck.max_dev, std::abs(double(cnt) - double(expect)));
            ++ck.cases;
        }
        ck.pass = ck.max_dev <= ck.tolerance;
        suite.checks.push_back(std::move(ck));
    }
    {
        SuiteCheck ck;
        ck.name = "mult-orthogonality";
        ck.tolerance = 1e-6;
        std::vector<u64> js;
        if (full) {
            for (u64 j = 1; j < N; ++j) js.push_back(j);
        } else {
            for (u64 j = 1; j < N && js.size() < 8; ++j) js.push_back(j);
            if (N > 1) js.push_back(N - 1);
            std::sort(js.begin(), js.end());
            js.erase(std::unique(js.begin(), js.end()), js.end());
        }
        for (u64 j : js) {
            std::complex<double> s = 0;
            for (u64 idx = 1; idx < F.size; ++idx) s += T.chi(j, F.unpack(idx));
            ck.max_dev = std::max(ck.max_dev, std::abs(s));
            ++ck.cases;
        }
        ck.pass = ck.max_dev < ck.tolerance;
        suite.checks.push_back(std::move(ck));
    }
    {
        SuiteCheck ck;
        ck.name = "add-orthogonality";
        ck.tolerance = 1e-6;
        u64 ulimit = full ? F.size : std::min<u64>(F.size, 9);
        for (u64 uidx = 1; uidx < ulimit; ++uidx) {
            FieldElem u = F.unpack(uidx);
            std::complex<double> s = 0;
            for (u64 idx = 0; idx < F.size; ++idx) s += T.psi(F.mul(u, F.unpack(idx)));
            ck.max_dev = std::max(ck.max_dev, std::abs(s));
            ++ck.cases;
        }
        ck.pass = ck.max_dev < ck.tolerance;
        suite.checks.push_back(std::move(ck));
    }
    {
        SuiteCheck ck;
        ck.name = "weil-bound";
        ck.tolerance = 1e-6;
        double md = -std::numeric_limits<double>::max();
        std::vector<std::vector<std::complex<double>>> chitab(divs.size());
        for (size_t di = 0; di < divs.size(); ++di) {
            chitab[di].resize(F.size);
            for (u64 idx = 0; idx < F.size; ++idx)
                chitab[di][idx] = T.chi_of_order(divs[di], F.unpack(idx));
        }
        double rhs = 2.0 * std::sqrt(double(F.size));  // f1 = x, squarefree quadratic f2
        u64 bc_cap = full ? std::numeric_limits<u64>::max() : 6;
        u64 taken = 0;
        for (u64 pb = 0; pb < F.size && taken < bc_cap; ++pb) {
            FieldElem b = F.unpack(pb);
            for (u64 pc = 1; pc < F.size && taken < bc_cap; ++pc) {
                FieldElem c = F.unpack(pc);
                if (discriminant(F, F.one(), b, c) == F.zero()) continue;
                ++taken;
                std::vector<u64> f2pack(F.size);
                for (u64 idx = 0; idx < F.size; ++idx) {
                    FieldElem x = F.unpack(idx);
                    f2pack[idx] = F.pack(F.add(F.add(F.mul(x, x), F.mul(b, x)), c));
                }
                for (size_t d1i = 0; d1i < divs.size(); ++d1i)
                    for (size_t d2i = 0; d2i < divs.size(); ++d2i) {
                        if (divs[d1i] == 1 && divs[d2i] == 1) continue;
                        std::complex<double> s = 0;
                        for (u64 idx = 0; idx < F.size; ++idx)
                            s += chitab[d1i][idx] * chitab[d2i][f2pack[idx]];
                        md = std::max(md, std::abs(s) - rhs);
                        ++ck.cases;
                    }
            }
        }
        ck.max_dev = ck.cases ? md : 0.0;
        ck.pass = ck.max_dev <= ck.tolerance;
        suite.checks.push_back(std::move(ck));
    }
    {
        SuiteCheck ck;
        ck.name = "s-bound";
        ck.tolerance = 1e-6;
        double md = -std::numeric_limits<double>::max();
        double bound = 2.0 * std::pow(double(F.q), double(F.m) / 2.0 + 1.0);
        FieldElem g = F.generator;
        std::vector<std::array<FieldElem, 3>> cands = {
            {F.one(), F.one(), F.zero()},      {F.one(), F.one(), F.one()},
            {g, F.one(), F.one()},             {g, g, F.one()},
            {F.mul(g, g), g, F.one()},         {F.one(), g, F.zero()},
            {g, F.one(), F.zero()},            {F.mul(g, g), F.one(), F.one()},
        };
        std::vector<std::array<FieldElem, 3>> triples;
        for (const auto& t : cands) {
            if (discriminant(F, t[0], t[1], t[2]) == F.zero()) continue;
            triples.push_back(t);
            if (triples.size() == 5) break;
        }
        if (!full && triples.size() > 2) triples.resize(2);
        std::vector<std::pair<u64, u64>> dpairs;
        for (u64 d1 : divs)
            for (u64 d2 : divs) {
                if (d1 == 1 && d2 == 1) continue;
                dpairs.push_back({d1, d2});
            }
        if (!full && dpairs.size() > 4) dpairs.resize(4);
        for (auto [d1, d2] : dpairs)
            for (const auto& beta : betas)
                for (const auto& t : triples) {
                    md = std::max(md, s_sum(T, d1, d2, t[0], t[1], t[2], beta) - bound);
                    ++ck.cases;
                }
        ck.max_dev = ck.cases ? md : 0.0;
        ck.pass = ck.max_dev <= ck.tolerance;
        suite.checks.push_back(std::move(ck));
    }

    suite.all_pass = true;
    for (const auto& ck : suite.checks) suite.all_pass = suite.all_pass && ck.pass;
    return suite;
}

}  // namespace primpair::verify
