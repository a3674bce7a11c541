#include "primpair/gf.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace primpair::gf {

namespace {

// ---- dense polynomial arithmetic over F_p (build-time only) ----------------

using Poly = std::vector<u64>;  // ascending degree

int deg(const Poly& a) {
    for (int i = int(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
    return -1;
}

void trim(Poly& a) { a.resize(size_t(deg(a) + 1)); }

u64 inv_mod_p(u64 a, u64 p) { return u64(powmod_u128(a, p - 2, p)); }

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, u64 p) {
    size_t n = g.size() - 1;
    std::vector<u128> t(2 * n - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            t[i + j] = (t[i + j] + u128(a[i]) * b[j]) % p;
        }
    }
    for (size_t i = 2 * n - 2; i + 1 > n; --i) {
        u128 c = t[i];
        if (c == 0) continue;
        t[i] = 0;
        for (size_t j = 0; j < n; ++j) {
            u128 sub = (c * (g[j] % p)) % p;
            t[i - n + j] = (t[i - n + j] + p - sub) % p;
        }
    }
    Poly r(n);
    for (size_t i = 0; i < n; ++i) r[i] = u64(t[i]);
    return r;
}

Poly poly_powmod(Poly base, u128 e, const Poly& g, u64 p) {
    Poly r(g.size() - 1, 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, g, p);
        base = poly_mulmod(base, base, g, p);
        e >>= 1;
    }
    return r;
}

Poly poly_mod(Poly a, const Poly& b, u64 p) {
    int db = deg(b);
    u64 lead_inv = inv_mod_p(b[size_t(db)], p);
    for (int da = deg(a); da >= db; da = deg(a)) {
        u64 c = u64((u128(a[size_t(da)]) * lead_inv) % p);
        for (int j = 0; j <= db; ++j) {
            u128 sub = (u128(c) * b[size_t(j)]) % p;
            a[size_t(da - db + j)] = u64((u128(a[size_t(da - db + j)]) + p - sub) % p);
        }
    }
    trim(a);
    return a;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (deg(b) >= 0) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (deg(a) >= 0 && a[size_t(deg(a))] != 1) {
        u64 s = inv_mod_p(a[size_t(deg(a))], p);
        for (auto& c : a) c = u64((u128(c) * s) % p);
    }
    return a;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i] % p) % p;
    trim(a);
    return a;
}

Poly poly_x() { return Poly{0, 1}; }

// gcd(x^{p^k} - x, g) for ascending k spots a factor of the smallest degree
// present; an equal-degree product needs the splitting sweep below.
std::optional<Poly> equal_degree_witness(u64 p, const Poly& g, unsigned d) {
    unsigned n = unsigned(g.size() - 1);
    // deterministic sweep over candidate polynomials u in canonical order
    Poly u(n, 0);
    u128 half = (pow_u128_checked(p, d) - 1) / 2;
    for (int iter = 0; iter < 4096; ++iter) {
        // odometer, last coefficient fastest (canonical ascending order)
        int j = int(n) - 1;
        while (j >= 0) {
            if (++u[size_t(j)] < p) break;
            u[size_t(j)] = 0;
            --j;
        }
        if (j < 0) break;
        if (deg(u) < 1) continue;
        std::vector<Poly> cands;
        if (p == 2) {
            Poly t(n, 0), fr = u;
            for (unsigned i = 0; i * d < n; ++i) {
                t = poly_sub(t, fr, p);  // char 2: add == sub
                if ((i + 1) * d < n)
                    for (unsigned step = 0; step < d; ++step) fr = poly_mulmod(fr, fr, g, p);
            }
            cands.push_back(t);
            Poly t1 = t;
            t1.resize(std::max<size_t>(t1.size(), 1), 0);
            t1[0] ^= 1;
            cands.push_back(t1);
        } else {
            Poly t = poly_powmod(u, half, g, p);
            Poly one{1};
            cands.push_back(poly_sub(t, one, p));
            cands.push_back(t);
            Poly t2 = t;
            if (t2.empty()) t2.resize(1, 0);
            t2[0] = (t2[0] + 1) % p;
            cands.push_back(t2);
        }
        for (const Poly& cand : cands) {
            if (deg(cand) < 0) continue;
            Poly w = poly_gcd(g, cand, p);
            int dw = deg(w);
            if (dw > 0 && dw < int(n)) return w;
        }
    }
    return std::nullopt;
}

std::optional<Poly> reducible_witness(u64 p, const Poly& g) {
    unsigned n = unsigned(g.size() - 1);
    Poly h = poly_x();
    for (unsigned k = 1; k < n; ++k) {
        h = poly_powmod(h, p, g, p);
        Poly w = poly_gcd(g, poly_sub(h, poly_x(), p), p);
        int dw = deg(w);
        if (dw > 0 && dw < int(n)) return w;
        if (dw == int(n)) return equal_degree_witness(p, g, k);
    }
    return std::nullopt;
}

}  // namespace

std::string coeffs_to_string(const Coeffs& c) {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(c[i]);
    }
    return s;
}

Coeffs coeffs_from_string(const std::string& s) {
    Coeffs out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("bad coefficient: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty coefficient string");
    return out;
}

bool poly_is_irreducible_mod_p(u64 p, const Coeffs& poly) {
    Poly g(poly.begin(), poly.end());
    unsigned n = unsigned(g.size() - 1);
    if (n == 0) return false;
    if (n == 1) return true;
    // x^{p^n} == x mod g, and gcd(x^{p^{n/r}} - x, g) = 1 for prime r | n
    Poly h = poly_powmod(poly_x(), pow_u128_checked(p, n), g, p);
    if (poly_sub(h, poly_x(), p) != Poly{}) return false;
    for (const auto& [r, e] : intnum::factorize(n).factors) {
        Poly hk = poly_powmod(poly_x(), pow_u128_checked(p, n / unsigned(r)), g, p);
        Poly w = poly_gcd(g, poly_sub(hk, poly_x(), p), p);
        if (deg(w) != 0) return false;
    }
    return true;
}

// ---- FieldCtx ---------------------------------------------------------------

FieldElem FieldCtx::zero() const { return FieldElem{Coeffs(degree, 0)}; }

FieldElem FieldCtx::one() const { return from_const(1); }

FieldElem FieldCtx::from_const(u64 k) const {
    FieldElem e{Coeffs(degree, 0)};
    e.c[0] = k % p;
    return e;
}

FieldElem FieldCtx::x_class() const {
    if (degree == 1) {
        // x == -modulus[0] in F_p[x]/(x + c)
        return from_const((p - modulus[0] % p) % p);
    }
    FieldElem e{Coeffs(degree, 0)};
    e.c[1] = 1;
    return e;
}

FieldElem FieldCtx::add(const FieldElem& a, const FieldElem& b) const {
    FieldElem r{Coeffs(degree)};
    for (unsigned i = 0; i < degree; ++i) {
        u64 v = a.c[i] + b.c[i];
        r.c[i] = v >= p ? v - p : v;
    }
    return r;
}

FieldElem FieldCtx::sub(const FieldElem& a, const FieldElem& b) const {
    FieldElem r{Coeffs(degree)};
    for (unsigned i = 0; i < degree; ++i) {
        u64 v = a.c[i] + p - b.c[i];
        r.c[i] = v >= p ? v - p : v;
    }
    return r;
}

FieldElem FieldCtx::smul(u64 k, const FieldElem& a) const {
    k %= p;
    FieldElem r{Coeffs(degree)};
    for (unsigned i = 0; i < degree; ++i) r.c[i] = u64((u128(a.c[i]) * k) % p);
    return r;
}

FieldElem FieldCtx::neg(const FieldElem& a) const {
    FieldElem r{Coeffs(degree)};
    for (unsigned i = 0; i < degree; ++i) r.c[i] = a.c[i] == 0 ? 0 : p - a.c[i];
    return r;
}

FieldElem FieldCtx::mul(const FieldElem& a, const FieldElem& b) const {
    if (degree == 1) {
        FieldElem r{Coeffs(1)};
        r.c[0] = u64((u128(a.c[0]) * b.c[0]) % p);
        return r;
    }
    // degree >= 2 forces p <= 2^20, so u64 accumulation cannot overflow
    std::vector<u64> t(2 * degree - 1, 0);
    for (unsigned i = 0; i < degree; ++i) {
        if (a.c[i] == 0) continue;
        for (unsigned j = 0; j < degree; ++j) t[i + j] += a.c[i] * b.c[j];
    }
    for (auto& v : t) v %= p;
    for (unsigned i = 2 * degree - 2; i >= degree; --i) {
        u64 c = t[i];
        if (c == 0) continue;
        t[i] = 0;
        for (unsigned j = 0; j < degree; ++j) t[i - degree + j] = (t[i - degree + j] + c * (p - modulus[j] % p)) % p;
    }
    FieldElem r{Coeffs(degree)};
    for (unsigned i = 0; i < degree; ++i) r.c[i] = t[i];
    return r;
}

FieldElem FieldCtx::pow(const FieldElem& a, u128 e) const {
    FieldElem r = one();
    FieldElem base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

FieldElem FieldCtx::inv(const FieldElem& a) const {
    if (a == zero()) throw std::domain_error("inverse of zero");
    if (N == 0) return one();  // F_2
    return pow(a, N - 1);
}

FieldElem FieldCtx::eval_quadratic(const FieldElem& a, const FieldElem& b, const FieldElem& c,
                                   const FieldElem& x) const {
    return add(add(mul(a, mul(x, x)), mul(b, x)), c);
}

u64 FieldCtx::order(const FieldElem& a) const {
    if (a == zero()) throw std::domain_error("order of zero");
    u64 o = N;
    if (o == 0) return 1;
    for (const auto& [prime, e] : group_order_factors.factors) {
        u64 ell = u64(prime);
        while (o % ell == 0 && pow(a, o / ell) == one()) o /= ell;
    }
    return o == 0 ? 1 : o;
}

bool FieldCtx::is_primitive(const FieldElem& a) const {
    if (a == zero()) return false;
    for (const auto& [prime, e] : group_order_factors.factors)
        if (pow(a, N / u64(prime)) == one()) return false;
    return true;
}

FieldElem FieldCtx::trace_to(const FieldElem& a, u64 target_q) const {
    auto pp = intnum::as_prime_power(target_q);
    if (target_q == 0 || (target_q != p && (!pp || pp->p != p)))
        throw std::invalid_argument("trace target is not a power of the characteristic");
    unsigned t = target_q == p ? 1 : pp->s;
    if (degree % t != 0) throw std::invalid_argument("trace target is not a subfield");
    FieldElem acc = a;
    FieldElem y = a;
    for (unsigned i = 1; i < degree / t; ++i) {
        y = pow(y, target_q);
        acc = add(acc, y);
    }
    return acc;
}

u64 FieldCtx::abs_trace(const FieldElem& a) const { return trace_to(a, p).c[0]; }

std::vector<FieldElem> FieldCtx::subfield_elements(u64 target_q) const {
    auto pp = intnum::as_prime_power(target_q);
    if (!pp || pp->p != p || degree % pp->s != 0)
        throw std::invalid_argument("not a subfield order: " + std::to_string(target_q));
    if (target_q > (u64(1) << 22)) throw std::out_of_range("subfield too large to enumerate");
    std::vector<FieldElem> out;
    out.reserve(target_q);
    out.push_back(zero());
    if (target_q == 2 && N == 1) {
        out.push_back(one());
    } else {
        u64 step = N / (target_q - 1);
        FieldElem g_step = pow(generator, step);
        FieldElem cur = one();
        for (u64 j = 0; j + 1 < target_q; ++j) {
            out.push_back(cur);
            cur = mul(cur, g_step);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 FieldCtx::pack(const FieldElem& a) const {
    u64 idx = 0;
    for (unsigned i = 0; i < degree; ++i) idx = idx * p + a.c[i];
    return idx;
}

FieldElem FieldCtx::unpack(u64 idx) const {
    FieldElem e{Coeffs(degree)};
    for (unsigned i = degree; i-- > 0;) {
        e.c[i] = idx % p;
        idx /= p;
    }
    return e;
}

std::string FieldCtx::to_string(const FieldElem& a) const {
    Coeffs c(a.c.begin(), a.c.end());
    return coeffs_to_string(c);
}

FieldElem FieldCtx::from_string(const std::string& s) const {
    Coeffs c = coeffs_from_string(s);
    if (c.size() > degree) throw std::invalid_argument("too many coefficients for this field");
    c.resize(degree, 0);
    FieldElem e{c};
    for (auto& v : e.c)
        if (v >= p) throw std::invalid_argument("coefficient out of range [0, p)");
    return e;
}

void FieldCtx::build_tables() {
    if (size > (u64(1) << 22)) return;
    exp_table.assign(size_t(N), 0);
    log_table.assign(size_t(size), kNoLog);
    FieldElem acc = one();
    for (u64 k = 0; k < N; ++k) {
        u64 idx = pack(acc);
        exp_table[size_t(k)] = std::uint32_t(idx);
        log_table[size_t(idx)] = std::uint32_t(k);
        acc = mul(acc, generator);
    }
    if (acc != one()) throw std::logic_error("generator order mismatch while building tables");
}

Coeffs default_modulus(u64 p, unsigned degree) {
    u128 sz = pow_u128_checked(p, degree);
    u128 n128 = sz - 1;
    auto nf = intnum::factorize(n128);
    Coeffs idx(degree, 0);
    // a zero constant term makes x a factor, so no candidate below this is
    // ever primitive; starting here skips the whole c0 = 0 block of the scan
    idx[0] = 1;
    while (true) {
        Coeffs mod = idx;
        mod.push_back(1);
        bool ok = false;
        if (degree == 1) {
            u64 root = (p - idx[0] % p) % p;
            if (root != 0) {
                ok = true;
                for (const auto& [ell, e] : nf.factors)
                    if (powmod_u128(root, u128(p - 1) / ell, p) == 1) ok = false;
            }
        } else if (idx[0] != 0 && poly_is_irreducible_mod_p(p, mod)) {
            // order test on the class of x
            Poly g(mod.begin(), mod.end());
            ok = true;
            for (const auto& [ell, e] : nf.factors) {
                Poly h = poly_powmod(poly_x(), n128 / ell, g, p);
                if (deg(h) == 0 && h[0] == 1) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return mod;
        unsigned j = degree;
        while (j-- > 0) {
            if (++idx[j] < p) break;
            idx[j] = 0;
            if (j == 0) throw std::logic_error("no primitive polynomial found");
        }
    }
}

FieldCtx build_field(u64 p, unsigned s, unsigned m, const std::optional<Coeffs>& modulus) {
    if (!intnum::is_prime(p)) throw std::invalid_argument("p is not prime: " + std::to_string(p));
    if (s < 1 || m < 1) throw std::invalid_argument("s and m must be >= 1");
    unsigned degree = s * m;
    u128 sz = pow_u128_checked(p, degree);
    if (sz > (u128(1) << 40)) throw std::out_of_range("field larger than 2^40 elements");

    FieldCtx ctx;
    ctx.p = p;
    ctx.s = s;
    ctx.m = m;
    ctx.degree = degree;
    ctx.q = u64(pow_u128_checked(p, s));
    ctx.size = u64(sz);
    ctx.N = ctx.size - 1;
    ctx.group_order_factors = intnum::factorize(u128(ctx.N == 0 ? 1 : ctx.N));
    if (ctx.N == 0) ctx.group_order_factors.factors.clear();

    if (modulus) {
        Coeffs mod = *modulus;
        if (mod.size() != size_t(degree) + 1)
            throw std::invalid_argument("modulus must have degree s*m");
        for (auto& c : mod)
            if (c >= p) throw std::invalid_argument("modulus coefficient out of range [0, p)");
        if (mod.back() != 1) throw std::invalid_argument("modulus must be monic");
        if (!poly_is_irreducible_mod_p(p, mod)) {
            Poly g(mod.begin(), mod.end());
            auto w = reducible_witness(p, g);
            std::string msg = "modulus is reducible";
            if (w) {
                Coeffs wc(w->begin(), w->end());
                msg += "; factor: " + coeffs_to_string(wc);
            }
            throw std::invalid_argument(msg);
        }
        ctx.modulus = mod;
    } else {
        ctx.modulus = default_modulus(p, degree);
    }

    FieldElem xc = ctx.x_class();
    if (ctx.is_primitive(xc)) {
        ctx.generator = xc;
    } else {
        // deterministic scan in canonical element order
        FieldElem found = ctx.zero();
        for (u64 i = 1; i < ctx.size; ++i) {
            FieldElem cand = ctx.unpack(i);
            if (ctx.is_primitive(cand)) {
                found = cand;
                break;
            }
        }
        if (found == ctx.zero() && ctx.N > 1) throw std::logic_error("no generator found");
        ctx.generator = ctx.N <= 1 ? ctx.one() : found;
    }
    ctx.build_tables();
    return ctx;
}

}  // namespace primpair::gf
