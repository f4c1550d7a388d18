#include "triality/field.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace triality {

namespace {

// Digit buffers for schoolbook arithmetic. The size cap of 2^24 elements
// bounds the degree at 24 (p = 2) and the characteristic at 4096 (m >= 2);
// m = 1 allows larger p but needs only one digit.
constexpr unsigned kMaxDeg = 32;
using Digits = std::array<std::uint32_t, kMaxDeg>;

void to_digits(std::uint32_t v, std::uint64_t p, unsigned m, Digits& out) {
    for (unsigned i = 0; i < m; ++i) {
        out[i] = std::uint32_t(v % p);
        v = std::uint32_t(v / p);
    }
}

std::uint32_t from_digits(const Digits& d, std::uint64_t p, unsigned m) {
    std::uint64_t v = 0;
    for (unsigned i = m; i-- > 0;) v = v * p + d[i];
    return std::uint32_t(v);
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a * b) % p; // p <= 2^24 here, no overflow
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t p) {
    return powmod_u64(a, p - 2, p); // p prime
}

// Dense polynomials over F_p for the modulus search, coefficient of x^i at
// index i, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul_fp(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = std::uint32_t((out[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    poly_trim(out);
    return out;
}

Poly poly_mod_fp(Poly a, const Poly& mod, std::uint64_t p) {
    const std::uint64_t inv_lead = invmod_u64(mod.back(), p);
    while (a.size() >= mod.size()) {
        std::uint64_t c = mulmod_u64(a.back(), inv_lead, p);
        std::size_t shift = a.size() - mod.size();
        if (c) {
            for (std::size_t i = 0; i < mod.size(); ++i) {
                std::uint64_t sub = mulmod_u64(c, mod[i], p);
                a[shift + i] = std::uint32_t((a[shift + i] + p - sub) % p);
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_mulmod_fp(const Poly& a, const Poly& b, const Poly& mod,
                    std::uint64_t p) {
    return poly_mod_fp(poly_mul_fp(a, b, p), mod, p);
}

Poly poly_powmod_fp(Poly base, std::uint64_t e, const Poly& mod,
                    std::uint64_t p) {
    Poly r = {1};
    while (e) {
        if (e & 1) r = poly_mulmod_fp(r, base, mod, p);
        base = poly_mulmod_fp(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd_fp(Poly a, Poly b, std::uint64_t p) {
    while (!b.empty()) {
        Poly r = poly_mod_fp(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty() && a.back() != 1) {
        std::uint64_t inv = invmod_u64(a.back(), p);
        for (auto& c : a) c = std::uint32_t(mulmod_u64(c, inv, p));
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Rabin's criterion: f of degree m is irreducible over F_p iff
// x^{p^m} = x (mod f) and gcd(x^{p^{m/r}} - x, f) = 1 for every prime r | m.
// Exact, and fast enough to drive the lexicographic scan.
bool is_irreducible_rabin(const Poly& f, std::uint64_t p) {
    const unsigned m = unsigned(f.size() - 1);
    const Poly x = {0, 1};
    // xp[j] = x^{p^j} mod f, built by repeated p-th powers
    std::vector<Poly> xp(m + 1);
    xp[0] = poly_mod_fp(x, f, p);
    for (unsigned j = 1; j <= m; ++j)
        xp[j] = poly_powmod_fp(xp[j - 1], p, f, p);
    if (xp[m] != poly_mod_fp(x, f, p)) return false;
    for (std::uint64_t r : prime_factors(m)) {
        Poly h = xp[m / r];
        // h - x
        if (h.size() < 2) h.resize(2, 0);
        h[1] = std::uint32_t((h[1] + p - 1) % p);
        poly_trim(h);
        Poly g = poly_gcd_fp(h, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Independent confirmation of the chosen modulus: no monic polynomial of
// degree 1..m/2 divides it. Affordable once per construction even at the
// size cap.
bool is_irreducible_trial(const Poly& f, std::uint64_t p) {
    const unsigned m = unsigned(f.size() - 1);
    for (unsigned d = 1; 2 * d <= m; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= p;
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly g(d + 1, 0);
            std::uint64_t v = c;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = std::uint32_t(v % p);
                v /= p;
            }
            g[d] = 1;
            if (poly_mod_fp(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimePower::PrimePower(std::uint64_t p_, unsigned f_) : p(p_), f(f_) {
    if (!is_prime(p))
        throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (f == 0) throw std::invalid_argument("exponent f must be positive");
    q = 1;
    for (unsigned i = 0; i < f; ++i) {
        if (q > (std::uint64_t(1) << 62) / p)
            throw std::invalid_argument("prime power overflows");
        q *= p;
    }
}

std::optional<PrimePower> parse_prime_power(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    for (std::uint64_t p = 2; p * p <= q; ++p) {
        if (q % p == 0) {
            unsigned f = 0;
            std::uint64_t rest = q;
            while (rest % p == 0) {
                rest /= p;
                ++f;
            }
            if (rest != 1) return std::nullopt;
            return PrimePower(p, f);
        }
    }
    return PrimePower(q, 1);
}

FieldElem FieldCtx::element(std::uint64_t index) const {
    if (index < 1 || index > size)
        throw std::invalid_argument("element index out of range");
    return {std::uint32_t(index - 1)};
}

std::vector<std::uint32_t> FieldCtx::coeffs(FieldElem a) const {
    std::vector<std::uint32_t> out(m);
    std::uint64_t v = a.v;
    for (unsigned i = 0; i < m; ++i) {
        out[i] = std::uint32_t(v % base.p);
        v /= base.p;
    }
    return out;
}

FieldElem FieldCtx::from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != m) throw std::invalid_argument("coefficient count != degree");
    std::uint64_t v = 0;
    for (unsigned i = m; i-- > 0;) {
        if (c[i] >= base.p) throw std::invalid_argument("coefficient not reduced");
        v = v * base.p + c[i];
    }
    return {std::uint32_t(v)};
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
    if (base.p == 2) return {a.v ^ b.v};
    Digits da, db;
    to_digits(a.v, base.p, m, da);
    to_digits(b.v, base.p, m, db);
    for (unsigned i = 0; i < m; ++i) {
        da[i] += db[i];
        if (da[i] >= base.p) da[i] -= std::uint32_t(base.p);
    }
    return {from_digits(da, base.p, m)};
}

FieldElem FieldCtx::neg(FieldElem a) const {
    if (base.p == 2) return a;
    Digits da;
    to_digits(a.v, base.p, m, da);
    for (unsigned i = 0; i < m; ++i)
        if (da[i]) da[i] = std::uint32_t(base.p) - da[i];
    return {from_digits(da, base.p, m)};
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const {
    return add(a, neg(b));
}

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
    if (a.v == 0 || b.v == 0) return {0};
    if (base.p == 2) {
        // carry-less multiply, then fold high bits with the modulus mask
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < m; ++i)
            if (a.v >> i & 1) acc ^= std::uint64_t(b.v) << i;
        for (unsigned d = 2 * m - 2; d >= m; --d)
            if (acc >> d & 1) acc ^= modmask_ << (d - m);
        return {std::uint32_t(acc)};
    }
    Digits da, db;
    to_digits(a.v, base.p, m, da);
    to_digits(b.v, base.p, m, db);
    std::array<std::uint64_t, 2 * kMaxDeg> acc{};
    for (unsigned i = 0; i < m; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < m; ++j)
            acc[i + j] += std::uint64_t(da[i]) * db[j];
    }
    for (unsigned d = 2 * m - 2; d >= m && d < 2 * kMaxDeg; --d) {
        std::uint64_t c = acc[d] % base.p;
        if (c)
            for (unsigned i = 0; i < m; ++i)
                acc[d - m + i] += c * (base.p - modulus[i]);
        acc[d] = 0;
        if (d == m) break;
    }
    Digits out;
    for (unsigned i = 0; i < m; ++i) out[i] = std::uint32_t(acc[i] % base.p);
    return {from_digits(out, base.p, m)};
}

FieldElem FieldCtx::pow(FieldElem a, long long e) const {
    const long long n = (long long)(size - 1);
    if (a.v == 0) {
        if (e < 0) throw std::domain_error("negative power of zero");
        return e == 0 ? one() : zero();
    }
    long long r = e % n;
    if (r < 0) r += n;
    FieldElem result = one();
    FieldElem base_ = a;
    while (r) {
        if (r & 1) result = mul(result, base_);
        base_ = mul(base_, base_);
        r >>= 1;
    }
    return result;
}

unsigned FieldCtx::abs_trace(FieldElem a) const {
    FieldElem acc = a;
    FieldElem x = a;
    for (unsigned i = 1; i < m; ++i) {
        x = pow(x, (long long)base.p);
        acc = add(acc, x);
    }
    std::uint64_t v = acc.v;
    unsigned t = unsigned(v % base.p);
    if (v / base.p != 0)
        throw std::logic_error("trace did not land in the prime field");
    return t;
}

FieldElem FieldCtx::frobenius_q(FieldElem a) const {
    return pow(a, (long long)base.q);
}

FieldElem FieldCtx::rel_trace_to_mid(FieldElem s) const {
    if (m != 3 * base.f)
        throw std::invalid_argument("relative trace needs the degree-3f field");
    const long long q = (long long)base.q;
    FieldElem r = add(add(s, pow(s, q)), pow(s, q * q));
    if (frobenius_q(r) != r)
        throw std::logic_error("relative trace not fixed by Frobenius");
    return r;
}

FieldElem FieldCtx::subfield_norm(FieldElem s) const {
    if (m != 3 * base.f)
        throw std::invalid_argument("subfield norm needs the degree-3f field");
    const long long q = (long long)base.q;
    FieldElem r = pow(s, q * q + q + 1);
    if (frobenius_q(r) != r)
        throw std::logic_error("subfield norm not fixed by Frobenius");
    return r;
}

FieldElem FieldCtx::tau() const {
    if (!tau_found_) throw std::logic_error("find_tau has not run on this context");
    return tau_;
}

FieldElem FieldCtx::tau_pow(long long e) const {
    if (!tau_found_) throw std::logic_error("find_tau has not run on this context");
    const long long n = (long long)(size - 1);
    long long r = e % n;
    if (r < 0) r += n;
    return {pow_table_[std::size_t(r)]};
}

std::uint32_t FieldCtx::dlog(FieldElem a) const {
    if (!tau_found_) throw std::logic_error("find_tau has not run on this context");
    if (a.v == 0) throw std::domain_error("discrete log of zero");
    return log_table_[a.v];
}

FieldCtx build_field(const PrimePower& pp, unsigned m, std::uint64_t size_cap) {
    if (m == 0) throw std::invalid_argument("extension degree must be positive");
    if (m > kMaxDeg - 1) throw std::invalid_argument("extension degree too large");
    std::uint64_t size = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (size > size_cap / pp.p)
            throw std::invalid_argument("field size exceeds the configured cap");
        size *= pp.p;
    }
    if (size > size_cap)
        throw std::invalid_argument("field size exceeds the configured cap");

    FieldCtx ctx;
    ctx.base = pp;
    ctx.m = m;
    ctx.size = size;

    // Scan base-p counter values; the counter digits are the non-leading
    // coefficients, constant term first, so smaller counter = smaller
    // modulus in the deterministic order.
    for (std::uint64_t c = 0; c < size; ++c) {
        Poly f(m + 1, 0);
        std::uint64_t v = c;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = std::uint32_t(v % pp.p);
            v /= pp.p;
        }
        f[m] = 1;
        if (is_irreducible_rabin(f, pp.p)) {
            if (!is_irreducible_trial(f, pp.p))
                throw std::logic_error("irreducibility checks disagree");
            ctx.modulus.assign(f.begin(), f.end());
            if (pp.p == 2)
                for (unsigned i = 0; i <= m; ++i)
                    if (ctx.modulus[i]) ctx.modmask_ |= std::uint64_t(1) << i;
            return ctx;
        }
    }
    throw std::logic_error("no irreducible polynomial found"); // unreachable
}

FieldElem find_tau(FieldCtx& ctx) {
    if (ctx.tau_found_) return ctx.tau_;
    const std::uint64_t n = ctx.size - 1;
    const auto primes = prime_factors(n);
    FieldElem tau{};
    bool found = false;
    for (std::uint64_t v = 1; v < ctx.size && !found; ++v) {
        FieldElem a{std::uint32_t(v)};
        bool full_order = true;
        for (std::uint64_t r : primes) {
            if (ctx.pow(a, (long long)(n / r)) == ctx.one()) {
                full_order = false;
                break;
            }
        }
        if (full_order) {
            if (ctx.pow(a, (long long)n) != ctx.one())
                throw std::logic_error("candidate violates Lagrange");
            tau = a;
            found = true;
        }
    }
    if (!found) throw std::logic_error("no generator found");

    ctx.pow_table_.assign(n, 0);
    ctx.log_table_.assign(ctx.size, UINT32_MAX);
    FieldElem cur = ctx.one();
    for (std::uint64_t e = 0; e < n; ++e) {
        ctx.pow_table_[e] = cur.v;
        if (ctx.log_table_[cur.v] != UINT32_MAX)
            throw std::logic_error("generator powers repeat early");
        ctx.log_table_[cur.v] = std::uint32_t(e);
        cur = ctx.mul(cur, tau);
    }
    if (cur != ctx.one())
        throw std::logic_error("generator does not close its cycle");
    ctx.tau_ = tau;
    ctx.tau_found_ = true;
    return tau;
}

FieldElem find_embedding_root(const FieldCtx& ctx_q, const FieldCtx& ctx3) {
    if (ctx_q.base.p != ctx3.base.p)
        throw std::invalid_argument("embedding needs equal characteristic");
    if (ctx3.m != 3 * ctx_q.m)
        throw std::invalid_argument("embedding needs degree ratio 3");
    for (std::uint64_t v = 0; v < ctx3.size; ++v) {
        FieldElem x{std::uint32_t(v)};
        FieldElem acc = ctx3.zero();
        for (unsigned i = ctx_q.m + 1; i-- > 0;)
            acc = ctx3.add(ctx3.mul(acc, x), {ctx_q.modulus[i]});
        if (acc == ctx3.zero()) return x;
    }
    throw std::logic_error("modulus has no root in the extension");
}

FieldElem embed_with_root(FieldElem a, const FieldCtx& ctx_q,
                          const FieldCtx& ctx3, FieldElem root) {
    const auto digits = ctx_q.coeffs(a);
    FieldElem acc = ctx3.zero();
    for (unsigned i = ctx_q.m; i-- > 0;)
        acc = ctx3.add(ctx3.mul(acc, root), {digits[i]});
    return acc;
}

FieldElem embed(FieldElem a, const FieldCtx& ctx_q, const FieldCtx& ctx3) {
    return embed_with_root(a, ctx_q, ctx3, find_embedding_root(ctx_q, ctx3));
}

} // namespace triality
