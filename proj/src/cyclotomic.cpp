#include "triality/cyclotomic.hpp"

#include <stdexcept>
#include <string>

#include "triality/errors.hpp"

namespace triality {

namespace {

void require_prime(std::uint64_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("cyclotomic order " + std::to_string(p) +
                                    " is not prime");
}

void require_same_p(const CycInt& a, const CycInt& b) {
    if (a.p != b.p)
        throw std::invalid_argument("cyclotomic operands of different order");
}

} // namespace

CycInt cyc_zero(std::uint64_t p) {
    require_prime(p);
    CycInt z;
    z.p = p;
    z.coeffs.assign(p - 1, BigInt(0));
    return z;
}

CycInt cyc_from_int(std::uint64_t p, const BigInt& n) {
    CycInt z = cyc_zero(p);
    z.coeffs[0] = n;
    return z;
}

CycInt cyc_root_power(std::uint64_t p, long long t) {
    CycInt z = cyc_zero(p);
    long long r = t % (long long)p;
    if (r < 0) r += (long long)p;
    if (std::uint64_t(r) == p - 1) {
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        for (auto& c : z.coeffs) c = -1;
    } else {
        z.coeffs[std::size_t(r)] = 1;
    }
    return z;
}

CycInt cyc_add(const CycInt& a, const CycInt& b) {
    require_same_p(a, b);
    CycInt z = a;
    for (std::size_t i = 0; i < z.coeffs.size(); ++i) z.coeffs[i] += b.coeffs[i];
    return z;
}

CycInt cyc_mul(const CycInt& a, const CycInt& b) {
    require_same_p(a, b);
    const std::uint64_t p = a.p;
    // Exponents i+j stay below 2p, so one reduction mod p lands every term in
    // [0, p); then rewrite the zeta^{p-1} component into the basis.
    std::vector<BigInt> byexp(p, BigInt(0));
    for (std::size_t i = 0; i + 1 < p; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j + 1 < p; ++j) {
            if (b.coeffs[j] == 0) continue;
            byexp[(i + j) % p] += a.coeffs[i] * b.coeffs[j];
        }
    }
    CycInt z = cyc_zero(p);
    for (std::size_t i = 0; i + 1 < p; ++i) z.coeffs[i] = byexp[i] - byexp[p - 1];
    return z;
}

CycInt cyc_from_counts(std::uint64_t p, const std::vector<BigInt>& counts) {
    if (counts.size() != p)
        throw std::invalid_argument("need one count per residue");
    CycInt z = cyc_zero(p);
    for (std::size_t i = 0; i + 1 < p; ++i) z.coeffs[i] = counts[i] - counts[p - 1];
    return z;
}

BigInt cyc_to_int(const CycInt& z) {
    for (std::size_t i = 1; i < z.coeffs.size(); ++i)
        if (z.coeffs[i] != 0)
            throw NotRationalInteger(
                "cyclotomic value has a nonzero coordinate at zeta^" +
                std::to_string(i));
    return z.coeffs[0];
}

FieldElem pick_twist(const FieldCtx& ctx3) {
    for (std::uint64_t v = 1; v < ctx3.size; ++v) {
        FieldElem c{std::uint32_t(v)};
        if (ctx3.rel_trace_to_mid(c) != ctx3.zero()) return c;
    }
    throw std::logic_error("relative trace vanished everywhere");
}

CycInt additive_char(FieldElem x, FieldElem twist, const FieldCtx& ctx3) {
    unsigned t = ctx3.abs_trace(ctx3.mul(twist, x));
    return cyc_root_power(ctx3.base.p, (long long)t);
}

} // namespace triality
