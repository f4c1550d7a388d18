#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace triality {

// q = p^f with p prime. Parity throughout the toolkit is the parity of p.
struct PrimePower {
    std::uint64_t p = 0;
    unsigned f = 0;
    std::uint64_t q = 0;

    PrimePower() = default;
    PrimePower(std::uint64_t p_, unsigned f_); // validates primality of p

    bool even() const { return p == 2; }
};

bool is_prime(std::uint64_t n);

// Factors q as p^f; empty if q is not a prime power (q < 2 included).
std::optional<PrimePower> parse_prime_power(std::uint64_t q);

// An element of a FieldCtx. The value is the polynomial-basis coefficient
// vector read as a base-p integer (coefficient of x^i is digit i), which is
// also the enumeration order: index k corresponds to value k-1, so index 1 is
// the zero element.
struct FieldElem {
    std::uint32_t v = 0;

    friend bool operator==(FieldElem a, FieldElem b) { return a.v == b.v; }
    friend bool operator!=(FieldElem a, FieldElem b) { return a.v != b.v; }
    friend bool operator<(FieldElem a, FieldElem b) { return a.v < b.v; }
};

inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t(1) << 24;

// One member of the tower F_p < F_q < F_{q^3}: the field F_{p^m} with m = f
// or m = 3f. Immutable after construction except for the generator cache,
// which find_tau fills once during single-threaded setup.
class FieldCtx {
  public:
    PrimePower base;                    // the tower's q = p^f
    unsigned m = 0;                     // degree over F_p
    std::uint64_t size = 0;             // p^m
    std::vector<std::uint32_t> modulus; // monic, length m+1, constant first

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }

    // Enumeration: index is 1-based, index 1 is the zero element.
    FieldElem element(std::uint64_t index) const;
    std::uint64_t index_of(FieldElem a) const { return std::uint64_t(a.v) + 1; }

    std::vector<std::uint32_t> coeffs(FieldElem a) const;
    FieldElem from_coeffs(const std::vector<std::uint32_t>& c) const;

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const;
    FieldElem neg(FieldElem a) const;
    FieldElem mul(FieldElem a, FieldElem b) const;
    // Square-and-multiply; negative exponents are reduced mod p^m - 1 and
    // require a nonzero base (std::domain_error otherwise).
    FieldElem pow(FieldElem a, long long e) const;

    // a + a^p + ... + a^{p^{m-1}}, as a residue in [0, p).
    unsigned abs_trace(FieldElem a) const;

    // x -> x^q, the Frobenius whose fixed field is the embedded F_q.
    FieldElem frobenius_q(FieldElem a) const;

    // s + s^q + s^{q^2}; only meaningful on the top field (m = 3f). The result
    // is checked to be fixed by x -> x^q.
    FieldElem rel_trace_to_mid(FieldElem s) const;

    // s^{q^2+q+1}; maps F_{q^3}^x onto F_q^x. The result is checked to be
    // fixed by x -> x^q.
    FieldElem subfield_norm(FieldElem s) const;

    bool has_tau() const { return tau_found_; }
    FieldElem tau() const;
    // tau^e via the cached power table; e may be any integer (reduced mod
    // p^m - 1).
    FieldElem tau_pow(long long e) const;
    // Discrete log base tau of a nonzero element.
    std::uint32_t dlog(FieldElem a) const;

  private:
    std::uint64_t modmask_ = 0; // p = 2 only: modulus as a bit mask
    bool tau_found_ = false;
    FieldElem tau_{};
    std::vector<std::uint32_t> pow_table_; // tau^e for e in [0, p^m - 1)
    std::vector<std::uint32_t> log_table_; // inverse of pow_table_

    friend FieldElem find_tau(FieldCtx& ctx);
    friend FieldCtx build_field(const PrimePower& pp, unsigned m,
                                std::uint64_t size_cap);
};

// Constructs F_{p^m} with the deterministic modulus: the first monic
// irreducible of degree m over F_p when the coefficient vector (constant term
// first, each digit scanned 0..p-1) is read as a base-p counter. The choice is
// verified irreducible by exhaustive trial division after the search.
FieldCtx build_field(const PrimePower& pp, unsigned m,
                     std::uint64_t size_cap = kDefaultSizeCap);

// Returns the enumeration-smallest element of exact multiplicative order
// p^m - 1 and caches the discrete-log tables in ctx. Idempotent; the first
// call must happen before concurrent readers of ctx.
FieldElem find_tau(FieldCtx& ctx);

// The enumeration-smallest root of ctx_q's modulus inside ctx3. Every
// embedding below maps ctx_q's canonical generator to this root.
FieldElem find_embedding_root(const FieldCtx& ctx_q, const FieldCtx& ctx3);

FieldElem embed_with_root(FieldElem a, const FieldCtx& ctx_q,
                          const FieldCtx& ctx3, FieldElem root);

// The field embedding F_q -> F_{q^3} determined by the root above. Its image
// is exactly the fixed field of x -> x^q.
FieldElem embed(FieldElem a, const FieldCtx& ctx_q, const FieldCtx& ctx3);

} // namespace triality
