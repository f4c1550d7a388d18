#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "triality/cyclotomic.hpp"
#include "triality/errors.hpp"
#include "triality/field.hpp"

namespace triality {

// The three families of faithful-character values on the long-root element.
// Chi1819Odd covers two characters that share the displayed sum; they are
// never split apart here.
enum class CharFamily { Chi16Even, Chi1819Odd, Chi20Odd };

const char* family_name(CharFamily family); // "chi16", "chi18_19", "chi20"
std::optional<CharFamily> family_from_name(std::string_view name);

// Valid k range is 1..k_max: q for chi16 and chi18_19, q-1 for chi20.
unsigned family_k_max(CharFamily family, const PrimePower& q);
bool family_matches_parity(CharFamily family, const PrimePower& q);

struct CharSumSpec {
    PrimePower q;
    CharFamily family = CharFamily::Chi16Even;
    unsigned k = 1;
};

struct CharSumResult {
    CharSumSpec spec;
    long long y = 0;              // the exact sum value
    long long m = 0;              // y / (q(q^3-1))
    long long scalar_product = 0; // with the restricted unipotent character
    double float_estimate = 0.0;  // real part of the floating evaluation
    double float_imag = 0.0;      // imaginary part, must be near zero
};

// Everything the evaluators need, precomputed once per q: both fields, the
// generator tau, the character twist, the embedded x_1..x_q, and the
// exponent-indexed trace tables that turn each sum term into table lookups.
struct CharSumCtx {
    PrimePower pp;
    FieldCtx fq; // F_q
    FieldCtx f3; // F_{q^3}
    FieldElem tau;
    FieldElem twist;
    std::uint32_t n = 0;       // q^3 - 1, the order of tau
    std::uint32_t qm1 = 0;     // q - 1, the order of pi
    std::uint32_t a_even = 0;  // (-q^2+q+1) mod n
    std::uint32_t a_odd = 0;   // (-q^2-q+1) mod n
    std::uint32_t norm_exp = 0; // q^2+q+1

    // tt[g] = abs_trace(twist * tau^g), tp[r] = abs_trace(twist * pi^r).
    // Every term of every sum reduces to tt/tp lookups at incrementally
    // maintained indices.
    std::vector<std::uint8_t> tt;
    std::vector<std::uint8_t> tp;
    std::vector<FieldElem> x;      // embedded x_1..x_q; x[k-1], x[0] = 0
    std::vector<FieldElem> pi_pow; // pi^r for r in [0, q-1)
};

CharSumCtx make_charsum_ctx(const PrimePower& pp,
                            std::uint64_t size_cap = kDefaultSizeCap);

// Same context with an explicitly chosen generator and twist; validates that
// tau has exact order q^3-1 and that the twist has nonzero relative trace.
// Exists so tests can probe whether the y_k multiset depends on the choices.
CharSumCtx make_charsum_ctx_with(const PrimePower& pp, FieldElem tau,
                                 FieldElem twist,
                                 std::uint64_t size_cap = kDefaultSizeCap);

// Exact values of the three displayed triple sums. Negative power exponents
// are reduced modulo the element orders. The result passes through a CycInt
// and cyc_to_int, so a non-rational sum surfaces as NotRationalInteger.
long long eval_y_even(unsigned k, const CharSumCtx& cx, unsigned threads = 1);
long long eval_y_odd_1819(unsigned k, const CharSumCtx& cx,
                          unsigned threads = 1);
long long eval_y_odd_20(unsigned k, const CharSumCtx& cx, unsigned threads = 1);

long long eval_y(CharFamily family, unsigned k, const CharSumCtx& cx,
                 unsigned threads = 1);

// m = y / (q(q^3-1)), with the family range check:
//   chi16, chi20:  -(q^2-1)   <= m <= q^2(q-1)
//   chi18_19:     -(q^2-1)/2 <= m <= q^2(q-1)/2
// Throws NotDivisible / OutOfRange on a violated claim.
long long derive_m(long long y, const PrimePower& q, CharFamily family);

// The scalar product with the restricted unipotent character of degree
// q^7(q^4-q^2+1):
//   chi16, chi20: (q^6-q^4-q^3+q + y)  / (q(q^3-1))
//   chi18_19:     (q^6-q^4-q^3+q + 2y) / (2q(q^3-1))
// Throws NonIntegral / NegativeScalar on a violated claim.
long long scalar_product_eps2(long long y, const PrimePower& q,
                              CharFamily family);

// The same sum evaluated with complex exponentials exp(2*pi*i*t/p) and field
// arithmetic on element values (no exponent-domain tables), as an
// arithmetic-path-independent oracle. The imaginary part must be near zero.
std::complex<double> float_estimate(CharFamily family, unsigned k,
                                    const CharSumCtx& cx);

enum class RowStatus { Verified, Violated };

struct AppendixRow {
    CharSumResult result;
    RowStatus status = RowStatus::Verified;
    std::string message; // failure detail, or a note such as the k=1 identity
    long long elapsed_ms = 0;
};

struct AppendixReport {
    PrimePower q;
    std::vector<AppendixRow> rows;
    bool all_verified = true;
};

// Runs every family valid at this parity over its full k range: exact value,
// divisibility, range, scalar product, float cross-check, and for even q the
// closed form y_1 = q(q^3-1). Claim failures land in the report rows; only
// usage errors throw.
AppendixReport verify_appendix(const PrimePower& q, unsigned threads = 1,
                               std::uint64_t size_cap = kDefaultSizeCap);

} // namespace triality
