#pragma once

#include <cstdint>
#include <vector>

#include "triality/bigint.hpp"
#include "triality/field.hpp"

namespace triality {

// An element of Z[zeta_p] in the power basis 1, zeta, ..., zeta^{p-2}, with
// zeta^{p-1} eagerly rewritten as -(1 + zeta + ... + zeta^{p-2}). The basis is
// a Z-basis, so the representation is unique and the rational integers are
// exactly the vectors supported on the first coordinate.
struct CycInt {
    std::uint64_t p = 2;
    std::vector<BigInt> coeffs; // length p - 1

    friend bool operator==(const CycInt& a, const CycInt& b) {
        return a.p == b.p && a.coeffs == b.coeffs;
    }
};

CycInt cyc_zero(std::uint64_t p);
CycInt cyc_from_int(std::uint64_t p, const BigInt& n);

// zeta_p^(t mod p) in reduced basis form.
CycInt cyc_root_power(std::uint64_t p, long long t);

CycInt cyc_add(const CycInt& a, const CycInt& b);
CycInt cyc_mul(const CycInt& a, const CycInt& b);

// Sum over t in [0, p) of counts[t] * zeta_p^t. This is how a character sum
// becomes a single CycInt: the evaluator only tallies how often each trace
// residue occurs.
CycInt cyc_from_counts(std::uint64_t p, const std::vector<BigInt>& counts);

// Extracts n from n*1; throws NotRationalInteger if any coordinate beyond the
// first is nonzero, which would mean a character sum is not rational.
BigInt cyc_to_int(const CycInt& z);

// The enumeration-smallest c in F_{q^3} with rel_trace_to_mid(c) != 0. With
// this twist, phi'(x) := zeta_p^abs_trace(c*x) is an additive character of
// F_{q^3} that restricts nontrivially to the embedded F_q, because
// abs_trace(c*a) = Tr_{F_q/F_p}(a * rel_trace(c)) for a in F_q.
FieldElem pick_twist(const FieldCtx& ctx3);

// phi'(x) = zeta_p^abs_trace(twist * x).
CycInt additive_char(FieldElem x, FieldElem twist, const FieldCtx& ctx3);

} // namespace triality
