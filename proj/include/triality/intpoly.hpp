#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triality/bigint.hpp"

namespace triality {

// Integer-coefficient polynomial in q, constant term first, trailing zeros
// stripped (the zero polynomial is the empty vector).
struct IntPoly {
    std::vector<BigInt> coeffs;

    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> c);

    static IntPoly from_ll(std::initializer_list<long long> c);
    // q^e with coefficient c.
    static IntPoly monomial(const BigInt& c, unsigned e);

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return int(coeffs.size()) - 1; } // -1 for zero
    const BigInt& leading() const;

    friend bool operator==(const IntPoly& a, const IntPoly& b) {
        return a.coeffs == b.coeffs;
    }
};

IntPoly poly_add(const IntPoly& a, const IntPoly& b);
IntPoly poly_sub(const IntPoly& a, const IntPoly& b);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
BigRat poly_eval(const IntPoly& a, const BigRat& x);
IntPoly poly_derivative(const IntPoly& a);

// Content-normalized gcd (primitive, positive leading coefficient).
IntPoly poly_gcd(const IntPoly& a, const IntPoly& b);

// a with repeated roots removed: a / gcd(a, a'), primitive.
IntPoly squarefree_part(const IntPoly& a);

// Number of distinct real roots in (lo, hi], by Sturm chain sign variations.
// hi may be omitted to mean +infinity; lo may be omitted to mean -infinity.
// Throws std::invalid_argument on the zero polynomial.
int sturm_count(const IntPoly& a, const std::optional<BigRat>& lo,
                const std::optional<BigRat>& hi);

struct PositivityCertificate {
    IntPoly poly;
    BigRat threshold;
    bool certified = false;
    // Real roots counted in (threshold, +infinity) on the squarefree part.
    int root_count = 0;
    // For a refuted certificate: a rational point >= threshold where the
    // polynomial is <= 0.
    std::optional<BigRat> witness;
};

// Certifies a(x) > 0 for all real x >= q0: requires a(q0) > 0 and zero real
// roots beyond q0. A certified result is cross-checked by evaluating at the
// 51 integers in [ceil(q0), ceil(q0)+50]; any nonpositive sample is an
// internal error. Throws std::invalid_argument on the zero polynomial.
PositivityCertificate certify_positive_ge(const IntPoly& a, const BigRat& q0);

} // namespace triality
