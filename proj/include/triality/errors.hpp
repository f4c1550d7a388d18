#pragma once

#include <stdexcept>
#include <string>

namespace triality {

// A checked claim about a character sum failed. Distinct from usage errors
// (std::invalid_argument): a ClaimViolation means the computation finished and
// produced a value the verified claims forbid, so it must surface as a failed
// verification, never be swallowed.
struct ClaimViolation : std::runtime_error {
    explicit ClaimViolation(const std::string& what) : std::runtime_error(what) {}
};

// A cyclotomic integer that was expected to be rational has a nonzero
// coordinate beyond the constant one.
struct NotRationalInteger : ClaimViolation {
    explicit NotRationalInteger(const std::string& what) : ClaimViolation(what) {}
};

// y is not a multiple of q(q^3-1).
struct NotDivisible : ClaimViolation {
    explicit NotDivisible(const std::string& what) : ClaimViolation(what) {}
};

// m = y / (q(q^3-1)) falls outside the family's proven range.
struct OutOfRange : ClaimViolation {
    explicit OutOfRange(const std::string& what) : ClaimViolation(what) {}
};

// The scalar product with the unipotent restriction is not an integer.
struct NonIntegral : ClaimViolation {
    explicit NonIntegral(const std::string& what) : ClaimViolation(what) {}
};

// The scalar product is negative.
struct NegativeScalar : ClaimViolation {
    explicit NegativeScalar(const std::string& what) : ClaimViolation(what) {}
};

} // namespace triality
