#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "triality/bigint.hpp"
#include "triality/field.hpp"
#include "triality/intpoly.hpp"

namespace triality {

// Subgroup families whose orders or degree bounds feed the elimination
// inequalities.
enum class GroupName {
    D4_3,             // the triality group itself
    G2,               // G_2(q)
    PGL3_PLUS,        // PGL_3(q)
    PGL3_MINUS,       // PGU_3(q)
    SL3,              // SL_3(q)
    SU3,              // SU_3(q)
    L2,               // L_2(q) = PSL_2(q)
    PARA_P,           // long-root maximal parabolic
    PARA_Q,           // the other maximal parabolic
    NORM_TORUS_PLUS,  // (Z_{q^2+q+1})^2.SL_2(3)
    NORM_TORUS_MINUS, // (Z_{q^2-q+1})^2.SL_2(3)
    TORUS_Z4,         // Z_{q^4-q^2+1}.4
};

const char* group_name_str(GroupName name);

BigInt group_order(GroupName name, std::uint64_t q);

// Largest complex irreducible degree, including the exceptional small-q rows.
// Defined for SL3, SU3 and L2 only.
BigInt mc_upper(GroupName name, std::uint64_t q);

// The global smallest-degree lower bound q^5 - q^3 + q - 1.
BigInt dl_lower(std::uint64_t q);
BigInt dl_lower_big(const BigInt& q);

// A polynomial inequality certified once for all real q >= threshold. Where
// the original comparison involved a square root or a rational factor, the
// note records how it was normalized into integer-polynomial form.
struct PolyClaim {
    std::string note;
    IntPoly diff; // must be > 0 for q >= threshold
    BigRat threshold;
};

// A discrete small-q fact checked by direct arithmetic.
struct FiniteRow {
    std::string note;
    bool ok = false;
};

struct NumericOutcome {
    bool ok = false;
    std::string witness;
};

// One named inequality or discrete check. Numeric mode evaluates the payload
// exactly at a given q; symbolic mode certifies the polynomial claims via
// Sturm chains and re-checks the finite rows.
struct LedgerCase {
    std::string id;
    std::string description;
    std::function<bool(const PrimePower&)> applicable;
    std::function<NumericOutcome(const PrimePower&)> numeric;
    std::vector<PolyClaim> symbolic_polys;
    std::vector<FiniteRow> finite_rows;
};

enum class VerdictStatus { Verified, Violated, Inapplicable };

const char* verdict_status_str(VerdictStatus status);

struct Verdict {
    std::string case_id;
    bool symbolic = false;
    std::optional<std::uint64_t> q; // present in numeric mode
    VerdictStatus status = VerdictStatus::Verified;
    std::string details;
};

const std::vector<LedgerCase>& ledger_cases();

// Throws std::invalid_argument for an unknown id; an out-of-range q yields an
// Inapplicable verdict, not an error.
Verdict check_case(const std::string& id, const PrimePower& q);
Verdict check_case_symbolic(const std::string& id);

// All prime powers in [2, q_max], ascending.
std::vector<PrimePower> prime_powers_upto(std::uint64_t q_max);

} // namespace triality
