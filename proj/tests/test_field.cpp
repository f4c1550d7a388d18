#include "doctest.h"

#include <set>
#include <stdexcept>
#include <vector>

#include "triality/field.hpp"

using namespace triality;

namespace {

// The towers the appendix actually sums over, small enough for exhaustive
// property checks: (p, f) with q = p^f <= 8.
const std::vector<PrimePower> kSmallTowers = {
    PrimePower(2, 1), PrimePower(3, 1), PrimePower(2, 2),
    PrimePower(5, 1), PrimePower(7, 1), PrimePower(2, 3)};

} // namespace

TEST_CASE("prime powers parse and validate") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91)); // 7 * 13

    auto pp = parse_prime_power(8);
    REQUIRE(pp.has_value());
    CHECK(pp->p == 2);
    CHECK(pp->f == 3);
    CHECK(pp->q == 8);

    CHECK(parse_prime_power(49)->p == 7);
    CHECK(parse_prime_power(27)->f == 3);
    CHECK(parse_prime_power(2)->even());
    CHECK_FALSE(parse_prime_power(9)->even());

    CHECK_FALSE(parse_prime_power(1).has_value());
    CHECK_FALSE(parse_prime_power(6).has_value());
    CHECK_FALSE(parse_prime_power(12).has_value());
    CHECK_FALSE(parse_prime_power(0).has_value());

    CHECK_THROWS_AS(PrimePower(4, 3), std::invalid_argument);
    CHECK_THROWS_AS(PrimePower(1, 1), std::invalid_argument);
}

TEST_CASE("deterministic moduli match the first-in-enumeration irreducible") {
    // each vector is constant term first
    CHECK(build_field(PrimePower(2, 1), 3).modulus ==
          std::vector<std::uint32_t>{1, 1, 0, 1}); // x^3+x+1
    CHECK(build_field(PrimePower(2, 1), 1).modulus ==
          std::vector<std::uint32_t>{0, 1}); // x itself for the prime field
    CHECK(build_field(PrimePower(2, 2), 2).modulus ==
          std::vector<std::uint32_t>{1, 1, 1}); // x^2+x+1
    CHECK(build_field(PrimePower(2, 2), 6).modulus ==
          std::vector<std::uint32_t>{1, 1, 0, 0, 0, 0, 1}); // x^6+x+1
    CHECK(build_field(PrimePower(3, 1), 3).modulus ==
          std::vector<std::uint32_t>{1, 2, 0, 1}); // x^3+2x+1
    CHECK(build_field(PrimePower(5, 1), 3).modulus ==
          std::vector<std::uint32_t>{1, 1, 0, 1}); // x^3+x+1 over F_5

    SUBCASE("size cap refuses oversized fields") {
        CHECK_THROWS_AS(build_field(PrimePower(2, 1), 30, 1u << 24),
                        std::invalid_argument);
    }

    SUBCASE("two builds are identical, including the generator") {
        FieldCtx a = build_field(PrimePower(3, 1), 3);
        FieldCtx b = build_field(PrimePower(3, 1), 3);
        CHECK(a.modulus == b.modulus);
        CHECK(find_tau(a) == find_tau(b));
        for (std::uint64_t i = 1; i <= a.size; ++i)
            CHECK(a.element(i) == b.element(i));
    }
}

TEST_CASE("arithmetic in F_8 reduces by x^3+x+1") {
    FieldCtx f8 = build_field(PrimePower(2, 1), 3);
    FieldElem x{2};  // the class of x
    FieldElem x2{4}; // x^2
    CHECK(f8.mul(x, x2) == FieldElem{3}); // x^3 = x + 1
    CHECK(f8.pow(x, 3) == FieldElem{3});
    CHECK(f8.pow(x, 7) == f8.one());
    CHECK(f8.pow(x, -1) == f8.pow(x, 6));
    CHECK_THROWS_AS(f8.pow(f8.zero(), -1), std::domain_error);
}

TEST_CASE("field axioms hold exhaustively on the small towers") {
    for (const auto& pp : kSmallTowers) {
        for (unsigned m : {pp.f, 3 * pp.f}) {
            FieldCtx fx = build_field(pp, m);
            const std::uint32_t n = std::uint32_t(fx.size);
            for (std::uint32_t a = 0; a < n; ++a) {
                FieldElem ea{a};
                CHECK(fx.add(ea, fx.zero()) == ea);
                CHECK(fx.mul(ea, fx.one()) == ea);
                CHECK(fx.add(ea, fx.neg(ea)) == fx.zero());
                if (a != 0) {
                    CHECK(fx.pow(ea, (long long)fx.size - 1) == fx.one());
                    CHECK(fx.mul(ea, fx.pow(ea, -1)) == fx.one());
                }
            }
            // commutativity over all pairs
            for (std::uint32_t a = 0; a < n; ++a)
                for (std::uint32_t b = a; b < n; ++b) {
                    CHECK(fx.add({a}, {b}) == fx.add({b}, {a}));
                    CHECK(fx.mul({a}, {b}) == fx.mul({b}, {a}));
                }
        }
    }
}

TEST_CASE("associativity and distributivity via exhaustive triples") {
    // Tabulating both operations first makes the triple loops cheap enough
    // to run exhaustively even on the 512-element field.
    for (const auto& pp : kSmallTowers) {
        FieldCtx fx = build_field(pp, 3 * pp.f);
        const std::uint32_t n = std::uint32_t(fx.size);
        std::vector<std::uint32_t> mul(n * n), add(n * n);
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b) {
                mul[a * n + b] = fx.mul({a}, {b}).v;
                add[a * n + b] = fx.add({a}, {b}).v;
            }
        std::uint64_t bad = 0;
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                for (std::uint32_t c = 0; c < n; ++c) {
                    if (mul[mul[a * n + b] * n + c] !=
                        mul[a * n + mul[b * n + c]])
                        ++bad;
                    if (add[add[a * n + b] * n + c] !=
                        add[a * n + add[b * n + c]])
                        ++bad;
                    if (mul[a * n + add[b * n + c]] !=
                        add[mul[a * n + b] * n + mul[a * n + c]])
                        ++bad;
                }
        CHECK(bad == 0);
    }
}

TEST_CASE("absolute trace: values, linearity, surjectivity") {
    FieldCtx f8 = build_field(PrimePower(2, 1), 3);
    FieldCtx f27 = build_field(PrimePower(3, 1), 3);
    CHECK(f8.abs_trace(f8.zero()) == 0);
    CHECK(f8.abs_trace(f8.one()) == 1);  // 3 mod 2
    CHECK(f27.abs_trace(f27.one()) == 0); // 3 mod 3

    for (const auto& pp : kSmallTowers) {
        FieldCtx fx = build_field(pp, 3 * pp.f);
        const std::uint32_t n = std::uint32_t(fx.size);
        std::set<unsigned> attained;
        for (std::uint32_t a = 0; a < n; ++a) attained.insert(fx.abs_trace({a}));
        CHECK(attained.size() == pp.p); // surjective onto F_p
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b)
                CHECK(fx.abs_trace(fx.add({a}, {b})) ==
                      (fx.abs_trace({a}) + fx.abs_trace({b})) % pp.p);
    }
}

TEST_CASE("relative trace and subfield norm land in the fixed field") {
    FieldCtx f8 = build_field(PrimePower(2, 1), 3);
    FieldCtx f27 = build_field(PrimePower(3, 1), 3);
    CHECK(f8.rel_trace_to_mid(f8.zero()) == f8.zero());
    CHECK(f8.rel_trace_to_mid(f8.one()) == f8.one());   // 3 mod 2
    CHECK(f27.rel_trace_to_mid(f27.one()) == f27.zero()); // 3 mod 3

    for (const auto& pp : kSmallTowers) {
        FieldCtx f3 = build_field(pp, 3 * pp.f);
        CHECK(f3.subfield_norm(f3.zero()) == f3.zero());
        for (std::uint64_t v = 0; v < f3.size; ++v) {
            FieldElem nrm = f3.subfield_norm({std::uint32_t(v)});
            CHECK(f3.frobenius_q(nrm) == nrm);
            FieldElem rt = f3.rel_trace_to_mid({std::uint32_t(v)});
            CHECK(f3.frobenius_q(rt) == rt);
        }
        // multiplicativity, exhaustive on the smallest tower
        if (pp.q == 2)
            for (std::uint32_t a = 0; a < f3.size; ++a)
                for (std::uint32_t b = 0; b < f3.size; ++b)
                    CHECK(f3.subfield_norm(f3.mul({a}, {b})) ==
                          f3.mul(f3.subfield_norm({a}), f3.subfield_norm({b})));
    }
}

TEST_CASE("find_tau returns the enumeration-smallest generator") {
    FieldCtx f8 = build_field(PrimePower(2, 1), 3);
    CHECK(find_tau(f8) == FieldElem{2}); // the class of x, order 7

    FieldCtx f27 = build_field(PrimePower(3, 1), 3);
    CHECK(find_tau(f27) == FieldElem{3}); // the class of x

    FieldCtx f64 = build_field(PrimePower(2, 2), 6);
    CHECK(find_tau(f64) == FieldElem{2});

    FieldCtx f125 = build_field(PrimePower(5, 1), 3);
    CHECK(find_tau(f125) == FieldElem{9}); // x + 4

    SUBCASE("pi = tau^(q^2+q+1) matches the frozen values") {
        CHECK(f8.tau_pow(7) == FieldElem{1});   // q = 2: F_2^x is trivial
        CHECK(f27.tau_pow(13) == FieldElem{2}); // q = 3
        CHECK(f64.tau_pow(21) == FieldElem{59}); // q = 4
        CHECK(f125.tau_pow(31) == FieldElem{2}); // q = 5
    }

    SUBCASE("tau powers enumerate all nonzero elements exactly once") {
        for (const auto& pp : kSmallTowers) {
            FieldCtx f3 = build_field(pp, 3 * pp.f);
            FieldElem tau = find_tau(f3);
            std::set<std::uint32_t> seen;
            FieldElem cur = f3.one();
            for (std::uint64_t e = 0; e + 1 < f3.size; ++e) {
                CHECK(f3.tau_pow((long long)e) == cur);
                CHECK(f3.dlog(cur) == e);
                seen.insert(cur.v);
                cur = f3.mul(cur, tau);
            }
            CHECK(cur == f3.one());
            CHECK(seen.size() == f3.size - 1);
        }
    }

    SUBCASE("order criterion on tau") {
        FieldCtx f343 = build_field(PrimePower(7, 1), 3);
        FieldElem tau = find_tau(f343);
        // 342 = 2 * 3^2 * 19
        for (long long r : {2, 3, 19})
            CHECK(f343.pow(tau, 342 / r) != f343.one());
    }
}

TEST_CASE("the embedding is a ring homomorphism onto the Frobenius-fixed field") {
    for (const auto& pp : kSmallTowers) {
        FieldCtx fq = build_field(pp, pp.f);
        FieldCtx f3 = build_field(pp, 3 * pp.f);
        CHECK(embed(fq.zero(), fq, f3) == f3.zero());
        CHECK(embed(fq.one(), fq, f3) == f3.one());

        std::set<std::uint32_t> image;
        for (std::uint64_t a = 0; a < fq.size; ++a) {
            image.insert(embed({std::uint32_t(a)}, fq, f3).v);
            for (std::uint64_t b = 0; b < fq.size; ++b) {
                FieldElem ea{std::uint32_t(a)}, eb{std::uint32_t(b)};
                CHECK(embed(fq.add(ea, eb), fq, f3) ==
                      f3.add(embed(ea, fq, f3), embed(eb, fq, f3)));
                CHECK(embed(fq.mul(ea, eb), fq, f3) ==
                      f3.mul(embed(ea, fq, f3), embed(eb, fq, f3)));
            }
        }
        CHECK(image.size() == fq.size);

        // the image is exactly the fixed field of x -> x^q
        std::set<std::uint32_t> fixed;
        for (std::uint64_t v = 0; v < f3.size; ++v)
            if (f3.frobenius_q({std::uint32_t(v)}) == FieldElem{std::uint32_t(v)})
                fixed.insert(std::uint32_t(v));
        CHECK(fixed == image);

        // and the nonzero part is exactly the powers of pi
        FieldElem tau = find_tau(f3);
        FieldElem pi = f3.pow(tau, (long long)(pp.q * pp.q + pp.q + 1));
        std::set<std::uint32_t> pi_powers;
        FieldElem cur = f3.one();
        for (std::uint64_t r = 0; r + 1 < pp.q; ++r) {
            pi_powers.insert(cur.v);
            cur = f3.mul(cur, pi);
        }
        pi_powers.insert(cur.v);
        CHECK(cur == f3.one()); // pi has order q - 1
        std::set<std::uint32_t> image_nonzero = image;
        image_nonzero.erase(0);
        CHECK(pi_powers == image_nonzero);
    }
}

TEST_CASE("frobenius_q is a homomorphism") {
    for (const auto& pp : kSmallTowers) {
        FieldCtx f3 = build_field(pp, 3 * pp.f);
        for (std::uint32_t a = 0; a < f3.size; ++a)
            for (std::uint32_t b = 0; b < f3.size; ++b) {
                CHECK(f3.frobenius_q(f3.add({a}, {b})) ==
                      f3.add(f3.frobenius_q({a}), f3.frobenius_q({b})));
                CHECK(f3.frobenius_q(f3.mul({a}, {b})) ==
                      f3.mul(f3.frobenius_q({a}), f3.frobenius_q({b})));
            }
    }
}

TEST_CASE("element enumeration is 1-based with zero first") {
    FieldCtx f8 = build_field(PrimePower(2, 1), 3);
    CHECK(f8.element(1) == f8.zero());
    CHECK(f8.element(2) == f8.one());
    CHECK(f8.element(8) == FieldElem{7});
    CHECK(f8.index_of(FieldElem{7}) == 8);
    CHECK_THROWS_AS(f8.element(0), std::invalid_argument);
    CHECK_THROWS_AS(f8.element(9), std::invalid_argument);

    CHECK(f8.coeffs(FieldElem{5}) == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(f8.from_coeffs({1, 0, 1}) == FieldElem{5});
}
