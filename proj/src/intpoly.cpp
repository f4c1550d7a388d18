#include "triality/intpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace triality {

namespace {

void trim(std::vector<BigInt>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

int sign_of(const BigInt& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
int sign_of(const BigRat& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

BigInt rat_ceil(const BigRat& x) {
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x); // canonical, positive
    BigInt q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
}

// gcd of all coefficients, positive; zero polynomial has content 0
BigInt content(const IntPoly& a) {
    BigInt g = 0;
    for (const auto& c : a.coeffs) g = boost::multiprecision::gcd(g, c);
    return g;
}

// divide out the content; positive scaling only, so signs are preserved
IntPoly primitive(const IntPoly& a) {
    BigInt g = content(a);
    if (g == 0 || g == 1) return a;
    IntPoly out = a;
    for (auto& c : out.coeffs) c /= g;
    return out;
}

// Remainder of a mod b over the rationals, rescaled by a positive rational to
// a primitive integer polynomial. Positive scaling keeps every sign intact,
// which is what both the Euclid loop and the Sturm chain need.
IntPoly scaled_rem(const IntPoly& a, const IntPoly& b) {
    std::vector<BigRat> r(a.coeffs.begin(), a.coeffs.end());
    const int db = b.degree();
    const BigRat blead = BigRat(b.leading());
    while (true) {
        while (!r.empty() && r.back() == 0) r.pop_back();
        int dr = int(r.size()) - 1;
        if (dr < db) break;
        BigRat coef = r.back() / blead;
        for (int i = 0; i <= db; ++i)
            r[dr - db + i] -= coef * BigRat(b.coeffs[i]);
        r.pop_back();
    }
    BigInt lcm = 1;
    for (const auto& c : r)
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(c));
    std::vector<BigInt> ic;
    ic.reserve(r.size());
    for (const auto& c : r)
        ic.push_back(BigInt(boost::multiprecision::numerator(c) *
                            (lcm / boost::multiprecision::denominator(c))));
    trim(ic);
    return primitive(IntPoly(std::move(ic)));
}

// Exact division a / b in Z[x]; throws if the division is not exact.
IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    std::vector<BigRat> r(a.coeffs.begin(), a.coeffs.end());
    const int db = b.degree();
    const BigRat blead = BigRat(b.leading());
    std::vector<BigRat> quo(a.coeffs.size(), BigRat(0));
    while (true) {
        while (!r.empty() && r.back() == 0) r.pop_back();
        int dr = int(r.size()) - 1;
        if (dr < db) break;
        BigRat coef = r.back() / blead;
        quo[dr - db] = coef;
        for (int i = 0; i <= db; ++i)
            r[dr - db + i] -= coef * BigRat(b.coeffs[i]);
        r.pop_back();
    }
    if (!r.empty())
        throw std::logic_error("polynomial division left a remainder");
    std::vector<BigInt> out;
    out.reserve(quo.size());
    for (const auto& c : quo) {
        if (boost::multiprecision::denominator(c) != 1)
            throw std::logic_error("polynomial quotient is not integral");
        out.push_back(BigInt(boost::multiprecision::numerator(c)));
    }
    trim(out);
    return IntPoly(std::move(out));
}

std::vector<IntPoly> sturm_chain(const IntPoly& f) {
    std::vector<IntPoly> chain;
    chain.push_back(f);
    chain.push_back(primitive(poly_derivative(f)));
    while (chain.back().degree() > 0) {
        IntPoly r = scaled_rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        for (auto& c : r.coeffs) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_at_infinity(const IntPoly& a, bool plus) {
    if (a.is_zero()) return 0;
    int s = sign_of(a.leading());
    if (!plus && a.degree() % 2 != 0) s = -s;
    return s;
}

int variations(const std::vector<int>& signs) {
    int count = 0;
    int prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

int variations_at(const std::vector<IntPoly>& chain,
                  const std::optional<BigRat>& pt, bool plus_infinity) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& poly : chain)
        signs.push_back(pt ? sign_of(poly_eval(poly, *pt))
                           : sign_at_infinity(poly, plus_infinity));
    return variations(signs);
}

} // namespace

IntPoly::IntPoly(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(coeffs); }

IntPoly IntPoly::from_ll(std::initializer_list<long long> c) {
    std::vector<BigInt> v(c.begin(), c.end());
    return IntPoly(std::move(v));
}

IntPoly IntPoly::monomial(const BigInt& c, unsigned e) {
    if (c == 0) return {};
    std::vector<BigInt> v(e + 1, BigInt(0));
    v[e] = c;
    return IntPoly(std::move(v));
}

const BigInt& IntPoly::leading() const {
    if (is_zero()) throw std::invalid_argument("zero polynomial has no leading coefficient");
    return coeffs.back();
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> out(std::max(a.coeffs.size(), b.coeffs.size()), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) out[i] += b.coeffs[i];
    trim(out);
    return IntPoly(std::move(out));
}

IntPoly poly_sub(const IntPoly& a, const IntPoly& b) {
    std::vector<BigInt> out(std::max(a.coeffs.size(), b.coeffs.size()), BigInt(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) out[i] -= b.coeffs[i];
    trim(out);
    return IntPoly(std::move(out));
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs.size() + b.coeffs.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out[i + j] += a.coeffs[i] * b.coeffs[j];
    trim(out);
    return IntPoly(std::move(out));
}

BigRat poly_eval(const IntPoly& a, const BigRat& x) {
    BigRat acc = 0;
    for (auto it = a.coeffs.rbegin(); it != a.coeffs.rend(); ++it)
        acc = acc * x + BigRat(*it);
    return acc;
}

IntPoly poly_derivative(const IntPoly& a) {
    if (a.degree() <= 0) return {};
    std::vector<BigInt> out(a.coeffs.size() - 1);
    for (std::size_t i = 1; i < a.coeffs.size(); ++i)
        out[i - 1] = a.coeffs[i] * BigInt(i);
    trim(out);
    return IntPoly(std::move(out));
}

IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    IntPoly x = primitive(a);
    IntPoly y = primitive(b);
    while (!y.is_zero()) {
        if (y.degree() == 0) { x = y; break; }
        IntPoly r = scaled_rem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.is_zero() && x.leading() < 0)
        for (auto& c : x.coeffs) c = -c;
    return x;
}

IntPoly squarefree_part(const IntPoly& a) {
    if (a.is_zero()) throw std::invalid_argument("zero polynomial");
    if (a.degree() == 0) return primitive(a);
    IntPoly g = poly_gcd(a, poly_derivative(a));
    if (g.degree() == 0) return primitive(a);
    return primitive(divide_exact(a, g));
}

int sturm_count(const IntPoly& a, const std::optional<BigRat>& lo,
                const std::optional<BigRat>& hi) {
    if (a.is_zero()) throw std::invalid_argument("zero polynomial");
    if (lo && hi && *lo >= *hi) return 0;
    IntPoly f = squarefree_part(a);
    if (f.degree() <= 0) return 0;
    const auto chain = sturm_chain(f);
    return variations_at(chain, lo, false) - variations_at(chain, hi, true);
}

PositivityCertificate certify_positive_ge(const IntPoly& a, const BigRat& q0) {
    if (a.is_zero()) throw std::invalid_argument("zero polynomial");
    PositivityCertificate cert;
    cert.poly = a;
    cert.threshold = q0;
    const BigRat v0 = poly_eval(a, q0);
    cert.root_count = a.degree() <= 0 ? 0 : sturm_count(a, q0, std::nullopt);
    cert.certified = v0 > 0 && cert.root_count == 0;

    const BigInt start = rat_ceil(q0);
    std::optional<BigRat> bad;
    for (int t = 0; t <= 50; ++t) {
        BigRat x = BigRat(start + t);
        if (poly_eval(a, x) <= 0) { bad = x; break; }
    }
    if (cert.certified) {
        if (bad)
            throw std::logic_error("Sturm certificate contradicts direct "
                                   "evaluation at an integer sample");
        return cert;
    }

    if (v0 <= 0) { cert.witness = q0; return cert; }
    if (bad) { cert.witness = bad; return cert; }

    // a(q0) > 0 with a root somewhere beyond the sampled range. All real roots
    // lie inside the Cauchy bound, so scan integers up to it, then fall back
    // to Sturm-guided bisection toward a sign change. A root of even
    // multiplicity at an irrational point has no rational witness at all; in
    // that case the witness stays empty.
    BigRat maxc = 0;
    for (const auto& c : a.coeffs) {
        BigRat m = BigRat(c < 0 ? -c : c);
        if (m > maxc) maxc = m;
    }
    const BigRat bound = 1 + maxc / BigRat(boost::multiprecision::abs(a.leading()));
    BigInt stop = rat_ceil(bound) + 1;
    BigInt x = start + 51;
    for (int steps = 0; x <= stop && steps < 4096; ++x, ++steps) {
        if (poly_eval(a, BigRat(x)) <= 0) { cert.witness = BigRat(x); return cert; }
    }
    BigRat lo = q0;
    BigRat hi = BigRat(stop);
    if (sturm_count(a, lo, hi) < 1) return cert;
    for (int iter = 0; iter < 64; ++iter) {
        BigRat mid = (lo + hi) / 2;
        if (poly_eval(a, mid) <= 0) { cert.witness = mid; return cert; }
        if (sturm_count(a, lo, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return cert;
}

} // namespace triality
