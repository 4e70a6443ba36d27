#include "anglerank/sturm.hpp"

#include <vector>

namespace anglerank {

namespace {

int sgn(const mpz_class& x) { return mpz_sgn(x.get_mpz_t()); }

// Divide out the (positive) content without touching the sign; the sign
// pattern of a Sturm chain is only stable under positive rescaling.
IntPoly content_reduced(const IntPoly& f) {
    if (f.is_zero()) return f;
    mpz_class c = f.content();
    std::vector<mpz_class> out = f.coeffs();
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    return IntPoly(std::move(out));
}

// Sturm chain of (f, f') with positive content rescaling at each step.
// The final element is a gcd of f and f' up to a positive constant, so the
// chain is valid for non-squarefree f as long as the evaluation points are
// not roots of f.
std::vector<IntPoly> sturm_chain(const IntPoly& f) {
    std::vector<IntPoly> chain;
    chain.push_back(content_reduced(f));
    IntPoly d = f.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(content_reduced(d));
    while (chain.back().degree() >= 1) {
        const IntPoly& a = chain[chain.size() - 2];
        const IntPoly& b = chain.back();
        int delta = a.degree() - b.degree();
        mpz_class mult;
        mpz_class lb = abs(b.leading());
        mpz_pow_ui(mult.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(delta) + 1);
        // remainder of mult*a by b; the quotient steps divide exactly
        std::vector<mpz_class> rem = a.scaled(mult).coeffs();
        const auto& bc = b.coeffs();
        for (int k = delta; k >= 0; --k) {
            mpz_class& top = rem[static_cast<size_t>(k + b.degree())];
            if (top == 0) continue;
            mpz_class qk;
            mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
            for (size_t j = 0; j < bc.size(); ++j)
                mpz_submul(rem[static_cast<size_t>(k) + j].get_mpz_t(), qk.get_mpz_t(), bc[j].get_mpz_t());
        }
        rem.resize(static_cast<size_t>(b.degree()));
        IntPoly r{std::move(rem)};
        if (r.is_zero()) break;
        chain.push_back(content_reduced(-r));
    }
    return chain;
}

int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

} // namespace

int sign_at_sqrt(const IntPoly& f, const mpz_class& m, int sign_root) {
    // f(x) = u(x^2) + x*v(x^2); value at sign_root*sqrt(m) is A + sign_root*sqrt(m)*B
    mpz_class a = 0, b = 0; // A = u(m), B = v(m), Horner over x^2
    int d = f.degree();
    for (int i = d - (d % 2); i >= 0; i -= 2) a = a * m + f.coeff(i);
    if (d >= 1)
        for (int i = d - ((d % 2) ? 0 : 1); i >= 1; i -= 2) b = b * m + f.coeff(i);
    int sa = sgn(a);
    int sb = sgn(b) * sign_root;
    if (m == 0 || sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    mpz_class lhs = a * a;
    mpz_class rhs = m * b * b;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
}

namespace {

// Strips all endpoint roots (+-sqrt(m)) from f; returns the number of
// distinct endpoints that were roots (0, 1 or 2).
int strip_endpoint_roots(IntPoly& f, const mpz_class& m) {
    int stripped = 0;
    mpz_class w = sqrt(m);
    if (w * w == m) {
        mpz_class minus_w = -w;
        for (const mpz_class& r : {w, minus_w}) {
            IntPoly lin{std::vector<mpz_class>{-r, 1}};
            IntPoly q;
            bool hit = false;
            while (try_divide_exact(f, lin, q)) {
                f = q;
                hit = true;
                if (f.degree() < 1) break;
            }
            if (hit) ++stripped;
            if (m == 0) break; // +0 and -0 coincide
        }
    } else {
        IntPoly quad{std::vector<mpz_class>{-m, 0, 1}};
        IntPoly q;
        bool hit = false;
        while (f.degree() >= 2 && try_divide_exact(f, quad, q)) {
            f = q;
            hit = true;
        }
        if (hit) stripped += 2;
    }
    return stripped;
}

} // namespace

long count_distinct_roots_in_sqrt_interval(const IntPoly& f, const mpz_class& m) {
    if (f.is_zero()) throw InvalidArgument("root counting on zero polynomial");
    if (m < 0) throw InvalidArgument("interval radius must be a nonnegative square root");
    IntPoly g = f;
    long count = strip_endpoint_roots(g, m);
    if (g.degree() < 1) return count;
    std::vector<IntPoly> chain = sturm_chain(g);
    std::vector<int> lo, hi;
    lo.reserve(chain.size());
    hi.reserve(chain.size());
    for (const auto& s : chain) {
        lo.push_back(sign_at_sqrt(s, m, -1));
        hi.push_back(sign_at_sqrt(s, m, +1));
    }
    count += variations(lo) - variations(hi);
    return count;
}

bool all_roots_real_in_sqrt_interval(const IntPoly& f, const mpz_class& m) {
    if (f.is_zero()) throw InvalidArgument("root location test on zero polynomial");
    if (m < 0) return false;
    IntPoly g = f;
    strip_endpoint_roots(g, m);
    if (g.degree() < 1) return true;
    std::vector<IntPoly> chain = sturm_chain(g);
    long total_distinct = g.degree() - chain.back().degree();
    std::vector<int> lo, hi;
    lo.reserve(chain.size());
    hi.reserve(chain.size());
    for (const auto& s : chain) {
        lo.push_back(sign_at_sqrt(s, m, -1));
        hi.push_back(sign_at_sqrt(s, m, +1));
    }
    return variations(lo) - variations(hi) == total_distinct;
}

} // namespace anglerank
