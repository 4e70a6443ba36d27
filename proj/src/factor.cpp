#include <algorithm>
#include <random>

#include "anglerank/exactpoly.hpp"

// Zassenhaus factorization over Z for degree <= 16: squarefree split,
// distinct/equal-degree factorization modulo a good odd prime, quadratic
// Hensel lifting past the Landau-Mignotte bound, subset recombination.

namespace anglerank {

namespace {

constexpr int kMaxFactorDegree = 16;

long next_prime(long p) {
    mpz_class x(p);
    mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
    return x.get_si();
}

// ----- arithmetic in F_p[x], p a small odd prime, dense vectors, constant first

using PolyP = std::vector<long>;

void trim_p(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg_p(const PolyP& f) { return static_cast<int>(f.size()) - 1; }

PolyP mul_p(const PolyP& a, const PolyP& b, long p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    trim_p(r);
    return r;
}

long inv_mod(long a, long p) {
    long t = 0, new_t = 1, r = p, new_r = a % p;
    if (new_r < 0) new_r += p;
    while (new_r != 0) {
        long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return t < 0 ? t + p : t;
}

PolyP monic_p(const PolyP& f, long p) {
    PolyP r = f;
    trim_p(r);
    if (r.empty()) return r;
    long inv = inv_mod(r.back(), p);
    for (auto& c : r) c = (c * inv) % p;
    return r;
}

// a mod b, b monic
PolyP rem_p(PolyP a, const PolyP& b, long p) {
    trim_p(a);
    int db = deg_p(b);
    while (deg_p(a) >= db) {
        long top = a.back() % p;
        int shift = deg_p(a) - db;
        if (top != 0) {
            for (int j = 0; j < db; ++j) {
                a[static_cast<size_t>(shift + j)] =
                    ((a[static_cast<size_t>(shift + j)] - top * b[static_cast<size_t>(j)]) % p + p) % p;
            }
        }
        a.pop_back();
        trim_p(a);
    }
    return a;
}

PolyP divexact_p(PolyP a, const PolyP& b, long p) {
    trim_p(a);
    int db = deg_p(b);
    long linv = inv_mod(b.back(), p);
    PolyP q(a.size() - static_cast<size_t>(db), 0);
    for (int k = deg_p(a) - db; k >= 0; --k) {
        long top = a[static_cast<size_t>(k + db)] % p;
        long qk = (top * linv) % p;
        q[static_cast<size_t>(k)] = qk;
        if (qk != 0) {
            for (int j = 0; j <= db; ++j) {
                a[static_cast<size_t>(k + j)] =
                    ((a[static_cast<size_t>(k + j)] - qk * b[static_cast<size_t>(j)]) % p + p) % p;
            }
        }
    }
    trim_p(q);
    return q;
}

PolyP gcd_p(PolyP a, PolyP b, long p) {
    trim_p(a);
    trim_p(b);
    while (!b.empty()) {
        PolyP r = rem_p(a, monic_p(b, p), p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic_p(a, p);
}

PolyP powmod_p(const PolyP& base, const mpz_class& e, const PolyP& mod, long p) {
    PolyP result{1};
    PolyP b = rem_p(base, mod, p);
    for (long i = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; i >= 0; --i) {
        result = rem_p(mul_p(result, result, p), mod, p);
        if (mpz_tstbit(e.get_mpz_t(), static_cast<unsigned long>(i)))
            result = rem_p(mul_p(result, b, p), mod, p);
    }
    return result;
}

PolyP derivative_p(const PolyP& f, long p) {
    if (f.size() <= 1) return {};
    PolyP r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = (f[i] * static_cast<long>(i)) % p;
    trim_p(r);
    return r;
}

// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product of
// degree-d irreducibles (p odd).
void equal_degree_split(const PolyP& f, int d, long p, std::mt19937_64& rng, std::vector<PolyP>& out) {
    if (deg_p(f) == d) {
        out.push_back(f);
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (true) {
        PolyP a(static_cast<size_t>(deg_p(f)), 0);
        for (auto& c : a) c = static_cast<long>(rng() % static_cast<unsigned long>(p));
        trim_p(a);
        if (deg_p(a) < 1) continue;
        PolyP t = powmod_p(a, e, f, p);
        if (t.empty()) t = {0};
        t[0] = ((t[0] - 1) % p + p) % p;
        trim_p(t);
        if (t.empty()) continue;
        PolyP g = gcd_p(t, f, p);
        if (deg_p(g) > 0 && deg_p(g) < deg_p(f)) {
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(divexact_p(f, g, p), d, p, rng, out);
            return;
        }
    }
}

// Full factorization of a monic squarefree f mod p (p odd).
std::vector<PolyP> factor_mod_p(const PolyP& f, long p) {
    std::vector<PolyP> out;
    std::mt19937_64 rng(0x5eed1234abcdULL);
    PolyP rest = f;
    PolyP w{0, 1}; // will track x^(p^d) mod rest
    int d = 0;
    while (deg_p(rest) >= 1) {
        ++d;
        if (2 * d > deg_p(rest)) {
            out.push_back(monic_p(rest, p));
            break;
        }
        w = rem_p(w, rest, p);
        w = powmod_p(w, mpz_class(p), rest, p);
        PolyP wmx = w;
        if (wmx.size() < 2) wmx.resize(2, 0);
        wmx[1] = ((wmx[1] - 1) % p + p) % p;
        trim_p(wmx);
        PolyP g = wmx.empty() ? rest : gcd_p(wmx, rest, p);
        if (deg_p(g) > 0) {
            equal_degree_split(g, d, p, rng, out);
            rest = divexact_p(rest, g, p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ----- Hensel lifting over Z/p^k with symmetric representatives

using PolyZ = std::vector<mpz_class>;

struct ZmodCtx {
    mpz_class m;
    mpz_class half;
    void set(const mpz_class& mod) {
        m = mod;
        half = m / 2;
    }
    mpz_class reduce(const mpz_class& x) const {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
        if (r > half) r -= m;
        return r;
    }
};

void trim_z(PolyZ& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyZ reduce_z(const PolyZ& f, const ZmodCtx& ctx) {
    PolyZ r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = ctx.reduce(f[i]);
    trim_z(r);
    return r;
}

PolyZ mul_z(const PolyZ& a, const PolyZ& b, const ZmodCtx& ctx) {
    if (a.empty() || b.empty()) return {};
    PolyZ r(a.size() + b.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return reduce_z(r, ctx);
}

PolyZ add_z(const PolyZ& a, const PolyZ& b, const ZmodCtx& ctx) {
    PolyZ r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return reduce_z(r, ctx);
}

PolyZ sub_z(const PolyZ& a, const PolyZ& b, const ZmodCtx& ctx) {
    PolyZ r(std::max(a.size(), b.size()), mpz_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return reduce_z(r, ctx);
}

// divrem by a monic divisor, coefficients reduced in Z/m
std::pair<PolyZ, PolyZ> divrem_z(PolyZ a, const PolyZ& b, const ZmodCtx& ctx) {
    trim_z(a);
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(a.size()) - 1 < db) return {{}, a};
    PolyZ q(a.size() - static_cast<size_t>(db), mpz_class(0));
    for (int k = static_cast<int>(a.size()) - 1 - db; k >= 0; --k) {
        mpz_class top = ctx.reduce(a[static_cast<size_t>(k + db)]);
        q[static_cast<size_t>(k)] = top;
        if (top != 0) {
            for (int j = 0; j <= db; ++j)
                a[static_cast<size_t>(k + j)] -= top * b[static_cast<size_t>(j)];
        }
    }
    a.resize(static_cast<size_t>(db));
    return {reduce_z(q, ctx), reduce_z(a, ctx)};
}

// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m)
// to the same congruences mod m^2; h stays monic.
void hensel_step(const PolyZ& f, PolyZ& g, PolyZ& h, PolyZ& s, PolyZ& t, const mpz_class& m) {
    ZmodCtx ctx;
    ctx.set(m * m);
    PolyZ e = sub_z(f, mul_z(g, h, ctx), ctx);
    auto qr = divrem_z(mul_z(s, e, ctx), h, ctx);
    PolyZ g1 = add_z(g, add_z(mul_z(t, e, ctx), mul_z(qr.first, g, ctx), ctx), ctx);
    PolyZ h1 = add_z(h, qr.second, ctx);
    PolyZ one{mpz_class(1)};
    PolyZ b = sub_z(add_z(mul_z(s, g1, ctx), mul_z(t, h1, ctx), ctx), one, ctx);
    auto cd = divrem_z(mul_z(s, b, ctx), h1, ctx);
    PolyZ s1 = sub_z(s, cd.second, ctx);
    PolyZ t1 = sub_z(t, add_z(mul_z(t, b, ctx), mul_z(cd.first, g1, ctx), ctx), ctx);
    g = std::move(g1);
    h = std::move(h1);
    s = std::move(s1);
    t = std::move(t1);
}

// Extended Euclid in F_p[x]: s*a + t*b = 1 for coprime a, b.
void bezout_p(const PolyP& a, const PolyP& b, long p, PolyP& s, PolyP& t) {
    PolyP r0 = a, r1 = b;
    PolyP s0{1}, s1{}, t0{}, t1{1};
    trim_p(r0);
    trim_p(r1);
    while (!r1.empty()) {
        PolyP q(static_cast<size_t>(std::max(0, deg_p(r0) - deg_p(r1))) + 1, 0);
        PolyP rem = r0;
        long linv = inv_mod(r1.back(), p);
        for (int k = deg_p(rem) - deg_p(r1); k >= 0; --k) {
            long top = rem[static_cast<size_t>(k + deg_p(r1))] % p;
            long qk = (top * linv) % p;
            q[static_cast<size_t>(k)] = qk;
            if (qk != 0)
                for (int j = 0; j <= deg_p(r1); ++j)
                    rem[static_cast<size_t>(k + j)] =
                        ((rem[static_cast<size_t>(k + j)] - qk * r1[static_cast<size_t>(j)]) % p + p) % p;
        }
        rem.resize(static_cast<size_t>(std::max(deg_p(r1), 0)));
        trim_p(rem);
        trim_p(q);
        PolyP s2 = s0, t2 = t0;
        PolyP qs = mul_p(q, s1, p), qt = mul_p(q, t1, p);
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (size_t i = 0; i < qs.size(); ++i) s2[i] = ((s2[i] - qs[i]) % p + p) % p;
        t2.resize(std::max(t2.size(), qt.size()), 0);
        for (size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p + p) % p;
        trim_p(s2);
        trim_p(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    long u = inv_mod(r0[0], p);
    for (auto& c : s0) c = (c * u) % p;
    for (auto& c : t0) c = (c * u) % p;
    s = s0;
    t = t0;
}

PolyZ to_z(const PolyP& f) {
    PolyZ r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = f[i];
    return r;
}

PolyZ to_z(const IntPoly& f) { return PolyZ(f.coeffs().begin(), f.coeffs().end()); }

// Lift the factorization f = prod(factors) from mod p to mod p^(2^steps),
// splitting the factor list in halves.
void hensel_tree(const PolyZ& f, const std::vector<PolyP>& factors, size_t lo, size_t hi, long p,
                 int steps, std::vector<PolyZ>& out) {
    if (hi - lo == 1) {
        ZmodCtx ctx;
        mpz_class m(p);
        for (int i = 0; i < steps; ++i) m *= m;
        ctx.set(m);
        out.push_back(reduce_z(f, ctx));
        return;
    }
    size_t mid = lo + (hi - lo) / 2;
    PolyP gp{1}, hp{1};
    for (size_t i = lo; i < mid; ++i) gp = mul_p(gp, factors[i], p);
    for (size_t i = mid; i < hi; ++i) hp = mul_p(hp, factors[i], p);
    PolyP sp, tp;
    bezout_p(gp, hp, p, sp, tp);
    PolyZ g = to_z(gp), h = to_z(hp), s = to_z(sp), t = to_z(tp);
    mpz_class m(p);
    for (int i = 0; i < steps; ++i) {
        hensel_step(f, g, h, s, t, m);
        m *= m;
    }
    hensel_tree(g, factors, lo, mid, p, steps, out);
    hensel_tree(h, factors, mid, hi, p, steps, out);
}

// Landau-Mignotte style bound on the coefficients of any monic factor.
mpz_class factor_coeff_bound(const IntPoly& f) {
    mpz_class norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    mpz_class b = sqrt(norm2) + 1;
    mpz_class two_n;
    mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(f.degree() + 1));
    return two_n * b;
}

// Zassenhaus on a monic squarefree polynomial with integer coefficients.
std::vector<IntPoly> factor_monic_squarefree(const IntPoly& f) {
    if (f.degree() == 1) return {f};
    long best_p = 0;
    std::vector<PolyP> best_factors;
    int tried = 0;
    for (long p = 3; tried < 4 && p < 2000; p = next_prime(p)) {
        PolyP fp(f.coeffs().size());
        for (size_t i = 0; i < fp.size(); ++i) {
            mpz_class r = f.coeffs()[i] % p;
            long v = r.get_si();
            fp[i] = v < 0 ? v + p : v;
        }
        trim_p(fp);
        PolyP g = gcd_p(fp, derivative_p(fp, p), p);
        if (deg_p(g) != 0) continue; // not squarefree mod p
        std::vector<PolyP> fac = factor_mod_p(fp, p);
        ++tried;
        if (best_p == 0 || fac.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(fac);
        }
        if (best_factors.size() == 1) break;
    }
    if (best_p == 0) throw Unsupported("no suitable factorization prime found");
    if (best_factors.size() == 1) return {f};

    mpz_class bound = 2 * factor_coeff_bound(f);
    int steps = 0;
    {
        mpz_class m(best_p);
        while (m <= bound) {
            m *= m;
            ++steps;
        }
    }
    std::vector<PolyZ> pool;
    hensel_tree(to_z(f), best_factors, 0, best_factors.size(), best_p, steps, pool);

    ZmodCtx ctx;
    {
        mpz_class m(best_p);
        for (int i = 0; i < steps; ++i) m *= m;
        ctx.set(m);
    }

    // subset recombination, smallest subsets first
    std::vector<IntPoly> out;
    IntPoly rest = f;
    size_t subset_size = 1;
    while (2 * subset_size <= pool.size()) {
        bool extracted = false;
        std::vector<size_t> idx(subset_size);
        for (size_t i = 0; i < subset_size; ++i) idx[i] = i;
        while (!extracted) {
            PolyZ prod{mpz_class(1)};
            for (size_t i : idx) prod = mul_z(prod, pool[i], ctx);
            IntPoly cand{std::vector<mpz_class>(prod.begin(), prod.end())};
            IntPoly q;
            if (try_divide_exact(rest, cand, q)) {
                out.push_back(cand);
                rest = q;
                std::vector<PolyZ> np;
                for (size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(std::move(pool[i]));
                pool = std::move(np);
                extracted = true;
                break;
            }
            // advance to the next index combination
            size_t i = subset_size;
            bool advanced = false;
            while (i-- > 0) {
                if (idx[i] != i + pool.size() - subset_size) {
                    ++idx[i];
                    for (size_t j = i + 1; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
        if (!extracted) ++subset_size;
    }
    if (rest.degree() > 0) out.push_back(rest);
    return out;
}

} // namespace

IntFactorization factor_over_integers(const IntPoly& f) {
    if (f.is_zero()) throw InvalidArgument("factorization of zero polynomial");
    if (f.degree() > kMaxFactorDegree) throw Unsupported("factorization degree above supported range");
    IntFactorization out;
    out.content = f.content();
    if (!f.is_zero() && f.leading() < 0) out.content = -out.content;
    if (f.degree() == 0) return out;

    for (const auto& [sq, mult] : squarefree_decomposition(f)) {
        IntPoly g = sq;
        std::vector<IntPoly> irr;
        if (g.is_monic()) {
            irr = factor_monic_squarefree(g);
        } else {
            // factor the monic polynomial with roots lc*x instead
            mpz_class l = g.leading();
            int d = g.degree();
            std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
            c[static_cast<size_t>(d)] = 1;
            mpz_class pw = 1; // l^(d-1-i)
            for (int i = d - 1; i >= 0; --i) {
                c[static_cast<size_t>(i)] = g.coeff(i) * pw;
                pw *= l;
            }
            IntPoly monic_form{std::move(c)};
            for (const IntPoly& h : factor_monic_squarefree(monic_form)) {
                irr.push_back(h.subst_scaled_variable(l).primitive_part());
            }
        }
        for (const auto& h : irr) out.factors.emplace_back(h.primitive_part(), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

bool is_irreducible(const IntPoly& f) {
    if (f.degree() < 1) return false;
    IntFactorization fac = factor_over_integers(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1 &&
           fac.factors[0].first.degree() == f.degree();
}

} // namespace anglerank
