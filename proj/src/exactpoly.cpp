#include "anglerank/exactpoly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace anglerank {

PowerSums power_sums(const RatPoly& f, int count) {
    if (!f.is_monic()) throw InvalidArgument("power sums require a monic polynomial");
    int d = f.degree();
    PowerSums ps;
    ps.values.assign(static_cast<size_t>(count), mpq_class(0));
    for (int k = 1; k <= count; ++k) {
        mpq_class acc = 0;
        if (k <= d) acc = -mpq_class(k) * f.coeff(d - k);
        for (int i = 1; i < k && i <= d; ++i) acc -= f.coeff(d - i) * ps.values[static_cast<size_t>(k - i - 1)];
        acc.canonicalize();
        ps.values[static_cast<size_t>(k - 1)] = acc;
    }
    return ps;
}

std::vector<mpz_class> power_sums_int(const IntPoly& f, int count) {
    if (!f.is_monic()) throw InvalidArgument("power sums require a monic polynomial");
    int d = f.degree();
    std::vector<mpz_class> ps(static_cast<size_t>(count), mpz_class(0));
    for (int k = 1; k <= count; ++k) {
        mpz_class acc = 0;
        if (k <= d) acc = mpz_class(-k) * f.coeff(d - k);
        for (int i = 1; i < k && i <= d; ++i)
            mpz_submul(acc.get_mpz_t(), f.coeff(d - i).get_mpz_t(), ps[static_cast<size_t>(k - i - 1)].get_mpz_t());
        ps[static_cast<size_t>(k - 1)] = acc;
    }
    return ps;
}

RatPoly coeffs_from_power_sums(const PowerSums& ps, int degree) {
    if (degree < 0) throw InvalidArgument("negative degree");
    if (ps.count() < degree) throw InvalidArgument("not enough power sums");
    // e_k = (1/k) * sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    std::vector<mpq_class> e(static_cast<size_t>(degree) + 1);
    e[0] = 1;
    for (int k = 1; k <= degree; ++k) {
        mpq_class acc = 0;
        for (int i = 1; i <= k; ++i) {
            mpq_class term = e[static_cast<size_t>(k - i)] * ps.values[static_cast<size_t>(i - 1)];
            if (i % 2 == 0) acc -= term;
            else acc += term;
        }
        acc /= k;
        acc.canonicalize();
        e[static_cast<size_t>(k)] = acc;
    }
    std::vector<mpq_class> c(static_cast<size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) {
        c[static_cast<size_t>(degree - k)] = (k % 2 == 0) ? e[static_cast<size_t>(k)] : -e[static_cast<size_t>(k)];
    }
    return RatPoly(std::move(c));
}

IntPoly coeffs_from_power_sums_int(const std::vector<mpz_class>& ps, int degree) {
    if (degree < 0) throw InvalidArgument("negative degree");
    if (static_cast<int>(ps.size()) < degree) throw InvalidArgument("not enough power sums");
    std::vector<mpz_class> e(static_cast<size_t>(degree) + 1);
    e[0] = 1;
    mpz_class acc, r;
    for (int k = 1; k <= degree; ++k) {
        acc = 0;
        for (int i = 1; i <= k; ++i) {
            if (i % 2 == 0)
                mpz_submul(acc.get_mpz_t(), e[static_cast<size_t>(k - i)].get_mpz_t(), ps[static_cast<size_t>(i - 1)].get_mpz_t());
            else
                mpz_addmul(acc.get_mpz_t(), e[static_cast<size_t>(k - i)].get_mpz_t(), ps[static_cast<size_t>(i - 1)].get_mpz_t());
        }
        mpz_fdiv_qr_ui(e[static_cast<size_t>(k)].get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(k));
        if (r != 0) throw InvalidArgument("power sums do not come from an integer polynomial");
    }
    std::vector<mpz_class> c(static_cast<size_t>(degree) + 1);
    for (int k = 0; k <= degree; ++k) {
        c[static_cast<size_t>(degree - k)] = (k % 2 == 0) ? e[static_cast<size_t>(k)] : -e[static_cast<size_t>(k)];
    }
    return IntPoly(std::move(c));
}

RatPoly composed_product(const RatPoly& f, const RatPoly& g) {
    if (f.is_zero() || g.is_zero()) throw InvalidArgument("composed product of zero polynomial");
    if (!f.is_monic() || !g.is_monic()) throw InvalidArgument("composed product requires monic inputs");
    if (f.degree() < 1 || g.degree() < 1) throw InvalidArgument("composed product requires positive degree");
    int n = f.degree() * g.degree();
    PowerSums pf = power_sums(f, n);
    PowerSums pg = power_sums(g, n);
    PowerSums ph;
    ph.values.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        ph.values[static_cast<size_t>(k)] = pf.values[static_cast<size_t>(k)] * pg.values[static_cast<size_t>(k)];
        ph.values[static_cast<size_t>(k)].canonicalize();
    }
    return coeffs_from_power_sums(ph, n);
}

RatPoly power_map(const RatPoly& f, long e) {
    if (f.is_zero()) throw InvalidArgument("power map of zero polynomial");
    if (!f.is_monic()) throw InvalidArgument("power map requires a monic polynomial");
    if (e <= 0) throw InvalidArgument("power map exponent must be positive");
    int d = f.degree();
    PowerSums pf = power_sums(f, d * static_cast<int>(e));
    PowerSums ph;
    ph.values.resize(static_cast<size_t>(d));
    for (int k = 1; k <= d; ++k) ph.values[static_cast<size_t>(k - 1)] = pf.values[static_cast<size_t>(k * e - 1)];
    return coeffs_from_power_sums(ph, d);
}

IntPoly power_map_int(const IntPoly& f, long e) {
    if (f.is_zero()) throw InvalidArgument("power map of zero polynomial");
    if (!f.is_monic()) throw InvalidArgument("power map requires a monic polynomial");
    if (e <= 0) throw InvalidArgument("power map exponent must be positive");
    int d = f.degree();
    std::vector<mpz_class> pf = power_sums_int(f, d * static_cast<int>(e));
    std::vector<mpz_class> ph(static_cast<size_t>(d));
    for (int k = 1; k <= d; ++k) ph[static_cast<size_t>(k - 1)] = pf[static_cast<size_t>(k * e - 1)];
    return coeffs_from_power_sums_int(ph, d);
}

// ---------------------------------------------------------------------------
// Cyclotomic machinery

std::vector<unsigned long> cyclotomic_index_candidates(long max_phi) {
    if (max_phi < 1) return {};
    // n/phi(n) < 6 up to the primorial of 43 (~1.3e16), so phi(n) <= B
    // forces n <= 6B within any range we can enumerate.
    unsigned long limit = static_cast<unsigned long>(6 * max_phi + 64);
    std::vector<unsigned long> phi(limit + 1);
    for (unsigned long i = 0; i <= limit; ++i) phi[i] = i;
    for (unsigned long i = 2; i <= limit; ++i) {
        if (phi[i] == i) { // prime
            for (unsigned long j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
        }
    }
    std::vector<unsigned long> out;
    for (unsigned long n = 1; n <= limit; ++n)
        if (phi[n] <= static_cast<unsigned long>(max_phi)) out.push_back(n);
    return out;
}

namespace {

unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<unsigned long> squarefree_divisor_signs(unsigned long n, std::vector<long>& mu) {
    // Squarefree divisors of n with their Moebius values.
    std::vector<unsigned long> primes;
    unsigned long m = n;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) primes.push_back(m);
    std::vector<unsigned long> divs;
    size_t k = primes.size();
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        unsigned long d = 1;
        int bits = 0;
        for (size_t i = 0; i < k; ++i) {
            if (mask & (size_t{1} << i)) {
                d *= primes[i];
                ++bits;
            }
        }
        divs.push_back(d);
        mu.push_back(bits % 2 == 0 ? 1 : -1);
    }
    return divs;
}

// Multiply f by (x^e - 1) in place.
void mul_binomial(std::vector<mpz_class>& f, unsigned long e) {
    size_t old = f.size();
    f.resize(old + e, mpz_class(0));
    for (size_t i = old; i-- > 0;) {
        f[i + e] += f[i];
        f[i] = -f[i];
    }
}

// Divide f by (x^e - 1) in place (exact).
void div_binomial(std::vector<mpz_class>& f, unsigned long e) {
    // quotient q satisfies f = q*(x^e - 1); q_i = -(f_i + q_{i-e}) read upward
    // Work top-down instead: q_{i} = f_{i+e} + q_{i+e}.
    size_t n = f.size();
    std::vector<mpz_class> q(n - e, mpz_class(0));
    for (size_t i = n - e; i-- > 0;) {
        q[i] = f[i + e];
        if (i + e < q.size()) q[i] += q[i + e];
    }
    f = std::move(q);
}

} // namespace

IntPoly cyclotomic_poly(unsigned long n) {
    if (n == 0) throw InvalidArgument("cyclotomic index must be positive");
    static std::mutex cache_mutex;
    static std::map<unsigned long, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // Phi_n(x) = prod_{d squarefree, d | n} (x^{n/d} - 1)^{mu(d)}
    std::vector<long> mu;
    std::vector<unsigned long> divs = squarefree_divisor_signs(n, mu);
    std::vector<mpz_class> f{1};
    for (size_t i = 0; i < divs.size(); ++i)
        if (mu[i] == 1) mul_binomial(f, n / divs[i]);
    for (size_t i = 0; i < divs.size(); ++i)
        if (mu[i] == -1) div_binomial(f, n / divs[i]);
    IntPoly result{std::vector<mpz_class>(f.begin(), f.end())};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        if (cache.size() < 4096) cache.emplace(n, result);
    }
    return result;
}

IntPoly scaled_cyclotomic_poly(unsigned long n, const mpz_class& s) {
    IntPoly phi = cyclotomic_poly(n);
    int d = phi.degree();
    std::vector<mpz_class> c(static_cast<size_t>(d) + 1);
    mpz_class pw = 1;
    for (int i = d; i >= 0; --i) { // coeff_i gets s^(d-i)
        c[static_cast<size_t>(i)] = phi.coeff(i) * pw;
        pw *= s;
    }
    return IntPoly(std::move(c));
}

namespace {

// Phi_n(a/s) * s^phi(n) as an integer, via prod (a^d - s^d)^{mu(n/d)}.
mpz_class scaled_cyclotomic_value(unsigned long n, const mpz_class& a, const mpz_class& s) {
    std::vector<long> mu;
    std::vector<unsigned long> divs = squarefree_divisor_signs(n, mu);
    mpz_class num = 1, den = 1, ad, sd, t;
    for (size_t i = 0; i < divs.size(); ++i) {
        unsigned long e = n / divs[i];
        mpz_pow_ui(ad.get_mpz_t(), a.get_mpz_t(), e);
        mpz_pow_ui(sd.get_mpz_t(), s.get_mpz_t(), e);
        t = ad - sd;
        if (mu[i] == 1) num *= t;
        else den *= t;
    }
    mpz_class out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

struct ModImage {
    unsigned long p;
    std::vector<unsigned long> coeffs; // constant first
};

unsigned long mod_reduce(const mpz_class& x, unsigned long p) {
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), x.get_mpz_t(), p);
    return r.get_ui();
}

ModImage poly_mod(const IntPoly& f, unsigned long p) {
    ModImage m;
    m.p = p;
    m.coeffs.resize(static_cast<size_t>(f.degree()) + 1);
    for (int i = 0; i <= f.degree(); ++i) m.coeffs[static_cast<size_t>(i)] = mod_reduce(f.coeff(i), p);
    return m;
}

unsigned long mulmod_u(unsigned long a, unsigned long b, unsigned long p) {
    return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % p);
}

// Remainder of a by monic b, both mod p; true if remainder is zero.
bool divides_mod(const ModImage& a, const ModImage& b) {
    unsigned long p = a.p;
    std::vector<unsigned long> rem = a.coeffs;
    size_t db = b.coeffs.size() - 1;
    if (rem.size() - 1 < db) return false;
    for (size_t k = rem.size() - db; k-- > 0;) {
        unsigned long top = rem[k + db];
        if (top == 0) continue;
        rem[k + db] = 0;
        for (size_t j = 0; j < db; ++j) {
            unsigned long t = mulmod_u(top, b.coeffs[j], p);
            rem[k + j] = (rem[k + j] + p - t) % p;
        }
    }
    for (size_t j = 0; j < db; ++j)
        if (rem[j] != 0) return false;
    return true;
}

unsigned long next_prime_above(unsigned long n) {
    mpz_class x = n;
    mpz_nextprime(x.get_mpz_t(), x.get_mpz_t());
    return x.get_ui();
}

} // namespace

CyclotomicSplit cyclotomic_split_scaled(const IntPoly& f, const mpz_class& s) {
    if (f.is_zero()) throw InvalidArgument("cyclotomic part of zero polynomial");
    if (s <= 0) throw InvalidArgument("scale must be positive");
    CyclotomicSplit out;
    out.cyclotomic = IntPoly::one();
    out.rest = f;
    if (f.degree() < 1) return out;
    long maxdeg = f.degree();

    std::vector<unsigned long> candidates = cyclotomic_index_candidates(maxdeg);

    // Divisibility screen at two points: if g | rest in Z[T] then g(a) | rest(a).
    mpz_class a2 = 2 * s, a3 = 3 * s;
    mpz_class v2 = out.rest.eval(a2);
    mpz_class v3 = out.rest.eval(a3);

    // Modular prefilter at three primes above the degree.
    unsigned long p0 = next_prime_above(static_cast<unsigned long>(maxdeg));
    unsigned long p1 = next_prime_above(p0);
    unsigned long p2 = next_prime_above(p1);
    std::vector<unsigned long> primes{p0, p1, p2};
    std::vector<ModImage> images;
    for (unsigned long p : primes) images.push_back(poly_mod(out.rest, p));

    mpz_class q_, r_;
    for (unsigned long n : candidates) {
        unsigned long phi = euler_phi(n);
        if (static_cast<long>(phi) > out.rest.degree()) continue;
        // screen values a = 2s, 3s
        mpz_class g2 = scaled_cyclotomic_value(n, a2, s);
        mpz_class g3 = scaled_cyclotomic_value(n, a3, s);
        if (v2 != 0 && g2 != 0 && !mpz_divisible_p(v2.get_mpz_t(), g2.get_mpz_t())) continue;
        if (v3 != 0 && g3 != 0 && !mpz_divisible_p(v3.get_mpz_t(), g3.get_mpz_t())) continue;

        IntPoly factor = scaled_cyclotomic_poly(n, s);
        bool mod_ok = true;
        for (const auto& img : images) {
            if (!divides_mod(img, poly_mod(factor, img.p))) {
                mod_ok = false;
                break;
            }
        }
        if (!mod_ok) continue;

        int mult = 0;
        IntPoly quotient;
        while (try_divide_exact(out.rest, factor, quotient)) {
            out.rest = quotient;
            ++mult;
            if (v2 != 0) mpz_divexact(v2.get_mpz_t(), v2.get_mpz_t(), g2.get_mpz_t());
            if (v3 != 0) mpz_divexact(v3.get_mpz_t(), v3.get_mpz_t(), g3.get_mpz_t());
            if (out.rest.degree() < static_cast<int>(phi)) break;
        }
        if (mult > 0) {
            out.factors.push_back({n, mult});
            out.degree += static_cast<long>(phi) * mult;
            for (int i = 0; i < mult; ++i) out.cyclotomic = out.cyclotomic * factor;
            for (auto& img : images) img = poly_mod(out.rest, img.p);
            if (out.rest.degree() < 1) break;
        }
    }
    return out;
}

IntPoly cyclotomic_part(const IntPoly& f) {
    if (f.is_zero()) throw InvalidArgument("cyclotomic part of zero polynomial");
    return cyclotomic_split_scaled(f, 1).cyclotomic;
}

} // namespace anglerank
