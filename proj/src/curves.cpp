#include "anglerank/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "anglerank/exactpoly.hpp"

namespace anglerank {

namespace {

// ----- tiny F_p[x] helpers for validity checks (coefficients 0..p-1)

using PolyFp = std::vector<int>;

void trim_fp(PolyFp& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyFp reduce_fp(const IntPoly& f, int p) {
    PolyFp out(f.coeffs().size());
    for (size_t i = 0; i < out.size(); ++i) {
        mpz_class r = f.coeffs()[i] % p;
        long v = r.get_si();
        out[i] = static_cast<int>(v < 0 ? v + p : v);
    }
    trim_fp(out);
    return out;
}

PolyFp derivative_fp(const PolyFp& f, int p) {
    if (f.size() <= 1) return {};
    PolyFp r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = static_cast<int>((static_cast<long>(f[i]) * (i % p)) % p);
    trim_fp(r);
    return r;
}

PolyFp mul_fp(const PolyFp& a, const PolyFp& b, int p) {
    if (a.empty() || b.empty()) return {};
    PolyFp r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + static_cast<long>(a[i]) * b[j]) % p);
    trim_fp(r);
    return r;
}

int inv_fp(int a, int p) {
    int t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        int q = r / nr;
        int tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return t < 0 ? t + p : t;
}

PolyFp rem_fp(PolyFp a, const PolyFp& b, int p) {
    trim_fp(a);
    int db = static_cast<int>(b.size()) - 1;
    int linv = inv_fp(b.back(), p);
    while (static_cast<int>(a.size()) - 1 >= db) {
        int top = a.back();
        if (top != 0) {
            int c = static_cast<int>((static_cast<long>(top) * linv) % p);
            size_t shift = a.size() - b.size();
            for (size_t j = 0; j + 1 < b.size(); ++j)
                a[shift + j] = static_cast<int>(((a[shift + j] - static_cast<long>(c) * b[j]) % p + p) % p);
        }
        a.pop_back();
        trim_fp(a);
        if (a.empty()) break;
    }
    return a;
}

PolyFp gcd_fp(PolyFp a, PolyFp b, int p) {
    trim_fp(a);
    trim_fp(b);
    while (!b.empty()) {
        PolyFp r = rem_fp(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

bool squarefree_fp(const PolyFp& f, int p) {
    PolyFp d = derivative_fp(f, p);
    if (d.empty()) return false; // p-th power part
    PolyFp g = gcd_fp(f, d, p);
    return g.size() == 1;
}

bool poly_irreducible_fp(const PolyFp& f, int p) {
    // brute force trial division, degrees are tiny
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    for (int d = 1; 2 * d <= n; ++d) {
        long total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (long m = 0; m < total; ++m) {
            PolyFp div(static_cast<size_t>(d) + 1, 0);
            long t = m;
            for (int i = 0; i < d; ++i) {
                div[static_cast<size_t>(i)] = static_cast<int>(t % p);
                t /= p;
            }
            div[static_cast<size_t>(d)] = 1;
            if (rem_fp(f, div, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// SmallField

SmallField::SmallField(int p, int n) : p_(p), n_(n) {
    if (p < 2 || n < 1) throw InvalidArgument("bad field parameters");
    long size = 1;
    for (int i = 0; i < n; ++i) {
        size *= p;
        if (size > 65536) throw Unsupported("field size above 2^16");
    }
    size_ = size;

    // lexicographically smallest monic irreducible modulus (by packed value)
    modulus_.assign(static_cast<size_t>(n) + 1, 0);
    modulus_.back() = 1;
    if (n > 1) {
        bool found = false;
        for (long m = 0; m < size_ && !found; ++m) {
            PolyFp cand(static_cast<size_t>(n) + 1, 0);
            long t = m;
            for (int i = 0; i < n; ++i) {
                cand[static_cast<size_t>(i)] = static_cast<int>(t % p);
                t /= p;
            }
            cand[static_cast<size_t>(n)] = 1;
            if (poly_irreducible_fp(cand, p)) {
                for (int i = 0; i <= n; ++i) modulus_[static_cast<size_t>(i)] = cand[static_cast<size_t>(i)];
                found = true;
            }
        }
        if (!found) throw Error("no irreducible modulus found");
    }

    // bootstrap multiplication: packed schoolbook product reduced mod modulus
    auto unpack = [&](Elt a) {
        std::vector<int> v(static_cast<size_t>(n_));
        long t = a;
        for (int i = 0; i < n_; ++i) {
            v[static_cast<size_t>(i)] = static_cast<int>(t % p_);
            t /= p_;
        }
        return v;
    };
    auto pack = [&](const std::vector<int>& v) {
        long a = 0;
        for (int i = n_ - 1; i >= 0; --i) a = a * p_ + v[static_cast<size_t>(i)];
        return static_cast<Elt>(a);
    };
    auto slow_mul = [&](Elt a, Elt b) {
        std::vector<int> va = unpack(a), vb = unpack(b);
        std::vector<int> prod(static_cast<size_t>(2 * n_ - 1), 0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                prod[static_cast<size_t>(i + j)] =
                    static_cast<int>((prod[static_cast<size_t>(i + j)] +
                                      static_cast<long>(va[static_cast<size_t>(i)]) * vb[static_cast<size_t>(j)]) %
                                     p_);
        for (int k = 2 * n_ - 2; k >= n_; --k) {
            int c = prod[static_cast<size_t>(k)];
            if (c == 0) continue;
            prod[static_cast<size_t>(k)] = 0;
            for (int i = 0; i < n_; ++i) {
                int idx = k - n_ + i;
                prod[static_cast<size_t>(idx)] = static_cast<int>(
                    ((prod[static_cast<size_t>(idx)] - static_cast<long>(c) * modulus_[static_cast<size_t>(i)]) % p_ +
                     p_) %
                    p_);
            }
        }
        prod.resize(static_cast<size_t>(n_));
        return pack(prod);
    };
    auto slow_pow = [&](Elt a, long e) {
        Elt r = 1;
        Elt b = a;
        while (e > 0) {
            if (e & 1) r = slow_mul(r, b);
            b = slow_mul(b, b);
            e >>= 1;
        }
        return r;
    };

    // generator of the multiplicative group
    std::vector<long> prime_factors;
    {
        long m = size_ - 1;
        for (long d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                prime_factors.push_back(d);
                while (m % d == 0) m /= d;
            }
        }
        if (m > 1) prime_factors.push_back(m);
    }
    gen_ = 0;
    for (Elt cand = 1; cand < static_cast<Elt>(size_); ++cand) {
        if (cand == 1 && size_ > 2) continue;
        bool ok = true;
        for (long ell : prime_factors) {
            if (slow_pow(cand, (size_ - 1) / ell) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            gen_ = cand;
            break;
        }
    }

    exp_.assign(static_cast<size_t>(size_ - 1), 1);
    log_.assign(static_cast<size_t>(size_), -1);
    Elt cur = 1;
    for (long k = 0; k < size_ - 1; ++k) {
        exp_[static_cast<size_t>(k)] = cur;
        log_[cur] = static_cast<int32_t>(k);
        cur = slow_mul(cur, gen_);
    }

    // absolute trace via Frobenius orbits in log coordinates
    trace_.assign(static_cast<size_t>(size_), 0);
    for (long a = 1; a < size_; ++a) {
        long k = log_[static_cast<size_t>(a)];
        Elt acc = 0;
        long e = k;
        for (int i = 0; i < n_; ++i) {
            acc = add(acc, exp_[static_cast<size_t>(e)]);
            e = (e * p_) % (size_ - 1);
        }
        trace_.at(static_cast<size_t>(a)) = static_cast<uint8_t>(acc % p_);
    }
}

SmallField::Elt SmallField::from_int(long c) const {
    long v = c % p_;
    if (v < 0) v += p_;
    return static_cast<Elt>(v);
}

SmallField::Elt SmallField::add(Elt a, Elt b) const {
    if (p_ == 2) return a ^ b;
    long r = 0, mul = 1, x = a, y = b;
    for (int i = 0; i < n_; ++i) {
        long d = (x % p_ + y % p_) % p_;
        r += d * mul;
        mul *= p_;
        x /= p_;
        y /= p_;
    }
    return static_cast<Elt>(r);
}

SmallField::Elt SmallField::neg(Elt a) const {
    if (p_ == 2) return a;
    long r = 0, mul = 1, x = a;
    for (int i = 0; i < n_; ++i) {
        long d = (p_ - x % p_) % p_;
        r += d * mul;
        mul *= p_;
        x /= p_;
    }
    return static_cast<Elt>(r);
}

SmallField::Elt SmallField::mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    long k = log_[a] + log_[b];
    if (k >= size_ - 1) k -= size_ - 1;
    return exp_[static_cast<size_t>(k)];
}

SmallField::Elt SmallField::inv(Elt a) const {
    if (a == 0) throw InvalidArgument("inverse of zero");
    long k = (size_ - 1 - log_[a]) % (size_ - 1);
    return exp_[static_cast<size_t>(k)];
}

SmallField::Elt SmallField::pow(Elt a, long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    long k = log_[a];
    long m = size_ - 1;
    long ke = ((k % m) * (e % m)) % m;
    if (ke < 0) ke += m;
    return exp_[static_cast<size_t>(ke)];
}

bool SmallField::is_square(Elt a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;
    return log_[a] % 2 == 0;
}

int SmallField::trace_to_prime(Elt a) const { return trace_[a]; }

// ---------------------------------------------------------------------------
// Curves

HyperellipticCurve parse_curve(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == ';') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw ParseError("curve spec must be 'p; h-coeffs; f-coeffs'");
    auto parse_list = [](const std::string& s) {
        std::vector<mpz_class> out;
        std::string tok;
        auto flush = [&]() {
            size_t b = tok.find_first_not_of(" \t");
            size_t e = tok.find_last_not_of(" \t");
            if (b == std::string::npos) throw ParseError("empty coefficient in curve spec");
            std::string v = tok.substr(b, e - b + 1);
            out.emplace_back(v);
            tok.clear();
        };
        for (char c : s) {
            if (c == ',') flush();
            else tok.push_back(c);
        }
        flush();
        return out;
    };
    std::string ps = parts[0];
    ps.erase(std::remove_if(ps.begin(), ps.end(), [](char c) { return c == ' ' || c == '\t'; }), ps.end());
    HyperellipticCurve curve;
    try {
        curve.p = std::stoi(ps);
    } catch (const std::exception&) {
        throw ParseError("invalid prime in curve spec");
    }
    if (curve.p < 2) throw ParseError("invalid prime in curve spec");
    std::vector<mpz_class> h = parse_list(parts[1]);
    std::vector<mpz_class> f = parse_list(parts[2]);
    for (auto& c : h) c = ((c % curve.p) + curve.p) % curve.p;
    for (auto& c : f) c = ((c % curve.p) + curve.p) % curve.p;
    curve.h = IntPoly(std::move(h));
    curve.f = IntPoly(std::move(f));
    return curve;
}

std::string curve_to_spec(const HyperellipticCurve& curve) {
    std::ostringstream os;
    os << curve.p << "; ";
    auto emit = [&](const IntPoly& f) {
        if (f.is_zero()) {
            os << "0";
            return;
        }
        for (int i = 0; i <= f.degree(); ++i) {
            if (i) os << ",";
            os << f.coeff(i).get_str();
        }
    };
    emit(curve.h);
    os << "; ";
    emit(curve.f);
    return os.str();
}

int model_genus(const HyperellipticCurve& curve) {
    int df = curve.f.degree();
    int dh = curve.h.degree();
    if (df < 1 && dh < 1) throw InvalidArgument("degenerate curve");
    int gf = df >= 1 ? (df + 1) / 2 - 1 : -1;
    int gh = dh - 1;
    return std::max(gf, gh);
}

void validate_genus4(const HyperellipticCurve& curve) {
    int p = curve.p;
    if (p != 2 && p != 3 && p != 5)
        throw Unsupported("only p in {2,3,5} is supported for genus-4 models");
    PolyFp f = reduce_fp(curve.f, p);
    PolyFp h = reduce_fp(curve.h, p);
    if (p != 2) {
        if (!h.empty())
            throw ValidationError(ValidationError::Kind::Other, "odd characteristic requires h = 0");
        int df = static_cast<int>(f.size()) - 1;
        if (df != 9 && df != 10)
            throw ValidationError(ValidationError::Kind::Other, "genus 4 requires deg f in {9, 10}");
        if (!squarefree_fp(f, p))
            throw ValidationError(ValidationError::Kind::Other, "f must be squarefree");
    } else {
        if (h.empty())
            throw ValidationError(ValidationError::Kind::Other,
                                  "characteristic 2 requires h != 0 for a hyperelliptic model");
        int df = static_cast<int>(f.size()) - 1;
        int dh = static_cast<int>(h.size()) - 1;
        if (df > 10 || dh > 5)
            throw ValidationError(ValidationError::Kind::Other, "degrees exceed the genus-4 model");
        int genus = std::max(df >= 1 ? (df + 1) / 2 - 1 : -1, dh - 1);
        if (genus != 4)
            throw ValidationError(ValidationError::Kind::Other, "model degrees do not give genus 4");
        // affine nonsingularity: no common root of h and f'^2 + f h'^2
        PolyFp fd = derivative_fp(f, 2), hd = derivative_fp(h, 2);
        PolyFp t = mul_fp(fd, fd, 2);
        PolyFp u = mul_fp(f, mul_fp(hd, hd, 2), 2);
        t.resize(std::max(t.size(), u.size()), 0);
        for (size_t i = 0; i < u.size(); ++i) t[i] ^= u[i];
        trim_fp(t);
        PolyFp g = t.empty() ? h : gcd_fp(h, t, 2);
        if (g.size() != 1)
            throw ValidationError(ValidationError::Kind::Other, "affine model is singular");
        // point at infinity: singular iff h5 = 0 and f9 = sqrt(f10)*h4
        auto bit = [](const PolyFp& v, size_t i) { return i < v.size() ? v[i] : 0; };
        int h5 = bit(h, 5), h4 = bit(h, 4), f10 = bit(f, 10), f9 = bit(f, 9);
        if (h5 == 0 && ((f10 & h4) ^ f9) == 0)
            throw ValidationError(ValidationError::Kind::Other, "model is singular at infinity");
    }
}

namespace {

long count_points_in_field(const PolyFp& h, const PolyFp& f, int genus, const SmallField& F) {
    const int p = F.p();
    long count = 0;
    std::vector<SmallField::Elt> fc(f.size()), hc(h.size());
    for (size_t i = 0; i < f.size(); ++i) fc[i] = F.from_int(f[i]);
    for (size_t i = 0; i < h.size(); ++i) hc[i] = F.from_int(h[i]);
    auto eval = [&](const std::vector<SmallField::Elt>& c, SmallField::Elt x) {
        SmallField::Elt acc = 0;
        for (size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), c[i]);
        return acc;
    };
    for (long xv = 0; xv < F.size(); ++xv) {
        SmallField::Elt x = static_cast<SmallField::Elt>(xv);
        SmallField::Elt fx = eval(fc, x);
        if (p != 2) {
            if (fx == 0) count += 1;
            else if (F.is_square(fx)) count += 2;
        } else {
            SmallField::Elt hx = eval(hc, x);
            if (hx == 0) count += 1;
            else {
                SmallField::Elt ih = F.inv(hx);
                SmallField::Elt z = F.mul(fx, F.mul(ih, ih));
                if (F.trace_to_prime(z) == 0) count += 2;
            }
        }
    }
    // points at infinity via the leading coefficients of the model
    auto coeff = [](const PolyFp& v, size_t i) { return i < v.size() ? v[i] : 0; };
    SmallField::Elt finf = F.from_int(coeff(f, static_cast<size_t>(2 * genus + 2)));
    SmallField::Elt hinf = F.from_int(coeff(h, static_cast<size_t>(genus + 1)));
    if (p != 2) {
        if (finf == 0) count += 1;
        else if (F.is_square(finf)) count += 2;
    } else {
        if (hinf == 0) count += 1;
        else {
            SmallField::Elt ih = F.inv(hinf);
            SmallField::Elt z = F.mul(finf, F.mul(ih, ih));
            if (F.trace_to_prime(z) == 0) count += 2;
        }
    }
    return count;
}

} // namespace

long count_points(const HyperellipticCurve& curve, int n) {
    if (n < 1) throw InvalidArgument("extension degree must be positive");
    double logsize = static_cast<double>(n) * std::log2(static_cast<double>(curve.p));
    if (logsize > 16.001) throw Unsupported("field size above 2^16");
    SmallField F(curve.p, n);
    PolyFp f = reduce_fp(curve.f, curve.p);
    PolyFp h = reduce_fp(curve.h, curve.p);
    return count_points_in_field(h, f, model_genus(curve), F);
}

WeilPolynomial lpoly_from_counts(const PointCounts& counts, int g, const mpz_class& q) {
    if (static_cast<int>(counts.counts.size()) < g)
        throw InvalidArgument("need at least g point counts");
    std::vector<mpz_class> s(static_cast<size_t>(g));
    mpz_class qn = 1;
    for (int n = 1; n <= g; ++n) {
        qn *= q;
        s[static_cast<size_t>(n - 1)] = qn + 1 - counts.counts[static_cast<size_t>(n - 1)];
        // Weil bound |s_n| <= 2g sqrt(q^n)
        mpz_class lhs = s[static_cast<size_t>(n - 1)] * s[static_cast<size_t>(n - 1)];
        mpz_class rhs = mpz_class(2 * g) * mpz_class(2 * g) * qn;
        if (lhs > rhs) throw InconsistentCounts("point counts violate the Weil bound");
    }
    // Newton identities for e_1..e_g; all must be integers
    std::vector<mpz_class> e(static_cast<size_t>(g) + 1);
    e[0] = 1;
    mpz_class acc, r;
    for (int k = 1; k <= g; ++k) {
        acc = 0;
        for (int i = 1; i <= k; ++i) {
            if (i % 2 == 0)
                mpz_submul(acc.get_mpz_t(), e[static_cast<size_t>(k - i)].get_mpz_t(),
                           s[static_cast<size_t>(i - 1)].get_mpz_t());
            else
                mpz_addmul(acc.get_mpz_t(), e[static_cast<size_t>(k - i)].get_mpz_t(),
                           s[static_cast<size_t>(i - 1)].get_mpz_t());
        }
        mpz_fdiv_qr_ui(e[static_cast<size_t>(k)].get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(),
                       static_cast<unsigned long>(k));
        if (r != 0) throw InconsistentCounts("point counts do not define an integer polynomial");
    }
    std::vector<mpz_class> a(static_cast<size_t>(g));
    for (int k = 1; k <= g; ++k)
        a[static_cast<size_t>(k - 1)] = (k % 2 == 0) ? e[static_cast<size_t>(k)] : -e[static_cast<size_t>(k)];
    IntPoly poly = weil_poly_from_top_coeffs(a, q);
    try {
        return WeilPolynomial::validate(poly, q);
    } catch (const ValidationError& err) {
        throw InconsistentCounts(std::string("counts do not give a Weil polynomial: ") + err.what());
    }
}

ZetaResult zeta(const HyperellipticCurve& curve) {
    validate_genus4(curve);
    ZetaResult out;
    for (int n = 1; n <= 4; ++n) out.counts.counts.push_back(count_points(curve, n));
    out.weil = lpoly_from_counts(out.counts, 4, curve.p);
    out.label = encode_label(out.weil);
    return out;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct SearchContext {
    int p;
    std::vector<SmallField> fields; // F_{p^1}..F_{p^4}
    std::vector<std::vector<std::vector<SmallField::Elt>>> powtab; // [n][x][j] = x^j
    std::vector<std::vector<long>> target_counts; // per target, N_1..N_4
    std::vector<IntPoly> target_polys;
    std::vector<IsogenyLabel> target_labels;

    bool counts_match_prefix(const std::vector<long>& counts, size_t upto) const {
        for (const auto& t : target_counts) {
            bool ok = true;
            for (size_t i = 0; i < upto; ++i)
                if (t[i] != counts[i]) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
        return false;
    }
};

long count_affine(const SearchContext& ctx, int level, const PolyFp& h, const PolyFp& f) {
    const SmallField& F = ctx.fields[static_cast<size_t>(level)];
    const auto& pt = ctx.powtab[static_cast<size_t>(level)];
    long count = 0;
    for (long xv = 0; xv < F.size(); ++xv) {
        SmallField::Elt fx = 0;
        for (size_t j = 0; j < f.size(); ++j)
            if (f[j]) fx = F.add(fx, F.mul(static_cast<SmallField::Elt>(f[j]), pt[static_cast<size_t>(xv)][j]));
        if (ctx.p != 2) {
            if (fx == 0) count += 1;
            else if (F.is_square(fx)) count += 2;
        } else {
            SmallField::Elt hx = 0;
            for (size_t j = 0; j < h.size(); ++j)
                if (h[j]) hx = F.add(hx, F.mul(static_cast<SmallField::Elt>(h[j]), pt[static_cast<size_t>(xv)][j]));
            if (hx == 0) count += 1;
            else {
                SmallField::Elt ih = F.inv(hx);
                SmallField::Elt z = F.mul(fx, F.mul(ih, ih));
                if (F.trace_to_prime(z) == 0) count += 2;
            }
        }
    }
    return count;
}

long infinity_points(const SearchContext& ctx, int level, const PolyFp& h, const PolyFp& f) {
    const SmallField& F = ctx.fields[static_cast<size_t>(level)];
    auto coeff = [](const PolyFp& v, size_t i) { return i < v.size() ? v[i] : 0; };
    SmallField::Elt finf = F.from_int(coeff(f, 10));
    SmallField::Elt hinf = F.from_int(coeff(h, 5));
    if (ctx.p != 2) {
        if (finf == 0) return 1;
        return F.is_square(finf) ? 2 : 0;
    }
    if (hinf == 0) return 1;
    SmallField::Elt ih = F.inv(hinf);
    SmallField::Elt z = F.mul(finf, F.mul(ih, ih));
    return F.trace_to_prime(z) == 0 ? 2 : 0;
}

// Full count ladder with pruning; returns true plus the matching target poly
// index when all four counts match a target and the model is valid.
bool process_model(const SearchContext& ctx, const PolyFp& h, const PolyFp& f,
                   std::vector<CurveMatch>& out) {
    std::vector<long> counts(4);
    for (int level = 0; level < 4; ++level) {
        counts[static_cast<size_t>(level)] =
            count_affine(ctx, level, h, f) + infinity_points(ctx, level, h, f);
        if (!ctx.counts_match_prefix(counts, static_cast<size_t>(level) + 1)) return false;
    }
    HyperellipticCurve curve;
    curve.p = ctx.p;
    std::vector<mpz_class> hc(h.size()), fc(f.size());
    for (size_t i = 0; i < h.size(); ++i) hc[i] = h[i];
    for (size_t i = 0; i < f.size(); ++i) fc[i] = f[i];
    curve.h = IntPoly(std::move(hc));
    curve.f = IntPoly(std::move(fc));
    try {
        validate_genus4(curve);
    } catch (const Error&) {
        return false; // singular model that happened to match counts
    }
    PointCounts pc;
    pc.counts = counts;
    WeilPolynomial w = lpoly_from_counts(pc, 4, ctx.p);
    for (size_t t = 0; t < ctx.target_polys.size(); ++t) {
        if (w.poly() == ctx.target_polys[t]) {
            out.push_back({curve, ctx.target_labels[t]});
            return true;
        }
    }
    return false;
}

void search_odd_range(const SearchContext& ctx, int deg, int lc, long lo, long hi,
                      std::vector<CurveMatch>& out) {
    const int p = ctx.p;
    PolyFp f(static_cast<size_t>(deg) + 1, 0);
    f[static_cast<size_t>(deg)] = lc;
    PolyFp h; // zero
    for (long m = lo; m < hi; ++m) {
        long t = m;
        for (int i = 0; i < deg; ++i) {
            f[static_cast<size_t>(i)] = static_cast<int>(t % p);
            t /= p;
        }
        process_model(ctx, h, f, out);
    }
}

void search_char2_range(const SearchContext& ctx, long lo, long hi, std::vector<CurveMatch>& out) {
    // model index m = h * 2^11 + f, h in [1, 63], f in [0, 2047]
    for (long m = lo; m < hi; ++m) {
        long hbits = m >> 11;
        long fbits = m & 2047;
        if (hbits == 0) continue;
        PolyFp h, f;
        for (int i = 0; i < 6; ++i)
            if (hbits & (1L << i)) {
                h.resize(static_cast<size_t>(i) + 1, 0);
                h[static_cast<size_t>(i)] = 1;
            }
        for (int i = 0; i < 11; ++i)
            if (fbits & (1L << i)) {
                f.resize(static_cast<size_t>(i) + 1, 0);
                f[static_cast<size_t>(i)] = 1;
            }
        int df = static_cast<int>(f.size()) - 1;
        int dh = static_cast<int>(h.size()) - 1;
        int genus = std::max(df >= 1 ? (df + 1) / 2 - 1 : -1, dh - 1);
        if (genus != 4) continue;
        process_model(ctx, h, f, out);
    }
}

} // namespace

std::vector<CurveMatch> search_hyperelliptic(int p, const std::vector<WeilPolynomial>& targets,
                                             int threads) {
    if (p != 2 && p != 3 && p != 5) throw Unsupported("search supports p in {2,3,5}");
    if (threads < 1) threads = 1;
    SearchContext ctx;
    ctx.p = p;
    for (int n = 1; n <= 4; ++n) ctx.fields.emplace_back(p, n);
    ctx.powtab.resize(4);
    for (int n = 0; n < 4; ++n) {
        const SmallField& F = ctx.fields[static_cast<size_t>(n)];
        ctx.powtab[static_cast<size_t>(n)].assign(static_cast<size_t>(F.size()),
                                                  std::vector<SmallField::Elt>(11, 1));
        for (long x = 0; x < F.size(); ++x) {
            auto& row = ctx.powtab[static_cast<size_t>(n)][static_cast<size_t>(x)];
            row[0] = 1;
            for (int j = 1; j <= 10; ++j) row[static_cast<size_t>(j)] = F.mul(row[static_cast<size_t>(j - 1)],
                                                                              static_cast<SmallField::Elt>(x));
        }
    }
    for (const WeilPolynomial& w : targets) {
        if (w.q() != p) throw InvalidArgument("search targets must be defined over F_p");
        if (w.g() != 4) throw InvalidArgument("search targets must have g = 4");
        std::vector<mpz_class> ps = power_sums_int(w.poly(), 4);
        std::vector<long> counts;
        mpz_class qn = 1;
        for (int n = 1; n <= 4; ++n) {
            qn *= p;
            mpz_class c = qn + 1 - ps[static_cast<size_t>(n - 1)];
            counts.push_back(c.get_si());
        }
        ctx.target_counts.push_back(std::move(counts));
        ctx.target_polys.push_back(w.poly());
        ctx.target_labels.push_back(encode_label(w));
    }
    if (ctx.target_polys.empty()) return {};

    std::vector<CurveMatch> results;

    auto run_sharded = [&](long total, auto&& fn) {
        int nshards = std::max(1, threads);
        std::vector<std::vector<CurveMatch>> shard_out(static_cast<size_t>(nshards));
        std::vector<std::thread> pool;
        for (int sIdx = 0; sIdx < nshards; ++sIdx) {
            long lo = total * sIdx / nshards;
            long hi = total * (sIdx + 1) / nshards;
            pool.emplace_back([&, sIdx, lo, hi]() { fn(lo, hi, shard_out[static_cast<size_t>(sIdx)]); });
        }
        for (auto& th : pool) th.join();
        for (auto& v : shard_out)
            for (auto& x : v) results.push_back(std::move(x));
    };

    if (p == 2) {
        run_sharded(64L << 11, [&](long lo, long hi, std::vector<CurveMatch>& out) {
            search_char2_range(ctx, lo, hi, out);
        });
    } else {
        // square-class representatives for the leading coefficient: y-rescaling
        // makes every model equivalent to one with lc in {1, nu}
        int nu = 0;
        for (int c = 2; c < p; ++c) {
            if (!ctx.fields[0].is_square(static_cast<SmallField::Elt>(c))) {
                nu = c;
                break;
            }
        }
        for (int deg : {9, 10}) {
            for (int lc : {1, nu}) {
                long total = 1;
                for (int i = 0; i < deg; ++i) total *= p;
                run_sharded(total, [&, deg, lc](long lo, long hi, std::vector<CurveMatch>& out) {
                    search_odd_range(ctx, deg, lc, lo, hi, out);
                });
            }
        }
    }
    std::sort(results.begin(), results.end(), [](const CurveMatch& a, const CurveMatch& b) {
        if (a.curve.p != b.curve.p) return a.curve.p < b.curve.p;
        if (poly_less(a.curve.h, b.curve.h)) return true;
        if (poly_less(b.curve.h, a.curve.h)) return false;
        return poly_less(a.curve.f, b.curve.f);
    });
    return results;
}

} // namespace anglerank
