#include "anglerank/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "anglerank/lll.hpp"

namespace anglerank {

PrecisionProfile PrecisionProfile::from_rho(long rho) {
    if (rho < 64) throw InvalidArgument("precision rho must be at least 64 bits");
    long sigma = static_cast<long>(std::sqrt(static_cast<double>(rho)));
    while (sigma * sigma > rho) --sigma;
    while ((sigma + 1) * (sigma + 1) <= rho) ++sigma;
    if (sigma * sigma != rho) throw InvalidArgument("rho must be a perfect square (rho = sigma^2)");
    return PrecisionProfile{rho, sigma};
}

namespace {

struct PolyAtPrec {
    std::vector<MpReal> c; // real coefficients at working precision
    explicit PolyAtPrec(const IntPoly& f, mpfr_prec_t prec) {
        c.reserve(f.coeffs().size());
        for (const auto& z : f.coeffs()) c.emplace_back(z, prec);
    }
    MpComplex eval(const MpComplex& z) const {
        MpComplex acc(z.re.prec());
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * z;
            acc.re = acc.re + *it;
        }
        return acc;
    }
};

MpReal pow2(long e, mpfr_prec_t prec) {
    MpReal r(1.0, prec);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

// One pass of Aberth-Ehrlich simultaneous iteration; returns max |correction|.
MpReal aberth_pass(const PolyAtPrec& f, const PolyAtPrec& df, std::vector<MpComplex>& z) {
    const mpfr_prec_t prec = z[0].re.prec();
    MpReal maxcorr(0.0, prec);
    const size_t n = z.size();
    for (size_t i = 0; i < n; ++i) {
        MpComplex pv = f.eval(z[i]);
        MpComplex dv = df.eval(z[i]);
        MpComplex newton = pv / dv;
        MpComplex sum(prec);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            MpComplex diff = z[i] - z[j];
            MpComplex one(MpReal(1.0, prec), MpReal(0.0, prec));
            sum = sum + one / diff;
        }
        MpComplex one(MpReal(1.0, prec), MpReal(0.0, prec));
        MpComplex denom = one - newton * sum;
        MpComplex corr = newton / denom;
        z[i] = z[i] - corr;
        MpReal c = corr.abs();
        if (maxcorr < c) maxcorr = c;
    }
    return maxcorr;
}

std::vector<MpComplex> raise_precision(const std::vector<MpComplex>& z, mpfr_prec_t prec) {
    std::vector<MpComplex> out;
    out.reserve(z.size());
    for (const auto& w : z) {
        MpComplex v(prec);
        mpfr_set(v.re.get(), w.re.get(), MPFR_RNDN);
        mpfr_set(v.im.get(), w.im.get(), MPFR_RNDN);
        out.push_back(std::move(v));
    }
    return out;
}

// Roots of a squarefree integer polynomial by Aberth iteration with
// precision doubling, plus an a-posteriori residual certificate: the disks
// |z - z_i| <= n |f(z_i)/f'(z_i)| each contain a root; when the disks are
// pairwise disjoint they isolate all n roots.
std::vector<MpComplex> roots_squarefree(const IntPoly& f, long rho) {
    const int n = f.degree();
    if (n == 0) return {};
    if (n == 1) {
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(rho + 64);
        MpComplex z(prec);
        MpReal num(f.coeff(0), prec), den(f.coeff(1), prec);
        z.re = -(num / den);
        return {z};
    }

    // Cauchy bound for the initial radius
    double lead = std::abs(f.leading().get_d());
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(f.coeff(i).get_d()) / lead);
    radius = 1.0 + radius;

    mpfr_prec_t prec = 192;
    std::vector<MpComplex> z;
    z.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double ang = 2.0 * 3.14159265358979323846 * (static_cast<double>(i) + 0.5) /
                         static_cast<double>(n) +
                     0.2837; // asymmetric offset avoids symmetric stalls
        MpComplex w(prec);
        w.re = MpReal(radius * std::cos(ang), prec);
        w.im = MpReal(radius * std::sin(ang), prec);
        z.push_back(std::move(w));
    }

    const mpfr_prec_t target = static_cast<mpfr_prec_t>(rho + 64);
    while (true) {
        PolyAtPrec fp(f, prec), dfp(f.derivative(), prec);
        MpReal tol = pow2(-static_cast<long>(prec) / 2, prec);
        bool converged = false;
        for (int pass = 0; pass < 220; ++pass) {
            MpReal corr = aberth_pass(fp, dfp, z);
            if (corr < tol) {
                converged = true;
                break;
            }
        }
        if (!converged) throw PrecisionFailure("root iteration did not converge");
        if (prec >= target) break;
        prec = std::min<mpfr_prec_t>(prec * 2, target);
        z = raise_precision(z, prec);
    }

    // certificate
    PolyAtPrec fp(f, prec), dfp(f.derivative(), prec);
    MpReal bound = pow2(-rho, prec);
    std::vector<MpReal> disk;
    disk.reserve(z.size());
    for (const auto& zi : z) {
        MpComplex pv = fp.eval(zi);
        MpComplex dv = dfp.eval(zi);
        MpReal r = (pv.abs() / dv.abs()) * MpReal(static_cast<double>(2 * n), prec);
        if (!(r < bound)) throw PrecisionFailure("residual certificate failed at requested precision");
        disk.push_back(r);
    }
    for (size_t i = 0; i < z.size(); ++i) {
        for (size_t j = i + 1; j < z.size(); ++j) {
            MpReal dist = (z[i] - z[j]).abs();
            if (!(disk[i] + disk[j] < dist))
                throw PrecisionFailure("root inclusion disks overlap at requested precision");
        }
    }
    return z;
}

} // namespace

std::vector<MpComplex> complex_roots_of(const IntPoly& f, long rho) {
    if (f.is_zero()) throw InvalidArgument("root finding on zero polynomial");
    if (f.degree() == 0) return {};
    std::vector<std::pair<IntPoly, int>> sq = squarefree_decomposition(f);
    std::vector<MpComplex> out;
    for (const auto& [part, mult] : sq) {
        std::vector<MpComplex> roots = roots_squarefree(part, rho);
        for (const auto& r : roots)
            for (int k = 0; k < mult; ++k) out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const MpComplex& a, const MpComplex& b) {
        MpReal aa = a.arg(), ba = b.arg();
        if (aa < ba) return true;
        if (ba < aa) return false;
        return a.re < b.re;
    });
    return out;
}

std::vector<MpComplex> complex_roots(const WeilPolynomial& P, const PrecisionProfile& profile) {
    return complex_roots_of(P.poly(), profile.rho);
}

AngleVector frobenius_angles(const WeilPolynomial& P, const PrecisionProfile& profile) {
    // Real roots are exactly +-sqrt(q); strip them exactly so that every
    // remaining root is strictly complex.
    IntPoly f = P.poly();
    mpz_class q = P.q();
    mpz_class w = sqrt(q);
    if (w * w == q) {
        mpz_class minus_w = -w;
        for (const mpz_class& root : {w, minus_w}) {
            IntPoly lin{std::vector<mpz_class>{-root, 1}};
            IntPoly quot;
            while (try_divide_exact(f, lin, quot)) f = quot;
        }
    } else {
        IntPoly quad{std::vector<mpz_class>{-q, 0, 1}};
        IntPoly quot;
        while (f.degree() >= 2 && try_divide_exact(f, quad, quot)) f = quot;
    }

    AngleVector av;
    av.profile = profile;
    if (f.degree() == 0) return av;

    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(profile.rho + 64);
    MpReal pi(prec);
    mpfr_const_pi(pi.get(), MPFR_RNDN);

    std::vector<MpReal> ts;
    for (const auto& z : complex_roots_of(f, profile.rho)) {
        if (!(z.im.sgn() > 0)) continue;
        ts.push_back(z.arg() / pi);
    }
    std::sort(ts.begin(), ts.end());
    MpReal tol = pow2(-(profile.rho / 2), prec);
    for (auto& t : ts) {
        if (!av.t.empty() && t - av.t.back() < tol) continue;
        av.t.push_back(std::move(t));
    }
    return av;
}

RelationSearch find_integer_relations(const AngleVector& angles) {
    RelationSearch out;
    const int m = angles.m();
    if (m == 0) return out;
    const long rho = angles.profile.rho;
    const long sigma = angles.profile.sigma;
    const long scale_bits = rho - 2 * sigma;

    // rows [ I_{m+1} | round(N x_k) ], x = (t_1..t_m, 1), N = 2^(rho-2sigma)
    std::vector<std::vector<mpz_class>> basis(
        static_cast<size_t>(m) + 1, std::vector<mpz_class>(static_cast<size_t>(m) + 2, mpz_class(0)));
    for (int k = 0; k <= m; ++k) basis[static_cast<size_t>(k)][static_cast<size_t>(k)] = 1;
    for (int k = 0; k < m; ++k) {
        MpReal scaled = angles.t[static_cast<size_t>(k)];
        mpfr_mul_2si(scaled.get(), scaled.get(), scale_bits, MPFR_RNDN);
        mpz_class g;
        mpfr_get_z(g.get_mpz_t(), scaled.get(), MPFR_RNDN);
        basis[static_cast<size_t>(k)][static_cast<size_t>(m + 1)] = g;
    }
    mpz_class n_scale;
    mpz_ui_pow_ui(n_scale.get_mpz_t(), 2, static_cast<unsigned long>(scale_bits));
    basis[static_cast<size_t>(m)][static_cast<size_t>(m + 1)] = n_scale;

    lll_reduce(basis);

    mpz_class spurious_bound;
    mpz_ui_pow_ui(spurious_bound.get_mpz_t(), 2, static_cast<unsigned long>(sigma));
    for (const auto& row : basis) {
        const mpz_class& last = row[static_cast<size_t>(m + 1)];
        if (last * last > n_scale) continue; // not a relation candidate
        int small = 0, big = 0;
        for (int i = 0; i <= m; ++i) {
            if (abs(row[static_cast<size_t>(i)]) > spurious_bound) ++big;
            else ++small;
        }
        if (big > 0 && small > 0) {
            out.status = RelationStatus::Interrupted;
            return out;
        }
        if (big > 0) {
            ++out.spurious_discarded;
            continue;
        }
        IntegerRelation rel;
        rel.coeffs.assign(row.begin(), row.begin() + m + 1);
        // canonical sign: first nonzero coefficient positive
        for (const auto& c : rel.coeffs) {
            if (c == 0) continue;
            if (c < 0)
                for (auto& x : rel.coeffs) x = -x;
            break;
        }
        out.relations.push_back(std::move(rel));
    }
    std::sort(out.relations.begin(), out.relations.end(),
              [](const IntegerRelation& a, const IntegerRelation& b) {
                  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(),
                                                      b.coeffs.begin(), b.coeffs.end());
              });
    return out;
}

AngleRankResult numerical_angle_rank(const WeilPolynomial& P, const PrecisionProfile& profile) {
    AngleRankResult out;
    out.angles = frobenius_angles(P, profile);
    out.m = out.angles.m();
    out.search = find_integer_relations(out.angles);
    out.s = static_cast<int>(out.search.relations.size());
    out.rank = out.m - out.s;
    if (out.rank < 0 || out.rank > P.g())
        throw PrecisionFailure("numerical angle rank out of range; raise rho");
    return out;
}

} // namespace anglerank
