#include "anglerank/weil.hpp"

#include <algorithm>
#include <sstream>

#include "anglerank/sturm.hpp"

namespace anglerank {

void prime_power_decompose(const mpz_class& q, mpz_class& p, int& r) {
    if (q < 2) throw InvalidArgument("q must be at least 2");
    // small prime factor by trial division, then exact power check
    mpz_class m = q;
    mpz_class cand = 0;
    for (unsigned long d = 2; d < 1000000ul && mpz_class(d) * d <= m; ++d) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            cand = d;
            break;
        }
    }
    if (cand == 0) {
        if (mpz_probab_prime_p(q.get_mpz_t(), 40) == 0)
            throw InvalidArgument("q is not a prime power (no small prime factor found)");
        p = q;
        r = 1;
        return;
    }
    p = cand;
    r = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        ++r;
    }
    if (m != 1) throw InvalidArgument("q is not a prime power");
}

bool functional_equation_holds(const IntPoly& poly, const mpz_class& q) {
    int deg = poly.degree();
    if (deg < 2 || deg % 2 != 0 || !poly.is_monic()) return false;
    int g = deg / 2;
    mpz_class qpow = 1; // q^(g-i)
    for (int i = g; i >= 0; --i) {
        // a_i = coeff of T^(2g-i); require a_{2g-i} = q^{g-i} a_i
        if (poly.coeff(i) != qpow * poly.coeff(2 * g - i)) return false;
        qpow *= q;
    }
    return true;
}

IntPoly real_weil_transform(const IntPoly& poly, const mpz_class& q) {
    if (!functional_equation_holds(poly, q))
        throw ValidationError(ValidationError::Kind::FunctionalEquation,
                              "functional equation does not hold");
    int g = poly.degree() / 2;
    // a_k = sum_m binom(g-k+2m, m) q^m b_{k-2m}
    std::vector<mpz_class> b(static_cast<size_t>(g) + 1);
    for (int k = 0; k <= g; ++k) {
        mpz_class acc = poly.coeff(2 * g - k); // a_k
        mpz_class qm = 1;
        for (int m = 1; 2 * m <= k; ++m) {
            qm *= q;
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(g - k + 2 * m),
                         static_cast<unsigned long>(m));
            acc -= binom * qm * b[static_cast<size_t>(k - 2 * m)];
        }
        b[static_cast<size_t>(k)] = acc;
    }
    std::vector<mpz_class> h(static_cast<size_t>(g) + 1);
    for (int k = 0; k <= g; ++k) h[static_cast<size_t>(g - k)] = b[static_cast<size_t>(k)];
    return IntPoly(std::move(h));
}

IntPoly real_weil_transform(const WeilPolynomial& P) {
    return real_weil_transform(P.poly(), P.q());
}

WeilPolynomial WeilPolynomial::validate(const IntPoly& poly, const mpz_class& q) {
    WeilPolynomial P;
    prime_power_decompose(q, P.p_, P.r_);
    int deg = poly.degree();
    if (deg < 2 || deg % 2 != 0)
        throw ValidationError(ValidationError::Kind::Other, "degree must be even and positive");
    if (!poly.is_monic()) throw ValidationError(ValidationError::Kind::Other, "polynomial must be monic");
    if (!functional_equation_holds(poly, q))
        throw ValidationError(ValidationError::Kind::FunctionalEquation,
                              "functional equation a_{2g-i} = q^{g-i} a_i fails");
    IntPoly h = real_weil_transform(poly, q);
    if (!all_roots_real_in_sqrt_interval(h, 4 * q))
        throw ValidationError(ValidationError::Kind::RootLocation,
                              "roots do not all lie on |alpha| = sqrt(q)");
    P.poly_ = poly;
    P.q_ = q;
    P.g_ = deg / 2;
    return P;
}

WeilPolynomial WeilPolynomial::validate(const std::vector<mpz_class>& coeffs, const mpz_class& q) {
    return validate(IntPoly(std::vector<mpz_class>(coeffs)), q);
}

bool NewtonPolygon::ordinary() const {
    size_t n = slopes.size();
    for (size_t i = 0; i < n / 2; ++i)
        if (slopes[i] != 0) return false;
    for (size_t i = n / 2; i < n; ++i)
        if (slopes[i] != 1) return false;
    return true;
}

NewtonPolygon newton_polygon(const WeilPolynomial& P) {
    // lower convex hull of (i, v_p(c_i)); root valuations are the negated
    // slopes, normalized by r
    int n = P.poly().degree();
    struct Pt {
        long x;
        long y;
    };
    std::vector<Pt> pts;
    for (int i = 0; i <= n; ++i) {
        const mpz_class& c = P.poly().coeff(i);
        if (c == 0) continue;
        mpz_class t = c;
        long v = 0;
        while (mpz_divisible_p(t.get_mpz_t(), P.p().get_mpz_t())) {
            mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), P.p().get_mpz_t());
            ++v;
        }
        pts.push_back({i, v});
    }
    std::vector<Pt> hull;
    for (const Pt& pt : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // keep b only if it is strictly below segment a-pt
            if ((b.y - a.y) * (pt.x - a.x) < (pt.y - a.y) * (b.x - a.x)) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    NewtonPolygon np;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long dx = hull[i + 1].x - hull[i].x;
        long dy = hull[i + 1].y - hull[i].y;
        mpq_class slope(-dy, dx * static_cast<long>(P.r()));
        slope.canonicalize();
        for (long k = 0; k < dx; ++k) np.slopes.push_back(slope);
    }
    std::sort(np.slopes.begin(), np.slopes.end());
    return np;
}

bool is_ordinary(const WeilPolynomial& P) {
    // equivalent to p not dividing the middle coefficient a_g
    bool mid_unit = !mpz_divisible_p(P.a(P.g()).get_mpz_t(), P.p().get_mpz_t());
    return mid_unit;
}

WeilPolynomial base_change(const WeilPolynomial& P, long n) {
    if (n <= 0) throw InvalidArgument("base change degree must be positive");
    if (n == 1) return P;
    IntPoly bc = power_map_int(P.poly(), n);
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), P.q().get_mpz_t(), static_cast<unsigned long>(n));
    return WeilPolynomial::validate(bc, qn);
}

// ---------------------------------------------------------------------------
// LMFDB-style label codec: base-26 digits a=0..z=25, leading 'a' = minus sign.

namespace {

std::string encode_nonneg(const mpz_class& v) {
    if (v == 0) return "a";
    mpz_class x = v;
    std::string s;
    while (x > 0) {
        mpz_class r = x % 26;
        s.push_back(static_cast<char>('a' + r.get_ui()));
        x /= 26;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::string encode_coeff(const mpz_class& v) {
    if (v < 0) return "a" + encode_nonneg(-v);
    return encode_nonneg(v);
}

mpz_class decode_nonneg(const std::string& s) {
    if (s.empty()) throw ParseError("empty label digit group");
    mpz_class x = 0;
    for (char c : s) {
        if (c < 'a' || c > 'z') throw ParseError("label digit out of range");
        x = x * 26 + (c - 'a');
    }
    return x;
}

mpz_class decode_coeff(const std::string& s) {
    if (s.empty()) throw ParseError("empty label digit group");
    if (s.size() == 1) return decode_nonneg(s); // includes "a" = 0
    if (s[0] == 'a') {
        std::string rest = s.substr(1);
        if (rest[0] == 'a') throw ParseError("non-canonical label digits");
        mpz_class v = decode_nonneg(rest);
        if (v == 0) throw ParseError("non-canonical negative zero");
        return -v;
    }
    return decode_nonneg(s);
}

} // namespace

std::string IsogenyLabel::str() const {
    std::ostringstream os;
    os << g << "." << q.get_str() << "." << code;
    return os.str();
}

IsogenyLabel encode_label_raw(int g, const mpz_class& q, const std::vector<mpz_class>& a) {
    if (static_cast<int>(a.size()) != g) throw InvalidArgument("need exactly g coefficients");
    IsogenyLabel label;
    label.g = g;
    label.q = q;
    std::string code;
    for (int i = 0; i < g; ++i) {
        if (i > 0) code.push_back('_');
        code += encode_coeff(a[static_cast<size_t>(i)]);
    }
    label.code = code;
    return label;
}

IsogenyLabel encode_label(const WeilPolynomial& P) {
    std::vector<mpz_class> a;
    for (int i = 1; i <= P.g(); ++i) a.push_back(P.a(i));
    return encode_label_raw(P.g(), P.q(), a);
}

DecodedLabel decode_label(const std::string& label) {
    DecodedLabel out;
    size_t dot1 = label.find('.');
    size_t dot2 = label.find('.', dot1 == std::string::npos ? 0 : dot1 + 1);
    if (dot1 == std::string::npos || dot2 == std::string::npos)
        throw ParseError("label must have the form g.q.code");
    std::string gs = label.substr(0, dot1);
    std::string qs = label.substr(dot1 + 1, dot2 - dot1 - 1);
    std::string code = label.substr(dot2 + 1);
    if (gs.empty() || qs.empty() || code.empty()) throw ParseError("label must have the form g.q.code");
    for (char c : gs)
        if (!isdigit(static_cast<unsigned char>(c))) throw ParseError("invalid g in label");
    for (char c : qs)
        if (!isdigit(static_cast<unsigned char>(c))) throw ParseError("invalid q in label");
    out.g = std::stoi(gs);
    out.q = mpz_class(qs);
    size_t pos = 0;
    while (true) {
        size_t us = code.find('_', pos);
        std::string group = code.substr(pos, us == std::string::npos ? std::string::npos : us - pos);
        out.a.push_back(decode_coeff(group));
        if (us == std::string::npos) break;
        pos = us + 1;
    }
    if (static_cast<int>(out.a.size()) != out.g)
        throw ParseError("label has wrong number of coefficient groups");
    return out;
}

IntPoly weil_poly_from_top_coeffs(const std::vector<mpz_class>& a, const mpz_class& q) {
    int g = static_cast<int>(a.size());
    std::vector<mpz_class> c(static_cast<size_t>(2 * g) + 1);
    c[static_cast<size_t>(2 * g)] = 1;
    for (int i = 1; i <= g; ++i) c[static_cast<size_t>(2 * g - i)] = a[static_cast<size_t>(i - 1)];
    mpz_class qpow = 1;
    for (int i = g - 1; i >= 0; --i) {
        qpow *= q;
        c[static_cast<size_t>(i)] = qpow * c[static_cast<size_t>(2 * g - i)];
    }
    return IntPoly(std::move(c));
}

WeilPolynomial weil_from_label(const std::string& label) {
    DecodedLabel d = decode_label(label);
    IntPoly poly = weil_poly_from_top_coeffs(d.a, d.q);
    return WeilPolynomial::validate(poly, d.q);
}

} // namespace anglerank
