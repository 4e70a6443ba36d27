#include "anglerank/intpoly.hpp"

#include <algorithm>
#include <sstream>

namespace anglerank {

namespace {
const mpz_class kZeroZ = 0;
const mpq_class kZeroQ = 0;
} // namespace

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

IntPoly IntPoly::monomial(int deg, const mpz_class& c) {
    if (c == 0) return IntPoly();
    std::vector<mpz_class> v(static_cast<size_t>(deg) + 1, mpz_class(0));
    v.back() = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZeroZ;
    return c_[static_cast<size_t>(i)];
}

const mpz_class& IntPoly::leading() const {
    if (c_.empty()) return kZeroZ;
    return c_.back();
}

void IntPoly::set_coeff(int i, const mpz_class& v) {
    if (i < 0) throw InvalidArgument("negative coefficient index");
    if (i >= static_cast<int>(c_.size())) {
        if (v == 0) return;
        c_.resize(static_cast<size_t>(i) + 1, mpz_class(0));
    }
    c_[static_cast<size_t>(i)] = v;
    trim();
}

IntPoly IntPoly::operator-() const {
    IntPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& rhs) {
    if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size(), mpz_class(0));
    for (size_t i = 0; i < rhs.c_.size(); ++i) c_[i] += rhs.c_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& rhs) {
    if (c_.size() < rhs.c_.size()) c_.resize(rhs.c_.size(), mpz_class(0));
    for (size_t i = 0; i < rhs.c_.size(); ++i) c_[i] -= rhs.c_[i];
    trim();
    return *this;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a);
    r += b;
    return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    IntPoly r(a);
    r -= b;
    return r;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return IntPoly();
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    std::vector<mpz_class> r(ac.size() + bc.size() - 1, mpz_class(0));
    for (size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0) continue;
        for (size_t j = 0; j < bc.size(); ++j) {
            if (bc[j] == 0) continue;
            mpz_addmul(r[i + j].get_mpz_t(), ac[i].get_mpz_t(), bc[j].get_mpz_t());
        }
    }
    return IntPoly(std::move(r));
}

mpz_class IntPoly::eval(const mpz_class& x) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<mpz_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(r));
}

IntPoly IntPoly::scaled(const mpz_class& c) const {
    if (c == 0) return IntPoly();
    IntPoly r(*this);
    for (auto& x : r.c_) x *= c;
    return r;
}

IntPoly IntPoly::subst_scaled_variable(const mpz_class& s) const {
    IntPoly r(*this);
    mpz_class pw = 1;
    for (size_t i = 0; i < r.c_.size(); ++i) {
        r.c_[i] *= pw;
        pw *= s;
    }
    r.trim();
    return r;
}

IntPoly IntPoly::reversed() const {
    std::vector<mpz_class> r(c_.rbegin(), c_.rend());
    return IntPoly(std::move(r));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    mpz_class g = content();
    if (leading() < 0) g = -g;
    IntPoly r(*this);
    for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return r;
}

std::string IntPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& c = coeff(i);
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

bool try_divide_exact(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
    if (b.is_zero()) throw InvalidArgument("division by zero polynomial");
    if (a.is_zero()) {
        quotient = IntPoly();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<mpz_class> rem = a.coeffs();
    const auto& bc = b.coeffs();
    const mpz_class& lead = b.leading();
    int qdeg = a.degree() - b.degree();
    std::vector<mpz_class> q(static_cast<size_t>(qdeg) + 1, mpz_class(0));
    mpz_class t;
    for (int k = qdeg; k >= 0; --k) {
        mpz_class& top = rem[static_cast<size_t>(k + b.degree())];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) return false;
        mpz_divexact(q[static_cast<size_t>(k)].get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        const mpz_class& qk = q[static_cast<size_t>(k)];
        for (size_t j = 0; j < bc.size(); ++j) {
            mpz_submul(rem[static_cast<size_t>(k) + j].get_mpz_t(), qk.get_mpz_t(), bc[j].get_mpz_t());
        }
    }
    for (const auto& r : rem)
        if (r != 0) return false;
    quotient = IntPoly(std::move(q));
    return true;
}

IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
    IntPoly q;
    if (!try_divide_exact(a, b, q)) throw InvalidArgument("inexact polynomial division");
    return q;
}

std::pair<IntPoly, IntPoly> divrem_monic(const IntPoly& a, const IntPoly& b) {
    if (!b.is_monic()) throw InvalidArgument("divisor must be monic");
    if (a.degree() < b.degree()) return {IntPoly(), a};
    std::vector<mpz_class> rem = a.coeffs();
    const auto& bc = b.coeffs();
    int qdeg = a.degree() - b.degree();
    std::vector<mpz_class> q(static_cast<size_t>(qdeg) + 1, mpz_class(0));
    for (int k = qdeg; k >= 0; --k) {
        mpz_class qk = rem[static_cast<size_t>(k + b.degree())];
        q[static_cast<size_t>(k)] = qk;
        if (qk == 0) continue;
        for (size_t j = 0; j < bc.size(); ++j) {
            mpz_submul(rem[static_cast<size_t>(k) + j].get_mpz_t(), qk.get_mpz_t(), bc[j].get_mpz_t());
        }
    }
    rem.resize(static_cast<size_t>(b.degree() >= 0 ? b.degree() : 0));
    return {IntPoly(std::move(q)), IntPoly(std::move(rem))};
}

IntPoly gcd_int(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    // Primitive pseudo-remainder sequence; positive multipliers keep it simple.
    IntPoly f = a.primitive_part();
    IntPoly g = b.primitive_part();
    if (f.degree() < g.degree()) std::swap(f, g);
    while (!g.is_zero()) {
        int delta = f.degree() - g.degree();
        mpz_class m;
        mpz_class lg = abs(g.leading());
        mpz_pow_ui(m.get_mpz_t(), lg.get_mpz_t(), static_cast<unsigned long>(delta) + 1);
        IntPoly scaled_f = f.scaled(m);
        // long division of scaled_f by g is now exact in the quotient steps
        std::vector<mpz_class> rem = scaled_f.coeffs();
        const auto& gc = g.coeffs();
        const mpz_class& lead = g.leading();
        for (int k = delta; k >= 0; --k) {
            mpz_class& top = rem[static_cast<size_t>(k + g.degree())];
            if (top == 0) continue;
            mpz_class qk;
            mpz_divexact(qk.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
            for (size_t j = 0; j < gc.size(); ++j) {
                mpz_submul(rem[static_cast<size_t>(k) + j].get_mpz_t(), qk.get_mpz_t(), gc[j].get_mpz_t());
            }
        }
        rem.resize(static_cast<size_t>(g.degree()));
        IntPoly r(std::move(rem));
        f = g;
        g = r.is_zero() ? IntPoly() : r.primitive_part();
    }
    return f.primitive_part();
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
    if (f.is_zero()) throw InvalidArgument("squarefree decomposition of zero polynomial");
    std::vector<std::pair<IntPoly, int>> out;
    IntPoly p = f.primitive_part();
    if (p.degree() == 0) return out;
    // Yun's algorithm.
    IntPoly d = p.derivative();
    IntPoly a = gcd_int(p, d);
    IntPoly b = divide_exact(p, a);
    IntPoly c = divide_exact(d, a);
    int i = 1;
    while (true) {
        IntPoly z = c - b.derivative();
        if (z.is_zero()) {
            if (b.degree() > 0) out.emplace_back(b, i);
            break;
        }
        IntPoly g = gcd_int(b, z);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = divide_exact(b, g);
        c = divide_exact(z, g);
        ++i;
    }
    return out;
}

bool poly_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        int c = cmp(a.coeff(i), b.coeff(i));
        if (c != 0) return c < 0;
    }
    return false;
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

RatPoly RatPoly::from_int(const IntPoly& f) {
    std::vector<mpq_class> v;
    v.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) v.emplace_back(x);
    return RatPoly(std::move(v));
}

RatPoly RatPoly::one() { return RatPoly({1}); }

void RatPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpq_class& RatPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZeroQ;
    return c_[static_cast<size_t>(i)];
}

const mpq_class& RatPoly::leading() const {
    if (c_.empty()) return kZeroQ;
    return c_.back();
}

bool RatPoly::is_integral() const {
    for (const auto& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

IntPoly RatPoly::to_int() const {
    std::vector<mpz_class> v;
    v.reserve(c_.size());
    for (const auto& x : c_) {
        if (x.get_den() != 1) throw InvalidArgument("polynomial is not integral");
        v.push_back(x.get_num());
    }
    return IntPoly(std::move(v));
}

std::pair<IntPoly, mpz_class> RatPoly::to_int_scaled() const {
    mpz_class den = 1;
    for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<mpz_class> v;
    v.reserve(c_.size());
    for (const auto& x : c_) {
        mpq_class y = x * den;
        y.canonicalize();
        v.push_back(y.get_num());
    }
    return {IntPoly(std::move(v)), den};
}

RatPoly RatPoly::operator-() const {
    RatPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) throw InvalidArgument("monic normalization of zero polynomial");
    RatPoly r(*this);
    mpq_class l = leading();
    for (auto& x : r.c_) {
        x /= l;
        x.canonicalize();
    }
    return r;
}

mpq_class RatPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    acc.canonicalize();
    return acc;
}

RatPoly RatPoly::derivative() const {
    if (c_.size() <= 1) return RatPoly();
    std::vector<mpq_class> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return RatPoly(std::move(r));
}

std::string RatPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class& c = coeff(i);
        if (c == 0) continue;
        mpq_class a = abs(c);
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (i == 0 || a != 1) os << a.get_str();
        if (i > 0) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<mpq_class> r(std::max(a.coeffs().size(), b.coeffs().size()), mpq_class(0));
    for (size_t i = 0; i < a.coeffs().size(); ++i) r[i] += a.coeffs()[i];
    for (size_t i = 0; i < b.coeffs().size(); ++i) r[i] += b.coeffs()[i];
    return RatPoly(std::move(r));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    std::vector<mpq_class> r(std::max(a.coeffs().size(), b.coeffs().size()), mpq_class(0));
    for (size_t i = 0; i < a.coeffs().size(); ++i) r[i] += a.coeffs()[i];
    for (size_t i = 0; i < b.coeffs().size(); ++i) r[i] -= b.coeffs()[i];
    return RatPoly(std::move(r));
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    const auto& ac = a.coeffs();
    const auto& bc = b.coeffs();
    std::vector<mpq_class> r(ac.size() + bc.size() - 1, mpq_class(0));
    for (size_t i = 0; i < ac.size(); ++i) {
        if (ac[i] == 0) continue;
        for (size_t j = 0; j < bc.size(); ++j) r[i + j] += ac[i] * bc[j];
    }
    return RatPoly(std::move(r));
}

std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw InvalidArgument("division by zero polynomial");
    if (a.degree() < b.degree()) return {RatPoly(), a};
    std::vector<mpq_class> rem = a.coeffs();
    const auto& bc = b.coeffs();
    int qdeg = a.degree() - b.degree();
    std::vector<mpq_class> q(static_cast<size_t>(qdeg) + 1, mpq_class(0));
    for (int k = qdeg; k >= 0; --k) {
        mpq_class qk = rem[static_cast<size_t>(k + b.degree())] / b.leading();
        qk.canonicalize();
        q[static_cast<size_t>(k)] = qk;
        if (qk == 0) continue;
        for (size_t j = 0; j < bc.size(); ++j) rem[static_cast<size_t>(k) + j] -= qk * bc[j];
    }
    rem.resize(static_cast<size_t>(b.degree()));
    return {RatPoly(std::move(q)), RatPoly(std::move(rem))};
}

RatPoly gcd_rat(const RatPoly& a, const RatPoly& b) {
    RatPoly f = a, g = b;
    while (!g.is_zero()) {
        RatPoly r = divrem(f, g).second;
        f = g;
        g = r;
    }
    if (f.is_zero()) return f;
    return f.monic();
}

} // namespace anglerank
