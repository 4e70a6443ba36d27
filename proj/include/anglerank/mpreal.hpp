#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace anglerank {

// Minimal RAII wrapper around mpfr_t.  Each value carries its precision;
// binary operations round to the precision of the left operand.
class MpReal {
public:
    explicit MpReal(mpfr_prec_t prec = 64) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    MpReal(const mpz_class& v, mpfr_prec_t prec) {
        mpfr_init2(x_, prec);
        mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN);
    }
    MpReal(double v, mpfr_prec_t prec) {
        mpfr_init2(x_, prec);
        mpfr_set_d(x_, v, MPFR_RNDN);
    }
    MpReal(const MpReal& o) {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    MpReal(MpReal&& o) noexcept {
        mpfr_init2(x_, mpfr_get_prec(o.x_));
        mpfr_swap(x_, o.x_);
    }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~MpReal() { mpfr_clear(x_); }

    mpfr_ptr get() { return x_; }
    mpfr_srcptr get() const { return x_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    int sgn() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_); }

    friend MpReal operator+(const MpReal& a, const MpReal& b) {
        MpReal r(a.prec());
        mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(const MpReal& a, const MpReal& b) {
        MpReal r(a.prec());
        mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator*(const MpReal& a, const MpReal& b) {
        MpReal r(a.prec());
        mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator/(const MpReal& a, const MpReal& b) {
        MpReal r(a.prec());
        mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    MpReal operator-() const {
        MpReal r(prec());
        mpfr_neg(r.x_, x_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.x_, b.x_) == 0; }

    std::string str(size_t digits = 40) const;

private:
    mpfr_t x_;
};

inline std::string MpReal::str(size_t digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

struct MpComplex {
    MpReal re, im;
    explicit MpComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}

    friend MpComplex operator+(const MpComplex& a, const MpComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend MpComplex operator-(const MpComplex& a, const MpComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
        MpReal d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }

    MpReal abs2() const { return re * re + im * im; }
    MpReal abs() const {
        MpReal r(re.prec());
        mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
        return r;
    }
    // principal argument in (-pi, pi]
    MpReal arg() const {
        MpReal r(re.prec());
        mpfr_atan2(r.get(), im.get(), re.get(), MPFR_RNDN);
        return r;
    }
};

} // namespace anglerank
