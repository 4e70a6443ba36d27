#pragma once

#include <string>
#include <vector>

#include "anglerank/exactpoly.hpp"
#include "anglerank/intpoly.hpp"

namespace anglerank {

// p-adic Newton polygon slopes of a Weil polynomial, normalized so that the
// full slope range is [0, 1].
struct NewtonPolygon {
    std::vector<mpq_class> slopes; // 2g entries, nondecreasing
    bool ordinary() const;
};

struct IsogenyLabel {
    int g = 0;
    mpz_class q;
    std::string code; // the part after "g.q."
    std::string str() const;
};

// Monic integer polynomial of degree 2g over F_q whose roots all have
// absolute value sqrt(q), certified exactly at construction.
class WeilPolynomial {
public:
    // coeffs constant term first, monic, even degree; q a prime power.
    // Throws ValidationError (functional equation / root location) on failure.
    static WeilPolynomial validate(const IntPoly& poly, const mpz_class& q);
    static WeilPolynomial validate(const std::vector<mpz_class>& coeffs, const mpz_class& q);

    const IntPoly& poly() const { return poly_; }
    int g() const { return g_; }
    const mpz_class& q() const { return q_; }
    const mpz_class& p() const { return p_; }
    int r() const { return r_; }

    // a_i = coefficient of T^(2g-i); a_0 = 1.
    const mpz_class& a(int i) const { return poly_.coeff(2 * g_ - i); }

    // L-polynomial coefficients: L(T) = T^{2g} P(1/T), constant first.
    IntPoly lpoly() const { return poly_.reversed(); }

    friend bool operator==(const WeilPolynomial& x, const WeilPolynomial& y) {
        return x.poly_ == y.poly_ && x.q_ == y.q_;
    }

    // empty placeholder; real instances come from validate()
    WeilPolynomial() = default;

private:
    IntPoly poly_;
    mpz_class q_, p_;
    int r_ = 0, g_ = 0;
};

// Decomposes q = p^r with p prime; throws InvalidArgument otherwise.
void prime_power_decompose(const mpz_class& q, mpz_class& p, int& r);

// Does the functional equation a_{2g-i} = q^{g-i} a_i hold?
bool functional_equation_holds(const IntPoly& poly, const mpz_class& q);

// The unique h of degree g with P(T) = T^g h(T + q/T); requires the
// functional equation.
IntPoly real_weil_transform(const IntPoly& poly, const mpz_class& q);
IntPoly real_weil_transform(const WeilPolynomial& P);

NewtonPolygon newton_polygon(const WeilPolynomial& P);
bool is_ordinary(const WeilPolynomial& P);

// Weil polynomial over q^n whose roots are the n-th powers of P's roots.
WeilPolynomial base_change(const WeilPolynomial& P, long n);

IsogenyLabel encode_label(const WeilPolynomial& P);
// Label from raw parts (no validity requirement on the coefficients).
IsogenyLabel encode_label_raw(int g, const mpz_class& q, const std::vector<mpz_class>& a);

struct DecodedLabel {
    int g;
    mpz_class q;
    std::vector<mpz_class> a; // a_1..a_g
};
DecodedLabel decode_label(const std::string& label);

// Full Weil polynomial from a decoded label (fills a_{g+1}..a_{2g} by the
// functional equation and validates).
WeilPolynomial weil_from_label(const std::string& label);

// Builds P from the top coefficients a_1..a_g via the functional equation
// (without validating root locations); the result still must pass validate.
IntPoly weil_poly_from_top_coeffs(const std::vector<mpz_class>& a, const mpz_class& q);

} // namespace anglerank
