#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "anglerank/errors.hpp"

namespace anglerank {

// Univariate polynomial with arbitrary-precision integer coefficients,
// stored constant term first.  The zero polynomial has an empty
// coefficient vector; otherwise the last entry is nonzero.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly one() { return IntPoly({1}); }
    static IntPoly monomial(int deg, const mpz_class& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    // Coefficient of T^i; zero outside the stored range.
    const mpz_class& coeff(int i) const;
    const mpz_class& leading() const;

    void set_coeff(int i, const mpz_class& v);

    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& rhs);
    IntPoly& operator-=(const IntPoly& rhs);

    mpz_class eval(const mpz_class& x) const;
    IntPoly derivative() const;

    // c * f
    IntPoly scaled(const mpz_class& c) const;
    // f(s*T): coefficient i multiplied by s^i
    IntPoly subst_scaled_variable(const mpz_class& s) const;
    // T^deg * f(1/T)
    IntPoly reversed() const;

    // gcd of all coefficients, nonnegative; 0 for the zero polynomial.
    mpz_class content() const;
    // f / content, normalized to positive leading coefficient.
    IntPoly primitive_part() const;

    std::string to_string(const std::string& var = "T") const;

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

private:
    void trim();
    std::vector<mpz_class> c_;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const IntPoly& a, const IntPoly& b);

// Exact division in Z[T]; returns false if b does not divide a.
bool try_divide_exact(const IntPoly& a, const IntPoly& b, IntPoly& quotient);
IntPoly divide_exact(const IntPoly& a, const IntPoly& b);
// Division with remainder by a monic divisor.
std::pair<IntPoly, IntPoly> divrem_monic(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient.
IntPoly gcd_int(const IntPoly& a, const IntPoly& b);

// Yun squarefree decomposition of the primitive part: pairwise-coprime
// squarefree factors with their multiplicities, f = content * prod fi^mi.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

// Total ordering used wherever factor lists need a deterministic order:
// by degree, then coefficients lexicographically from the constant term.
bool poly_less(const IntPoly& a, const IntPoly& b);

// Univariate polynomial with rational coefficients (canonicalized),
// constant term first, trailing zeros stripped.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
        for (auto& x : c_) x.canonicalize();
        trim();
    }
    RatPoly(std::initializer_list<long> coeffs);

    static RatPoly from_int(const IntPoly& f);
    static RatPoly zero() { return RatPoly(); }
    static RatPoly one();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    const mpq_class& coeff(int i) const;
    const mpq_class& leading() const;

    bool is_integral() const;
    IntPoly to_int() const; // throws InvalidArgument if not integral
    // Clears denominators: smallest positive d with d*f integral.
    std::pair<IntPoly, mpz_class> to_int_scaled() const;

    RatPoly operator-() const;
    RatPoly monic() const;
    mpq_class eval(const mpq_class& x) const;
    RatPoly derivative() const;

    std::string to_string(const std::string& var = "T") const;

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }

private:
    void trim();
    std::vector<mpq_class> c_;
};

RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
std::pair<RatPoly, RatPoly> divrem(const RatPoly& a, const RatPoly& b);
RatPoly gcd_rat(const RatPoly& a, const RatPoly& b); // monic (or zero)

} // namespace anglerank
