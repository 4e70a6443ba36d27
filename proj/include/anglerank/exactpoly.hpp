#pragma once

#include <vector>

#include "anglerank/intpoly.hpp"

namespace anglerank {

// Power sums p_1..p_N of the roots of a monic polynomial, with multiplicity.
struct PowerSums {
    std::vector<mpq_class> values; // values[k-1] = p_k
    int count() const { return static_cast<int>(values.size()); }
};

// Newton-Girard, coefficients -> power sums.
PowerSums power_sums(const RatPoly& f, int count);
std::vector<mpz_class> power_sums_int(const IntPoly& f, int count);

// Newton identities, power sums -> the unique monic polynomial of the given
// degree.  The integer variant throws if any division by k is inexact.
RatPoly coeffs_from_power_sums(const PowerSums& ps, int degree);
IntPoly coeffs_from_power_sums_int(const std::vector<mpz_class>& ps, int degree);

// Monic polynomial whose roots are all pairwise products of the roots of
// f and g (with multiplicity); degree deg(f)*deg(g).
RatPoly composed_product(const RatPoly& f, const RatPoly& g);

// Monic polynomial of the same degree whose roots are the e-th powers of
// the roots of f.
RatPoly power_map(const RatPoly& f, long e);
IntPoly power_map_int(const IntPoly& f, long e);

// ---------------------------------------------------------------------------
// Cyclotomic machinery

// All n with phi(n) <= max_phi, ascending.
std::vector<unsigned long> cyclotomic_index_candidates(long max_phi);

// Phi_n over the integers.
IntPoly cyclotomic_poly(unsigned long n);

// s^phi(n) * Phi_n(T/s): the minimal polynomial of s*zeta_n (monic, integer).
IntPoly scaled_cyclotomic_poly(unsigned long n, const mpz_class& s);

struct CyclotomicFactor {
    unsigned long index; // n of Phi_n
    int multiplicity;
};

struct CyclotomicSplit {
    IntPoly cyclotomic;                    // product of the scaled factors
    IntPoly rest;                          // f / cyclotomic
    std::vector<CyclotomicFactor> factors; // ascending by index
    long degree = 0;                       // deg(cyclotomic), with multiplicity
};

// Maximal product of polynomials s^phi(n) * Phi_n(T/s) dividing f, with
// multiplicity.  Trial division over every n with phi(n) <= deg f, behind a
// divisibility screen at the evaluation points 2s and 3s and a modular
// prefilter at three primes above deg f.
CyclotomicSplit cyclotomic_split_scaled(const IntPoly& f, const mpz_class& s);

// Spec operation: maximal product of cyclotomic polynomials dividing f.
IntPoly cyclotomic_part(const IntPoly& f);

// ---------------------------------------------------------------------------
// Factorization over Z (degree <= 16)

struct IntFactorization {
    mpz_class content; // signed; f = content * prod factors^mult
    std::vector<std::pair<IntPoly, int>> factors; // primitive, positive lc, sorted
};

IntFactorization factor_over_integers(const IntPoly& f);
bool is_irreducible(const IntPoly& f);

} // namespace anglerank
