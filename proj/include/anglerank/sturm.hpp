#pragma once

#include "anglerank/intpoly.hpp"

namespace anglerank {

// Sign of f at the quadratic point sign_root * sqrt(m), m >= 0 an integer.
// Exact: splits f into even and odd parts and compares squares.
int sign_at_sqrt(const IntPoly& f, const mpz_class& m, int sign_root);

// True iff every complex root of f is real and lies in [-sqrt(m), sqrt(m)].
// f nonzero; multiplicities are irrelevant to the predicate and handled.
bool all_roots_real_in_sqrt_interval(const IntPoly& f, const mpz_class& m);

// Number of distinct real roots of f in the closed interval [-sqrt(m), sqrt(m)].
long count_distinct_roots_in_sqrt_interval(const IntPoly& f, const mpz_class& m);

} // namespace anglerank
